#include "torusbound/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace torusbound {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFourPi2 = kTwoPi * kTwoPi;

struct ModeNorm {
  double norm2;
  LatticeMode mode;
};

}  // namespace

void TorusParams::validate() const {
  if (!std::isfinite(a) || !std::isfinite(b) || !(b > 0.0)) {
    throw std::invalid_argument("TorusParams: need finite a and b > 0, got a=" + std::to_string(a) +
                                ", b=" + std::to_string(b));
  }
}

bool in_fundamental_domain(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("in_fundamental_domain: non-finite input");
  }
  if (a < 0.0 || a > 0.5) return false;
  return b >= std::sqrt(1.0 - a * a) - 1e-12;
}

std::array<double, 2> frequency(const TorusParams& torus, LatticeMode mode) {
  return {static_cast<double>(mode.q), (mode.p - mode.q * torus.a) / torus.b};
}

double eigenvalue(const TorusParams& torus, LatticeMode mode) {
  torus.validate();
  const auto w = frequency(torus, mode);
  return kFourPi2 * (w[0] * w[0] + w[1] * w[1]);
}

double eigenfunction_eval(const TorusParams& torus, LatticeMode mode, EigenKind kind, double x,
                          double y) {
  const auto w = frequency(torus, mode);
  const double phase = kTwoPi * (w[0] * x + w[1] * y);
  return kind == EigenKind::cos ? std::cos(phase) : std::sin(phase);
}

std::vector<SpectrumEntry> spectrum(const TorusParams& torus, int count,
                                    const SpectrumOptions& options) {
  torus.validate();
  if (count < 1) throw std::invalid_argument("spectrum: count must be >= 1");

  // The frequency lattice has covolume 1/b, so a disc of radius R holds about
  // pi R^2 b points, half of them canonical. Start with enough for `count`
  // levels, with a 1.5x margin.
  double radius = 1.5 * options.radius_scale *
                  std::sqrt(2.0 * (count + 1) / (std::numbers::pi * torus.b));
  radius = std::max(radius, options.radius_scale * std::max(1.0, 1.0 / torus.b));

  for (;;) {
    const double r2 = radius * radius;
    const double qmax = std::floor(radius);
    const double estimate = (2.0 * qmax + 1.0) * (2.0 * torus.b * radius + 1.0);
    if (estimate > static_cast<double>(options.max_modes)) {
      throw std::overflow_error("spectrum: enumeration radius " + std::to_string(radius) +
                                " exceeds the mode budget");
    }

    std::vector<ModeNorm> modes;
    for (int q = 0; q <= static_cast<int>(qmax); ++q) {
      const double centre = q * torus.a;
      const int pmin = static_cast<int>(std::ceil(centre - torus.b * radius));
      const int pmax = static_cast<int>(std::floor(centre + torus.b * radius));
      for (int p = pmin; p <= pmax; ++p) {
        const LatticeMode m{p, q};
        if (!m.canonical()) continue;
        const auto w = frequency(torus, m);
        const double n2 = w[0] * w[0] + w[1] * w[1];
        if (n2 <= r2) modes.push_back({n2, m});
      }
    }
    std::sort(modes.begin(), modes.end(), [](const ModeNorm& x, const ModeNorm& y) {
      return x.norm2 < y.norm2 || (x.norm2 == y.norm2 && x.mode < y.mode);
    });

    std::vector<SpectrumEntry> entries;
    for (const auto& mn : modes) {
      const double ev = kFourPi2 * mn.norm2;
      if (!entries.empty()) {
        auto& last = entries.back();
        const double scale = std::max(std::abs(last.eigenvalue), std::abs(ev));
        const bool zero_level = last.modes.front() == LatticeMode{0, 0};
        if (!zero_level && std::abs(ev - last.eigenvalue) <= options.group_rel_tol * scale) {
          last.modes.push_back(mn.mode);
          last.multiplicity += 2;
          continue;
        }
      }
      SpectrumEntry e;
      e.eigenvalue = ev;
      e.multiplicity = mn.mode == LatticeMode{0, 0} ? 1 : 2;
      e.modes.push_back(mn.mode);
      entries.push_back(std::move(e));
    }

    // Levels are complete only if the next level also starts inside the disc:
    // then every mode of the count-th level has norm below R.
    if (static_cast<int>(entries.size()) >= count + 2) {
      entries.resize(count + 1);
      for (auto& e : entries) std::sort(e.modes.begin(), e.modes.end());
      return entries;
    }
    radius *= 2.0;
  }
}

}  // namespace torusbound
