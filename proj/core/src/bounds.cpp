#include "torusbound/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "torusbound/error.hpp"
#include "torusbound/optim.hpp"

namespace torusbound {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;
const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

void require_moduli(double a, double b, const char* who) {
  if (!in_fundamental_domain(a, b)) {
    throw std::invalid_argument(std::string(who) + ": (" + std::to_string(a) + ", " +
                                std::to_string(b) + ") is outside the fundamental domain");
  }
}

double branch1(double b, double s) { return 4.0 * kPi2 / (3.0 * b) * (s + 2.0); }

double branch2(double a, double b) {
  return 8.0 * kPi2 * std::sqrt(b * b + 1.0) / (3.0 * kSqrt3) * (2.0 * b * b + a * a) / (b * b * b);
}

/// Grid of the fundamental domain: for each a, the arc point then multiples of step.
template <class Visit>
void visit_grid(double a_min, double a_max, double b_max, double step, Visit&& visit) {
  if (!(step > 0.0)) throw std::invalid_argument("sweep: step must be > 0");
  const long na = std::lround(std::floor((a_max - a_min) / step + 1e-9));
  for (long i = 0; i <= na; ++i) {
    const double a = std::min(a_min + step * static_cast<double>(i), a_max);
    const double arc = std::sqrt(1.0 - a * a);
    visit(a, arc);
    const long first = static_cast<long>(std::floor(arc / step + 1e-9)) + 1;
    for (long k = first;; ++k) {
      const double b = step * static_cast<double>(k);
      if (b > b_max + 1e-12) break;
      if (b - arc < 1e-12) continue;
      visit(a, b);
    }
  }
}

}  // namespace

double esir_bound(double a, double b) {
  require_moduli(a, b, "esir_bound");
  return 3.0 * kPi2 / (2.0 * b) * (a * a + b * b + 5.0 / 3.0);
}

double theorem_class_bound(double a, double b) {
  require_moduli(a, b, "theorem_class_bound");
  const double s = a * a + b * b;
  if (b < kSqrt2) return branch1(b, s);
  if (b > kSqrt2) return branch2(a, b);
  return std::min(branch1(b, s), branch2(a, b));
}

double test_map_bound(double a, double b, double b0) {
  if (!(b0 >= 1.0)) throw std::invalid_argument("test_map_bound: b0 must be >= 1");
  const double s = a * a + b * b;
  if (b0 <= kSqrt2) return 4.0 * kPi2 / b * (b0 * b0 + s) / (1.0 + b0 * b0);
  return 8.0 * kPi2 * std::sqrt(b0 * b0 + 1.0) / (3.0 * kSqrt3 * b0 * b0) * (b0 * b0 + s) / b;
}

double corollary_value(double a, double b) {
  require_moduli(a, b, "corollary_value");
  const double s = a * a + b * b;
  const double L = std::sqrt(s * (8.0 + s));
  return 8.0 * kPi2 / (std::sqrt(6.0) * b) * std::sqrt(2.0 + s + L) / (s + L) * (s + L / 3.0);
}

BoundReport corollary_bound(double a, double b) {
  require_moduli(a, b, "corollary_bound");
  BoundReport r;
  r.params = {a, b};
  const double s = a * a + b * b;
  r.L = std::sqrt(s * (8.0 + s));
  r.b0_opt = std::sqrt((s + r.L) / 2.0);
  r.corollary = corollary_value(a, b);
  r.esir = esir_bound(a, b);
  r.theorem_class = theorem_class_bound(a, b);

  // Independent route: minimise over b0 on [1, sqrt2] and (sqrt2, 2(1+s)].
  auto neg = [&](double b0) { return -test_map_bound(a, b, b0); };
  const double x1 = golden_section_max(neg, 1.0, kSqrt2, 1e-12);
  const double x2 = golden_section_max(neg, kSqrt2, 2.0 * (1.0 + s), 1e-11);
  r.corollary_numeric = std::min(test_map_bound(a, b, x1), test_map_bound(a, b, x2));
  if (std::abs(r.corollary_numeric - r.corollary) > 1e-9 * r.corollary) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "corollary_bound: closed form " << r.corollary << " and numeric minimum "
        << r.corollary_numeric << " disagree at (" << a << ", " << b << ")";
    throw NumericalError(msg.str());
  }
  return r;
}

SweepResult bound_sweep(const SweepWindow& window) {
  if (window.a_min < 0.0 || window.a_max > 0.5 || window.a_min > window.a_max) {
    throw std::invalid_argument("bound_sweep: a-range must lie in [0, 1/2]");
  }
  SweepResult out;
  out.min_strict_gap = INFINITY;
  visit_grid(window.a_min, window.a_max, window.b_max, window.step, [&](double a, double b) {
    if (out.violation) return;
    const BoundReport r = corollary_bound(a, b);
    out.rows.push_back(r);
    const double s = a * a + b * b;
    const double ratio = r.esir / r.corollary;
    if (ratio > out.max_ratio) {
      out.max_ratio = ratio;
      out.max_ratio_b = b;
    }
    if (std::abs(s - 1.0) <= 1e-12) {
      out.max_arc_gap = std::max(out.max_arc_gap, std::abs(r.esir - r.corollary));
    }
    if (s >= 1.1) out.min_strict_gap = std::min(out.min_strict_gap, r.esir - r.corollary);
    if (r.corollary > r.esir + 1e-12 * r.esir) {
      out.violation = SweepViolation{r, "corollary exceeds esir"};
    } else if (s > 1.0 + 1e-6 && !(r.corollary < r.esir)) {
      out.violation = SweepViolation{r, "inequality not strict off the arc"};
    }
  });
  return out;
}

GlobalScanResult global_sup_scan(double step, double b_max) {
  GlobalScanResult out;
  out.value = -INFINITY;
  visit_grid(0.0, 0.5, b_max, step, [&](double a, double b) {
    const double v = theorem_class_bound(a, b);
    if (v > out.value) {
      out.value = v;
      out.a = a;
      out.b = b;
    }
    if (b > kSqrt2) out.m2_max = std::max(out.m2_max, v);
  });
  // Tail: (8b^2+1) sqrt(b^2+1)/b^3 bounds the b > sqrt2 branch for every a;
  // sample it on a geometric grid beyond b_max.
  auto tail = [](double b) { return (8.0 * b * b + 1.0) * std::sqrt(b * b + 1.0) / (b * b * b); };
  out.tail_decreasing = true;
  double prev = tail(b_max);
  for (double b = b_max * 1.01; b < 1e4 * b_max; b *= 1.01) {
    const double v = tail(b);
    if (!(v < prev)) out.tail_decreasing = false;
    prev = v;
  }
  return out;
}

double strictness_witness(double a, double b, const ConformalPoint& gamma, double b0, int grid_n) {
  const TorusParams torus{a, b};
  torus.validate();
  if (!(b0 >= 1.0)) throw std::invalid_argument("strictness_witness: b0 must be >= 1");
  if (gamma.ambient_dim() != 4) throw std::invalid_argument("strictness_witness: gamma must be in D^4");
  if (gamma.norm() >= 1.0 - 1e-6) {
    throw std::invalid_argument("strictness_witness: |gamma| too close to 1");
  }
  if (grid_n < 2) throw std::invalid_argument("strictness_witness: grid_n must be >= 2");

  const Immersion phi = Immersion::phi(torus, b0);
  std::array<double, 4> g{};
  std::copy(gamma.coords().begin(), gamma.coords().end(), g.begin());
  const double alpha = gamma.alpha();
  const double beta = gamma.beta();
  std::array<double, 2> w_sq{};
  for (int i = 0; i < 2; ++i) {
    const auto w = phi.frequency(i);
    w_sq[i] = 4.0 * kPi2 * (w[0] * w[0] + w[1] * w[1]);
  }
  auto dotg = [&](const std::array<double, 4>& v) {
    return v[0] * g[0] + v[1] * g[1] + v[2] * g[2] + v[3] * g[3];
  };

  double worst = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      const auto xy = torus.physical(static_cast<double>(j) / grid_n, static_cast<double>(i) / grid_n);
      const auto value = immersion_eval(phi, xy[0], xy[1]);
      const auto jac = immersion_jacobian(phi, xy[0], xy[1]);
      std::array<double, 4> p{}, px{}, py{}, lap{};
      for (int k = 0; k < 4; ++k) {
        p[k] = value[k];
        px[k] = jac.dx[k];
        py[k] = jac.dy[k];
        lap[k] = -w_sq[k / 2] * p[k];  // (d_xx + d_yy) of a pure mode
      }
      const double t = dotg(p);
      const double D = alpha * (t + 1.0);
      const double shift = beta * t + alpha;
      const double tx = dotg(px);
      const double ty = dotg(py);
      const double tl = dotg(lap);

      // w_k = N_k(p)/D(p) with N affine and D linear in p: its Laplacian is
      // dw[Lap p] + d2w[p_x, p_x] + d2w[p_y, p_y].
      auto laplacian = [&](int k) {
        const double nk = p[k] + shift * g[k];
        const double first = (lap[k] + beta * tl * g[k]) / D - nk * alpha * tl / (D * D);
        auto second = [&](const std::array<double, 4>& u, double tu) {
          return -2.0 * (u[k] + beta * tu * g[k]) * alpha * tu / (D * D) +
                 2.0 * nk * alpha * alpha * tu * tu / (D * D * D);
        };
        return first + second(px, tx) + second(py, ty);
      };
      const double w2 = (p[1] + shift * g[1]) / D;
      const double w4 = (p[3] + shift * g[3]) / D;
      worst = std::max(worst, std::abs(w4 * laplacian(1) - w2 * laplacian(3)));
    }
  }
  return worst;
}

}  // namespace torusbound
