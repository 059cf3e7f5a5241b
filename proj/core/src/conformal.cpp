#include "torusbound/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "torusbound/error.hpp"

namespace torusbound {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

double dot(std::span<const double> u, std::span<const double> v) {
  return std::inner_product(u.begin(), u.end(), v.begin(), 0.0);
}

void require_same_dim(const ConformalPoint& gamma, int dim, const char* who) {
  if (gamma.ambient_dim() != dim) {
    throw std::invalid_argument(std::string(who) + ": gamma has dimension " +
                                std::to_string(gamma.ambient_dim()) + ", expected " +
                                std::to_string(dim));
  }
}

void require_inside(const ConformalPoint& gamma, const char* who) {
  if (gamma.norm() > 1.0 - 1e-6) {
    throw std::invalid_argument(std::string(who) + ": |gamma| must be <= 1 - 1e-6");
  }
}

/// Values and the two physical partials of F at lattice angles (us, ut) in [0, 2pi).
struct Jet {
  std::vector<double> value;
  std::vector<double> dx;
  std::vector<double> dy;
};

class ImmersionSampler {
 public:
  explicit ImmersionSampler(const Immersion& imm) : imm_(imm) {
    const auto& comps = imm.components();
    for (std::size_t i = 0; i < comps.size(); ++i) freq_.push_back(imm.frequency(static_cast<int>(i)));
    const int d = imm.ambient_dim();
    jet_.value.resize(d);
    jet_.dx.resize(d);
    jet_.dy.resize(d);
  }

  /// us = 2 pi s, ut = 2 pi t in lattice coordinates of the cell.
  const Jet& at(double us, double ut) {
    const auto& comps = imm_.components();
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const double amp = comps[i].amplitude;
      const double phase = comps[i].mode.q * us + comps[i].mode.p * ut;
      const double c = std::cos(phase);
      const double s = std::sin(phase);
      const auto& w = freq_[i];
      jet_.value[2 * i] = amp * c;
      jet_.value[2 * i + 1] = amp * s;
      jet_.dx[2 * i] = -kTwoPi * w[0] * amp * s;
      jet_.dx[2 * i + 1] = kTwoPi * w[0] * amp * c;
      jet_.dy[2 * i] = -kTwoPi * w[1] * amp * s;
      jet_.dy[2 * i + 1] = kTwoPi * w[1] * amp * c;
    }
    return jet_;
  }

 private:
  const Immersion& imm_;
  std::vector<std::array<double, 2>> freq_;
  Jet jet_;
};

/// Differential of the ball map at p applied to v (not necessarily tangent):
///   d gamma(p)[v] = (v + beta <v,gamma> gamma) / D - N alpha <v,gamma> / D^2.
void mobius_differential(const ConformalPoint& gamma, std::span<const double> p,
                         std::span<const double> v, std::vector<double>& out) {
  const auto g = gamma.coords();
  const double t = dot(p, g);
  const double tv = dot(v, g);
  const double alpha = gamma.alpha();
  const double beta = gamma.beta();
  const double denom = alpha * (t + 1.0);
  const double shift = beta * t + alpha;
  out.resize(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double num = p[k] + shift * g[k];
    out[k] = (v[k] + beta * tv * g[k]) / denom - num * alpha * tv / (denom * denom);
  }
}

double cell_factor(const Immersion& imm) {
  // dx dy = b/(4 pi^2) dus dut on the lattice cell.
  return imm.torus().b / (4.0 * kPi * kPi);
}

double area_at(const ConformalPoint& gamma, const Immersion& imm, const QuadratureSpec& spec) {
  ImmersionSampler sampler(imm);
  const auto g = gamma.coords();
  const double one_minus = 1.0 - gamma.norm2();
  const double integral = quad2d_periodic(
      [&](double us, double ut) {
        const auto& jet = sampler.at(us, ut);
        const double d = 1.0 - dot(jet.value, g);
        return one_minus / (d * d);
      },
      spec);
  return 0.5 * imm.gradient_norm2() * cell_factor(imm) * integral;
}

}  // namespace

// ---------------------------------------------------------------------------
// ConformalPoint

ConformalPoint::ConformalPoint(std::vector<double> gamma) : gamma_(std::move(gamma)) {
  if (gamma_.empty()) throw std::invalid_argument("ConformalPoint: empty vector");
  for (double v : gamma_) {
    if (!std::isfinite(v)) throw std::invalid_argument("ConformalPoint: non-finite coordinate");
  }
  norm2_ = dot(gamma_, gamma_);
  if (!(norm2_ < 1.0)) throw std::invalid_argument("ConformalPoint: |gamma| must be < 1");
  alpha_ = 1.0 / std::sqrt(1.0 - norm2_);
  // (alpha - 1)/|gamma|^2 = alpha^2 / (alpha + 1), finite through the origin.
  beta_ = alpha_ * alpha_ / (alpha_ + 1.0);
}

ConformalPoint ConformalPoint::origin(int ambient_dim) {
  return ConformalPoint(std::vector<double>(static_cast<std::size_t>(ambient_dim), 0.0));
}

double ConformalPoint::norm() const { return std::sqrt(norm2_); }

ConformalPoint ConformalPoint::negated() const {
  std::vector<double> g = gamma_;
  for (double& v : g) v = -v;
  return ConformalPoint(std::move(g));
}

std::vector<double> mobius_apply(const ConformalPoint& gamma, std::span<const double> p) {
  require_same_dim(gamma, static_cast<int>(p.size()), "mobius_apply");
  const double pn = std::sqrt(dot(p, p));
  if (std::abs(pn - 1.0) > 1e-12) {
    throw std::invalid_argument("mobius_apply: p is not a unit vector");
  }
  const auto g = gamma.coords();
  const double t = dot(p, g);
  const double shift = gamma.beta() * t + gamma.alpha();
  const double denom = gamma.alpha() * (t + 1.0);
  std::vector<double> out(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) out[k] = (p[k] + shift * g[k]) / denom;
  const double on = std::sqrt(dot(out, out));
  if (std::abs(on - 1.0) > 1e-12) {
    throw NumericalError("mobius_apply: image left the unit sphere (|gamma(p)| = " +
                         std::to_string(on) + ")");
  }
  return out;
}

double mobius_conformal_factor(const ConformalPoint& gamma, std::span<const double> p) {
  const double d = 1.0 + dot(p, gamma.coords());
  return (1.0 - gamma.norm2()) / (d * d);
}

// ---------------------------------------------------------------------------
// Immersion

Immersion::Immersion(TorusParams torus, std::vector<ImmersionComponent> components, bool shear)
    : torus_(torus), components_(std::move(components)), shear_(shear) {
  torus_.validate();
  if (components_.empty()) throw std::invalid_argument("Immersion: no components");
  double sum = 0.0;
  for (const auto& c : components_) {
    if (!std::isfinite(c.amplitude)) throw std::invalid_argument("Immersion: non-finite amplitude");
    sum += c.amplitude * c.amplitude;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("Immersion: amplitudes must satisfy sum A_i^2 = 1, got " +
                                std::to_string(sum));
  }
}

Immersion Immersion::psi_ab(double a, double b) {
  const double d = 1.0 + b * b + a * a - a;
  if (!(a >= 0.0 && a <= 1.0) || !(b * b + a * a - a >= 0.0)) {
    throw std::invalid_argument("Immersion::psi_ab: need 0 <= a <= 1 and b^2 + a^2 - a >= 0");
  }
  return Immersion({a, b},
                   {{std::sqrt((b * b + a * a - a) / d), {1, 0}},
                    {std::sqrt((1.0 - a) / d), {0, 1}},
                    {std::sqrt(a / d), {1, 1}}});
}

Immersion Immersion::psi_b(double b) { return phi({0.0, b}, b); }

Immersion Immersion::phi(const TorusParams& torus, double b0) {
  if (!(b0 > 0.0) || !std::isfinite(b0)) throw std::invalid_argument("Immersion::phi: b0 must be > 0");
  const double n = std::sqrt(1.0 + b0 * b0);
  return Immersion(torus, {{b0 / n, {1, 0}}, {1.0 / n, {0, 1}}});
}

Immersion Immersion::on(const TorusParams& torus) const {
  return Immersion(torus, components_, shear_);
}

std::array<double, 2> Immersion::frequency(int i) const {
  const TorusParams cell{shear_ ? torus_.a : 0.0, torus_.b};
  return torusbound::frequency(cell, components_.at(i).mode);
}

double Immersion::gradient_norm2() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto w = frequency(static_cast<int>(i));
    sum += components_[i].amplitude * components_[i].amplitude * (w[0] * w[0] + w[1] * w[1]);
  }
  return 4.0 * kPi * kPi * sum;
}

std::vector<double> immersion_eval(const Immersion& imm, double x, double y) {
  std::vector<double> out(imm.ambient_dim());
  const auto& comps = imm.components();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto w = imm.frequency(static_cast<int>(i));
    const double phase = kTwoPi * (w[0] * x + w[1] * y);
    out[2 * i] = comps[i].amplitude * std::cos(phase);
    out[2 * i + 1] = comps[i].amplitude * std::sin(phase);
  }
  return out;
}

Jacobian immersion_jacobian(const Immersion& imm, double x, double y) {
  Jacobian jac;
  jac.dx.resize(imm.ambient_dim());
  jac.dy.resize(imm.ambient_dim());
  const auto& comps = imm.components();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto w = imm.frequency(static_cast<int>(i));
    const double phase = kTwoPi * (w[0] * x + w[1] * y);
    const double ac = comps[i].amplitude * std::cos(phase);
    const double as = comps[i].amplitude * std::sin(phase);
    jac.dx[2 * i] = -kTwoPi * w[0] * as;
    jac.dx[2 * i + 1] = kTwoPi * w[0] * ac;
    jac.dy[2 * i] = -kTwoPi * w[1] * as;
    jac.dy[2 * i + 1] = kTwoPi * w[1] * ac;
  }
  return jac;
}

// ---------------------------------------------------------------------------
// Functionals

QuadratureSpec effective_spec(const ConformalPoint& gamma, const QuadratureSpec& spec) {
  return gamma.norm() > 0.7 ? spec.doubled() : spec;
}

double area_functional(const ConformalPoint& gamma, const Immersion& imm,
                       const QuadratureSpec& spec) {
  require_same_dim(gamma, imm.ambient_dim(), "area_functional");
  require_inside(gamma, "area_functional");
  const QuadratureSpec fine = effective_spec(gamma, spec);
  const double value = area_at(gamma, imm, fine);
  const double coarse = area_at(gamma, imm, fine.halved());
  if (std::abs(value - coarse) > 1e-9 * std::abs(value)) {
    throw NumericalError("area_functional: quadrature at " + std::to_string(fine.nodes_per_axis) +
                         " and " + std::to_string(fine.nodes_per_axis / 2) +
                         " nodes disagree (" + std::to_string(value) + " vs " +
                         std::to_string(coarse) + ")");
  }
  return value;
}

double omega_radial_slack(double r1, const OmegaPoint& w) {
  const double r2 = 1.0 - r1;
  return 1.0 - w.lambda * w.lambda / r1 - w.mu * w.mu / r2;
}

void check_omega_point(double r1, const OmegaPoint& w, double margin) {
  if (!std::isfinite(w.lambda) || !std::isfinite(w.mu) || w.lambda < 0.0 || w.mu < 0.0) {
    throw std::invalid_argument("OmegaPoint: lambda and mu must be finite and >= 0");
  }
  if (omega_radial_slack(r1, w) < margin || w.lambda + w.mu > 1.0 - margin) {
    throw std::invalid_argument("OmegaPoint: (" + std::to_string(w.lambda) + ", " +
                                std::to_string(w.mu) + ") is within " + std::to_string(margin) +
                                " of the boundary of Omega");
  }
}

double area_reduced(double b, const OmegaPoint& w, const QuadratureSpec& spec) {
  if (!(b > 0.0)) throw std::invalid_argument("area_reduced: b must be > 0");
  const double r1 = r1_of(b);
  check_omega_point(r1, w, kDivergenceMargin);
  const double integral = quad2d_periodic(
      [&](double s, double t) {
        const double d = 1.0 - w.lambda * std::cos(t) - w.mu * std::cos(s);
        return 1.0 / (d * d);
      },
      spec);
  return b / (1.0 + b * b) * omega_radial_slack(r1, w) * integral;
}

double area_closed_form(double b, const OmegaPoint& w) {
  if (!(b > 0.0)) throw std::invalid_argument("area_closed_form: b must be > 0");
  const double r1 = r1_of(b);
  check_omega_point(r1, w, kDivergenceMargin);
  // Inner integral over s by the first formula, outer over t by the second.
  return b / (1.0 + b * b) * omega_radial_slack(r1, w) * kTwoPi *
         elliptic_cos_integral(w.lambda, w.mu);
}

OmegaPoint reduce_gamma(const ConformalPoint& gamma, double b) {
  require_same_dim(gamma, 4, "reduce_gamma");
  const double r1 = r1_of(b);
  return {std::hypot(gamma[0], gamma[1]) * std::sqrt(r1),
          std::hypot(gamma[2], gamma[3]) * std::sqrt(1.0 - r1)};
}

double energy_functional(const Immersion& imm, const QuadratureSpec& spec) {
  ImmersionSampler sampler(imm);
  const double integral = quad2d_periodic(
      [&](double us, double ut) {
        const auto& jet = sampler.at(us, ut);
        return dot(jet.dx, jet.dx) + dot(jet.dy, jet.dy);
      },
      spec);
  return 0.5 * cell_factor(imm) * integral;
}

double energy_of_composition(const ConformalPoint& gamma, const Immersion& imm,
                             const QuadratureSpec& spec) {
  require_same_dim(gamma, imm.ambient_dim(), "energy_of_composition");
  require_inside(gamma, "energy_of_composition");
  ImmersionSampler sampler(imm);
  std::vector<double> ux;
  std::vector<double> uy;
  const double integral = quad2d_periodic(
      [&](double us, double ut) {
        const auto& jet = sampler.at(us, ut);
        mobius_differential(gamma, jet.value, jet.dx, ux);
        mobius_differential(gamma, jet.value, jet.dy, uy);
        return dot(ux, ux) + dot(uy, uy);
      },
      effective_spec(gamma, spec));
  return 0.5 * cell_factor(imm) * integral;
}

double energy_ratio_residual(const Immersion& tmpl, const ConformalPoint& gamma,
                             const TorusParams& t1, const TorusParams& t2,
                             const QuadratureSpec& spec) {
  const Immersion f1 = tmpl.on(t1);
  const Immersion f2 = tmpl.on(t2);
  const double moved = energy_of_composition(gamma, f1, spec) / energy_of_composition(gamma, f2, spec);
  const double rest = energy_functional(f1, spec) / energy_functional(f2, spec);
  return std::abs(moved - rest);
}

// ---------------------------------------------------------------------------
// Hersch centring

std::vector<double> centre_of_mass(const ConformalPoint& gamma, const Immersion& imm,
                                   const std::vector<double>& omega_grid, int n) {
  require_same_dim(gamma, imm.ambient_dim(), "centre_of_mass");
  if (omega_grid.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("centre_of_mass: grid size mismatch");
  }
  ImmersionSampler sampler(imm);
  const auto g = gamma.coords();
  const double shift_base = gamma.alpha();
  const int d = imm.ambient_dim();
  std::vector<double> acc(d, 0.0);
  const double h = kTwoPi / n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& jet = sampler.at(h * j, h * i);
      const double t = dot(jet.value, g);
      const double shift = gamma.beta() * t + shift_base;
      const double denom = gamma.alpha() * (t + 1.0);
      const double w = omega_grid[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < d; ++k) acc[k] += w * (jet.value[k] + shift * g[k]) / denom;
    }
  }
  const double cell = imm.torus().b / (static_cast<double>(n) * n);
  for (double& v : acc) v *= cell;
  return acc;
}

HerschResult hersch_center(const Immersion& imm, const ConformalFactor& omega,
                           const QuadratureSpec& spec, const HerschOptions& options) {
  spec.validate();
  const int n = omega.native_resolution().value_or(spec.nodes_per_axis);
  const TorusParams cell{imm.shear() ? imm.torus().a : 0.0, imm.torus().b};
  const auto grid = omega.grid(cell, n);
  double mass = 0.0;
  for (double v : grid) mass += v;
  mass *= imm.torus().b / (static_cast<double>(n) * n);

  const int d = imm.ambient_dim();
  const double cap = 1.0 - options.boundary_cap;
  auto max_abs = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  };

  HerschResult out;
  out.gamma.assign(d, 0.0);
  out.centre = centre_of_mass(ConformalPoint(out.gamma), imm, grid, n);
  out.residual = max_abs(out.centre);
  double eta = options.initial_step;

  while (out.residual > options.tolerance && out.iterations < options.max_iterations) {
    ++out.iterations;
    std::vector<double> trial(d);
    for (int k = 0; k < d; ++k) trial[k] = out.gamma[k] - eta * out.centre[k] / mass;
    double tn = 0.0;
    for (double v : trial) tn += v * v;
    tn = std::sqrt(tn);
    bool capped = false;
    if (tn > cap) {
      for (double& v : trial) v *= cap / tn;
      capped = true;
    }
    auto centre = centre_of_mass(ConformalPoint(trial), imm, grid, n);
    const double res = max_abs(centre);
    if (res < out.residual) {
      out.gamma = std::move(trial);
      out.centre = std::move(centre);
      out.residual = res;
      out.near_boundary = capped;
      eta = std::min(eta * 1.5, 64.0);
    } else {
      eta *= 0.5;
      if (eta < 1e-14) break;
    }
  }
  out.converged = out.residual <= options.tolerance;
  return out;
}

}  // namespace torusbound
