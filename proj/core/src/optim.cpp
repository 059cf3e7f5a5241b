#include "torusbound/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "torusbound/error.hpp"

namespace torusbound {

namespace {

constexpr double kPi = std::numbers::pi;

void check_r1(double r1, const char* who) {
  if (!(r1 >= 0.5 && r1 < 1.0)) {
    throw std::invalid_argument(std::string(who) + ": r1 must lie in [1/2, 1), got " +
                                std::to_string(r1));
  }
}

struct SurrogateFactors {
  double slack;  // 1 - l^2/r1 - m^2/r2
  double num2;   // 1 - (l+m)^2 + 3 l m
  double minus;  // 1 - (l-m)^2
  double plus;   // 1 - (l+m)^2
};

SurrogateFactors factors_of(double r1, const OmegaPoint& w) {
  const double l = w.lambda;
  const double m = w.mu;
  const double d = l - m;
  const double s = l + m;
  return {omega_radial_slack(r1, w), (1.0 - s) * (1.0 + s) + 3.0 * l * m, (1.0 - d) * (1.0 + d),
          (1.0 - s) * (1.0 + s)};
}

std::string point_string(double x, double y) {
  std::ostringstream os;
  os.precision(10);
  os << "(" << x << ", " << y << ")";
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Surrogate and polynomials

double surrogate_value(double r1, const OmegaPoint& w) {
  check_r1(r1, "surrogate_value");
  if (!(w.lambda >= 0.0) || !(w.mu >= 0.0)) {
    throw std::invalid_argument("surrogate_value: lambda, mu must be >= 0");
  }
  const auto f = factors_of(r1, w);
  if (f.slack < -1e-12) throw std::invalid_argument("surrogate_value: point outside Omega");
  if (f.plus < 1e-12) {
    throw std::invalid_argument("surrogate_value: too close to the corner (r1, r2) " +
                                point_string(w.lambda, w.mu));
  }
  return f.slack * f.num2 / (f.minus * std::sqrt(f.minus) * f.plus);
}

std::array<double, 2> surrogate_gradient(double r1, const OmegaPoint& w) {
  check_r1(r1, "surrogate_gradient");
  const double l = w.lambda;
  const double m = w.mu;
  const auto f = factors_of(r1, w);
  if (std::abs(f.minus) < 1e-10 || std::abs(f.plus) < 1e-10) {
    throw std::invalid_argument("surrogate_gradient: a denominator factor vanishes at " +
                                point_string(l, m));
  }
  const double r2 = 1.0 - r1;
  const double denom = f.minus * std::sqrt(f.minus) * f.plus;
  const double value = f.slack * f.num2 / denom;

  const double dslack_l = -2.0 * l / r1;
  const double dslack_m = -2.0 * m / r2;
  const double dnum2_l = -2.0 * (l + m) + 3.0 * m;
  const double dnum2_m = -2.0 * (l + m) + 3.0 * l;
  const double dminus_l = -2.0 * (l - m);
  const double dminus_m = 2.0 * (l - m);
  const double dplus_l = -2.0 * (l + m);
  const double dplus_m = -2.0 * (l + m);

  const double gl = (dslack_l * f.num2 + f.slack * dnum2_l) / denom -
                    value * (1.5 * dminus_l / f.minus + dplus_l / f.plus);
  const double gm = (dslack_m * f.num2 + f.slack * dnum2_m) / denom -
                    value * (1.5 * dminus_m / f.minus + dplus_m / f.plus);
  return {gl, gm};
}

double case1_polynomial(double r1, double lambda, double mu) {
  const double r2 = 1.0 - r1;
  const double d = lambda - mu;
  const double s = lambda + mu;
  return (1.0 - 1.5 * d * d) * (1.0 - s * s) -
         (1.0 - lambda * lambda / r1 - mu * mu / r2) * (1.0 - s * s + 3.0 * lambda * mu);
}

CriticalPolynomial critical_polynomial(double lambda, double mu) {
  const double l = lambda;
  const double m = mu;
  const double d2 = (l - m) * (l - m);
  const double s2 = (l + m) * (l + m);
  CriticalPolynomial out;
  out.factors = {l,
                 m,
                 (1.0 - d2) * (1.0 - d2),
                 (1.0 - s2) * (1.0 - s2) * (1.0 - s2),
                 1.0 - l * l + l * m - m * m,
                 1.0 - d2 * (2.0 - l * l - l * m - m * m)};
  out.value = 1.0;
  for (double f : out.factors) out.value *= f;
  return out;
}

double case2_axis_maximum(double r1) {
  return 2.0 / (3.0 * std::sqrt(3.0) * r1 * std::sqrt(1.0 - r1));
}

double corner_limit(double r1) { return 3.0 / (8.0 * std::sqrt(r1 * (1.0 - r1))); }

// ---------------------------------------------------------------------------
// Case 1

std::vector<CheckReport> case1_verify(double r1, int grid_n) {
  if (!(r1 >= 0.5 && r1 <= 2.0 / 3.0 + 1e-15)) {
    throw std::invalid_argument("case1_verify: r1 must lie in [1/2, 2/3]");
  }
  if (grid_n < 2) throw std::invalid_argument("case1_verify: grid_n must be >= 2");
  const double r2 = 1.0 - r1;
  const double sr1 = std::sqrt(r1);
  const double sr2 = std::sqrt(r2);

  double min_q = INFINITY;
  double arg_l = 0.0;
  double arg_m = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    const double rho = static_cast<double>(i) / (grid_n - 1);
    for (int j = 0; j < grid_n; ++j) {
      const double th = 0.5 * kPi * j / (grid_n - 1);
      const double l = rho * sr1 * std::cos(th);
      const double m = rho * sr2 * std::sin(th);
      const double q = case1_polynomial(r1, l, m);
      if (q < min_q) {
        min_q = q;
        arg_l = l;
        arg_m = m;
      }
    }
  }
  const std::vector<std::pair<std::string, double>> params{{"r1", r1},
                                                           {"grid", static_cast<double>(grid_n)}};
  std::vector<CheckReport> out;
  out.push_back({"case1.q_nonnegative", params, min_q >= -1e-12,
                 "min Q on the closed region at " + point_string(arg_l, arg_m), min_q,
                 {arg_l, arg_m}});

  // Coefficients of lambda^2, mu^2 in l^2/r1 + m^2/r2 - 3/2 (l^2 + m^2).
  const double coeff = std::min(1.0 / r1, 1.0 / r2) - 1.5;
  out.push_back({"case1.coefficients", params, coeff >= -1e-15,
                 "min(1/r1, 1/r2) - 3/2", coeff, {}});

  const double d11 = 1.0 / r1 - 1.0;
  const double d22 = 1.0 / r2 - 1.0;
  const double det = d11 * d22 - 1.0;
  out.push_back({"case1.quadratic_form_psd", params, det >= -1e-12 && d11 >= 0.0 && d22 >= 0.0,
                 "determinant of [[1/r1-1, -1], [-1, 1/r2-1]]", det, {}});
  return out;
}

// ---------------------------------------------------------------------------
// Case 2

std::vector<CheckReport> case2_verify(double r1, double delta, int grid_n) {
  if (!(r1 > 2.0 / 3.0 && r1 < 1.0)) {
    throw std::invalid_argument("case2_verify: r1 must lie in (2/3, 1)");
  }
  if (!(delta > 0.0)) throw std::invalid_argument("case2_verify: delta must be > 0");
  if (grid_n < 2) throw std::invalid_argument("case2_verify: grid_n must be >= 2");
  const double r2 = 1.0 - r1;
  const double sr1 = std::sqrt(r1);
  const double sr2 = std::sqrt(r2);
  const double bound = case2_axis_maximum(r1);
  const std::vector<std::pair<std::string, double>> params{
      {"r1", r1}, {"delta", delta}, {"grid", static_cast<double>(grid_n)}};
  auto outside_corner = [&](double l, double m) {
    return (l - r1) * (l - r1) + (m - r2) * (m - r2) >= delta;
  };

  // (i) global bound and (iii) interior critical-point exclusion share one grid.
  double min_margin = INFINITY;
  double margin_l = 0.0;
  double margin_m = 0.0;
  double ellipse_max = 0.0;
  double min_factor = INFINITY;
  double factor_l = 0.0;
  double factor_m = 0.0;
  double min_grad = INFINITY;
  double grad_l = 0.0;
  double grad_m = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    const double rho = static_cast<double>(i) / (grid_n - 1);
    for (int j = 0; j < grid_n; ++j) {
      const double th = 0.5 * kPi * j / (grid_n - 1);
      const double l = rho * sr1 * std::cos(th);
      const double m = rho * sr2 * std::sin(th);
      if (!outside_corner(l, m)) continue;
      const OmegaPoint w{l, m};
      const double value = surrogate_value(r1, w);
      if (bound - value < min_margin) {
        min_margin = bound - value;
        margin_l = l;
        margin_m = m;
      }
      if (i == grid_n - 1) {
        ellipse_max = std::max(ellipse_max, std::abs(value));
        continue;
      }
      if (l < 1e-3 || m < 1e-3) continue;
      const auto g = critical_polynomial(l, m);
      const double fmin = *std::min_element(g.factors.begin(), g.factors.end());
      if (fmin < min_factor) {
        min_factor = fmin;
        factor_l = l;
        factor_m = m;
      }
      const auto grad = surrogate_gradient(r1, w);
      const double gn = std::hypot(grad[0], grad[1]);
      if (gn < min_grad) {
        min_grad = gn;
        grad_l = l;
        grad_m = m;
      }
    }
  }

  std::vector<CheckReport> out;
  out.push_back({"case2.global_bound", params, min_margin >= -1e-9,
                 "min of 2/(3 sqrt3 r1 sqrt(1-r1)) - I over R_delta at " +
                     point_string(margin_l, margin_m),
                 min_margin, {margin_l, margin_m}});

  // (ii) boundary pieces.
  {
    const double lstar = std::sqrt(3.0 * r1 - 2.0);
    const double lmax = sr1 * (1.0 - 1e-12);
    const double found = golden_section_max(
        [&](double l) { return surrogate_value(r1, {l, 0.0}); }, 0.0, lmax, 1e-12);
    const double axis_value = surrogate_value(r1, {found, 0.0});
    double axis_sampled = 0.0;
    for (int i = 0; i <= 4 * grid_n; ++i) {
      const double l = lmax * i / (4.0 * grid_n);
      axis_sampled = std::max(axis_sampled, surrogate_value(r1, {l, 0.0}));
    }
    double mu_axis = 0.0;
    double mu_arg = 0.0;
    for (int i = 0; i <= 4 * grid_n; ++i) {
      const double m = sr2 * i / (4.0 * grid_n);
      const double v = surrogate_value(r1, {0.0, m});
      if (v > mu_axis) {
        mu_axis = v;
        mu_arg = m;
      }
    }
    double arc_margin = INFINITY;
    const double rad = std::sqrt(delta);
    for (int k = 0; k <= 4 * grid_n; ++k) {
      const double phi = 2.0 * kPi * k / (4.0 * grid_n);
      const double l = r1 + rad * std::cos(phi);
      const double m = r2 + rad * std::sin(phi);
      if (l < 0.0 || m < 0.0 || omega_radial_slack(r1, {l, m}) < 0.0) continue;
      arc_margin = std::min(arc_margin, bound - surrogate_value(r1, {l, m}));
    }
    const bool axis_ok = std::abs(found - lstar) <= 1e-6 &&
                         std::abs(axis_value - bound) <= 1e-12 * bound &&
                         axis_sampled <= bound * (1.0 + 1e-14);
    const bool mu_ok = mu_arg == 0.0 && std::abs(mu_axis - 1.0) <= 1e-15;
    const bool ellipse_ok = ellipse_max <= 1e-12;
    const bool arc_ok = !(arc_margin <= 0.0);
    std::ostringstream wit;
    wit.precision(12);
    wit << "lambda-axis max at " << found << " (expected " << lstar << "), value " << axis_value
        << "; mu-axis max " << mu_axis << " at mu=" << mu_arg << "; max |I| on ellipse "
        << ellipse_max << "; min margin on delta-arc " << arc_margin;
    out.push_back({"case2.boundary_maxima", params, axis_ok && mu_ok && ellipse_ok && arc_ok,
                   wit.str(), std::min(bound - axis_sampled, arc_margin), {found, 0.0}});
  }

  {
    std::ostringstream wit;
    wit.precision(12);
    wit << "min G factor " << min_factor << " at " << point_string(factor_l, factor_m)
        << "; min |grad I| " << min_grad << " at " << point_string(grad_l, grad_m);
    out.push_back({"case2.no_interior_critical_point", params,
                   min_factor > 0.0 && min_grad >= kGradientFloor, wit.str(),
                   std::min(min_factor, min_grad), {grad_l, grad_m}});
  }

  // (iv) the corner: sampled sup of I on circles of shrinking radius.
  {
    const double limit = corner_limit(r1);
    const double eps = 1e-4;
    double prev = INFINITY;
    bool monotone = true;
    bool below_bound = true;
    double last_excess = INFINITY;
    std::ostringstream wit;
    wit.precision(6);
    wit << "limit " << limit << "; excess by radius:";
    for (double radius : {1e-2, 1e-3, 1e-4, 1e-5}) {
      double best = 0.0;
      for (int k = 0; k < 1440; ++k) {
        const double phi = 2.0 * kPi * k / 1440.0;
        const double l = r1 + radius * std::cos(phi);
        const double m = r2 + radius * std::sin(phi);
        const OmegaPoint w{l, m};
        if (omega_radial_slack(r1, w) <= 0.0) continue;
        if ((1.0 - (l + m)) * (1.0 + (l + m)) < 1e-12) continue;
        best = std::max(best, surrogate_value(r1, w));
      }
      const double excess = best - limit;
      wit << " " << radius << ":" << excess;
      if (excess > prev) monotone = false;
      if (best >= bound) below_bound = false;
      prev = excess;
      last_excess = excess;
    }
    out.push_back({"case2.corner_limit", params, monotone && below_bound && last_excess <= eps,
                   wit.str(), last_excess, {r1, r2}});
  }
  return out;
}

}  // namespace torusbound
