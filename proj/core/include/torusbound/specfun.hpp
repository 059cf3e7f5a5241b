#pragma once

#include <cmath>
#include <numbers>
#include <sstream>

#include "torusbound/error.hpp"

namespace torusbound {

/// Complete elliptic integral of the second kind,
/// E(k) = \int_0^{pi/2} sqrt(1 - k^2 sin^2 t) dt, for k in [-1, 1].
///
/// Uses the arithmetic-geometric mean with the Gauss sum of squared
/// half-differences. For |k| below 1e-3 a short series in k^2 is used; for
/// k' = sqrt(1 - k^2) below 1e-4 the logarithmic expansion about k = 1 is
/// used instead, where the AGM loses its fixed point.
/// Throws std::domain_error for |k| > 1 or NaN.
double elliptic_e(double k);

/// The quadratic majorant (pi/2)(1 - k^2/4) >= E(k).
double elliptic_e_upper_bound(double k);

/// \int_0^{2pi} ds / (A - B cos s)^2 = 2 pi A / (A^2 - B^2)^{3/2}.
/// Requires A - |B| >= 1e-8 (the integral diverges at A = |B|).
double cos_integral_sq(double A, double B);

/// \int_0^{2pi} (1 - A cos t) dt / ((1 - A cos t)^2 - B^2)^{3/2}
///   = 4 E(sqrt(4AB / (1 - (A-B)^2))) / ((1 - (A-B)^2)^{1/2} (1 - (A+B)^2)).
/// Requires A, B >= 0 and A + B <= 1 - 1e-8.
double elliptic_cos_integral(double A, double B);

/// Distance from the divergence boundary below which the closed-form
/// integrals refuse to evaluate.
inline constexpr double kDivergenceMargin = 1e-8;

struct QuadratureSpec {
  int nodes_per_axis = 128;

  /// Throws std::invalid_argument unless nodes_per_axis >= 8 and even.
  void validate() const;

  QuadratureSpec doubled() const { return {2 * nodes_per_axis}; }
  QuadratureSpec halved() const { return {nodes_per_axis / 2}; }
};

/// Tensor-product periodic trapezoid rule on [0, 2pi]^2,
///   (2pi/n)^2 sum_{i,j} f(2pi i/n, 2pi j/n).
/// Exact for trigonometric polynomials of degree < n in each variable.
/// Throws NumericalError naming the node if f is non-finite there.
template <class F>
double quad2d_periodic(F&& f, const QuadratureSpec& spec) {
  spec.validate();
  const int n = spec.nodes_per_axis;
  const double h = 2.0 * std::numbers::pi / n;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = h * i;
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      const double t = h * j;
      const double v = f(s, t);
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "quad2d_periodic: non-finite integrand at node (" << i << ", " << j
            << ") = (s=" << s << ", t=" << t << ")";
        throw NumericalError(msg.str());
      }
      row += v;
    }
    total += row;
  }
  return total * h * h;
}

}  // namespace torusbound
