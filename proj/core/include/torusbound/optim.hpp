#pragma once

#include <array>
#include <functional>
#include <string_view>
#include <vector>

#include "torusbound/conformal.hpp"
#include "torusbound/report.hpp"
#include "torusbound/specfun.hpp"

namespace torusbound {

// ---------------------------------------------------------------------------
// The elliptic-bound surrogate and its companion polynomials. Here r1 is
// b^2/(1+b^2) and r2 = 1 - r1.

/// I(lambda, mu) = (1 - lambda^2/r1 - mu^2/r2)(1 - (lambda+mu)^2 + 3 lambda mu)
///               / ((1 - (lambda-mu)^2)^{3/2} (1 - (lambda+mu)^2)).
/// Defined on the closure of Omega except the point (r1, r2); requires
/// r1 in [1/2, 1), the point inside the closed ellipse (1e-12 slack), and
/// 1 - (lambda+mu)^2 >= 1e-12. Throws std::invalid_argument otherwise.
double surrogate_value(double r1, const OmegaPoint& w);

/// Analytic gradient (dI/dlambda, dI/dmu). The two denominator factors are
/// differentiated logarithmically, the numerator by the product rule, so the
/// gradient stays defined on the ellipse where I vanishes. Throws if either
/// denominator factor is within 1e-10 of zero.
std::array<double, 2> surrogate_gradient(double r1, const OmegaPoint& w);

/// Q = (1 - 3/2 (lambda-mu)^2)(1 - (lambda+mu)^2)
///   - (1 - lambda^2/r1 - mu^2/r2)(1 - (lambda+mu)^2 + 3 lambda mu).
double case1_polynomial(double r1, double lambda, double mu);

struct CriticalPolynomial {
  double value = 0.0;
  /// lambda, mu, (1-(l-m)^2)^2, (1-(l+m)^2)^3, 1 - l^2 + l m - m^2,
  /// 1 - (l-m)^2 (2 - l^2 - l m - m^2).
  std::array<double, 6> factors{};
};

/// The factored polynomial whose positivity on the interior of Omega rules
/// out interior critical points of I.
CriticalPolynomial critical_polynomial(double lambda, double mu);

/// Closed-form value of sup I for r1 > 2/3, attained at (sqrt(3 r1 - 2), 0):
/// 2 / (3 sqrt3 r1 sqrt(1 - r1)).
double case2_axis_maximum(double r1);

/// Limit bound of I at the excluded corner (r1, r2): 3 / (8 sqrt(r1 (1 - r1))).
double corner_limit(double r1);

// ---------------------------------------------------------------------------
// Supremum searches

enum class SupBranch { origin, boundary_axis_lambda, boundary_axis_mu, interior };

std::string_view to_string(SupBranch branch);

struct SupResult {
  double value = 0.0;
  std::vector<double> argmax;
  SupBranch branch = SupBranch::origin;
  int iterations = 0;
  /// max over the verification grid of (functional - value); <= 1e-9 when
  /// the reported value really is the maximum.
  double certified_gap = 0.0;
};

/// Golden-section maximisation of a unimodal f on [lo, hi]. Returns the
/// argmax; stops when the bracket is below tol.
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol = 1e-12);

/// sup over Omega of area_closed_form(b, .): a 64x64 grid in elliptic polar
/// coordinates seeds projected gradient ascent; golden-section searches run
/// on both axes. Throws NumericalError if the grid maximum beats the
/// refined maximum by more than tol.
SupResult sup_area_s3(double b, double tol = 1e-9);

/// A(gamma o psi_ab) restricted to the rotation-reduced ball point with
/// radii-times-amplitudes (l1, l2, l3) and the residual phase chi of the
/// (1,1) circle that torus translations cannot absorb.
double area_s5_reduced(double a, double b, const std::array<double, 3>& lambdas, double chi,
                       const QuadratureSpec& spec = {});

/// sup over D^6 of A(gamma o psi_ab). Returns argmax (l1, l2, l3, chi).
SupResult sup_area_s5(double a, double b, double tol = 1e-6, const QuadratureSpec& spec = {64});

/// Reference value of the supremum: the elliptic branch
/// 8 pi^2 b sqrt(c+1) / (3 sqrt3 c), c = b^2 + a^2 - a, when
/// (a - 1/2)^2 + b^2 > 9/4, the value at the origin otherwise.
double expected_sup_s5(double a, double b);

/// Closed-form supremum for psi_b: 4 pi^2 b/(1+b^2) for b <= sqrt2, else
/// 8 pi^2 sqrt(b^2+1) / (3 sqrt3 b).
double expected_sup_s3(double b);

// ---------------------------------------------------------------------------
// Verification suites

/// Case 1 (r1 in [1/2, 2/3]): Q >= -1e-12 on a grid_n x grid_n polar grid of
/// the closed region, plus the two quadratic-form conditions.
std::vector<CheckReport> case1_verify(double r1, int grid_n);

/// Gradient-norm floor for the no-interior-critical-point check.
inline constexpr double kGradientFloor = 1e-7;

/// Case 2 (r1 in (2/3, 1)) on R_delta: (i) global bound, (ii) boundary
/// maxima, (iii) G-factor positivity and gradient floor in the interior,
/// (iv) the corner limit on shrinking neighbourhoods.
std::vector<CheckReport> case2_verify(double r1, double delta, int grid_n);

}  // namespace torusbound
