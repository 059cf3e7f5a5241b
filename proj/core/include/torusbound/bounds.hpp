#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torusbound/conformal.hpp"
#include "torusbound/torus.hpp"

namespace torusbound {

/// Older comparison bound (3 pi^2 / (2b)) (a^2 + b^2 + 5/3).
double esir_bound(double a, double b);

/// Bound from a single test map: (4 pi^2 / (3b))(a^2 + b^2 + 2) for b <= sqrt2,
/// (8 pi^2 sqrt(b^2+1) / (3 sqrt3)) (2b^2 + a^2) / b^3 for b > sqrt2. At
/// exactly sqrt2 both are evaluated and the smaller returned.
double theorem_class_bound(double a, double b);

/// The bound obtained from the test map Phi_{b0}:
/// (4 pi^2 / b)(b0^2 + a^2 + b^2)/(1 + b0^2) for 1 <= b0 <= sqrt2, and
/// F(b0) = (8 pi^2 sqrt(b0^2+1) / (3 sqrt3 b0^2)) (b0^2 + a^2 + b^2)/b beyond.
double test_map_bound(double a, double b, double b0);

struct BoundReport {
  TorusParams params;
  double corollary = 0.0;
  double esir = 0.0;
  double theorem_class = 0.0;
  double b0_opt = 0.0;  ///< minimising b0' = sqrt((a^2 + b^2 + L)/2)
  double L = 0.0;       ///< sqrt((a^2+b^2)(8+a^2+b^2))
  double corollary_numeric = 0.0;  ///< inf over b0 of test_map_bound, by golden section
};

/// Closed-form upper bound on the first conformal eigenvalue,
///   (8 pi^2 / (sqrt6 b)) sqrt(2 + s + L) / (s + L) (s + L/3), s = a^2 + b^2,
/// cross-checked against a numerical minimisation over b0. Throws
/// NumericalError if the two differ by more than 1e-9 relative, and
/// std::invalid_argument outside the fundamental domain.
BoundReport corollary_bound(double a, double b);

/// Closed-form corollary value only (no cross-check).
double corollary_value(double a, double b);

struct SweepWindow {
  double a_min = 0.0;
  double a_max = 0.5;
  double b_max = 5.0;
  double step = 0.01;
};

struct SweepViolation {
  BoundReport at;
  std::string reason;
};

struct SweepResult {
  std::vector<BoundReport> rows;
  std::optional<SweepViolation> violation;
  double max_ratio = 0.0;  ///< max esir/corollary
  double max_ratio_b = 0.0;
  double min_strict_gap = 0.0;  ///< min (esir - corollary) over points with a^2+b^2 >= 1.1
  double max_arc_gap = 0.0;     ///< max |esir - corollary| on the arc a^2+b^2 = 1
};

/// Sweep over the fundamental domain: a from a_min to a_max in `step`, and
/// for each a the arc point b = sqrt(1 - a^2) followed by the multiples of
/// `step` above it up to b_max. Stops at the first point where corollary >
/// esir + 1e-12, or where a^2 + b^2 > 1 + 1e-6 but the inequality is not strict.
SweepResult bound_sweep(const SweepWindow& window);

struct GlobalScanResult {
  double value = 0.0;
  double a = 0.0;
  double b = 0.0;
  double m2_max = 0.0;  ///< max of the b > sqrt2 branch over the window
  bool tail_decreasing = false;  ///< (8b^2+1) sqrt(b^2+1)/b^3 decreasing beyond b_max
};

/// Maximises theorem_class_bound over the sweep grid of the fundamental
/// domain clipped at b_max.
GlobalScanResult global_sup_scan(double step, double b_max);

/// max over a grid_n x grid_n grid of |w4 Lap w2 - w2 Lap w4| for
/// w = gamma o Phi_{b0} on T(a, b), with the flat Laplacian taken through
/// the analytic chain rule. Positive means (w2, w4) cannot both be
/// eigenfunctions of one conformal metric. Throws std::invalid_argument for
/// |gamma| >= 1 - 1e-6 or b0 < 1.
double strictness_witness(double a, double b, const ConformalPoint& gamma, double b0, int grid_n);

/// The coefficient a^2 + b^2 - 1 of the obstruction that survives at gamma = 0.
inline double obstruction_coefficient(double a, double b) { return a * a + b * b - 1.0; }

}  // namespace torusbound
