#pragma once

#include <string>
#include <vector>

namespace torusbound::cli {

/// Bound curves b -> bound(a, b) for one fixed shear a.
struct BoundSlice {
  double a = 0.0;
  std::vector<double> b;
  std::vector<double> corollary;
  std::vector<double> esir;
  std::vector<double> theorem_class;
};

/// Samples the three bounds on [sqrt(1 - a^2), b_max] in steps of `step`.
BoundSlice sample_slice(double a, double step, double b_max);

/// 800x600 SVG: one <g class="slice"> per slice holding three polylines,
/// a horizontal reference line at `reference`, y ticks at multiples of pi^2.
std::string render_bound_plot(const std::vector<BoundSlice>& slices, double reference);

}  // namespace torusbound::cli
