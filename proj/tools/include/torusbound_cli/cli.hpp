#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "torusbound/report.hpp"

namespace torusbound::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kIoError = 3 };

/// `verify lemma`: the S^3 supremum against its closed form, then the Case 1 or
/// Case 2 certification at r1 = b^2/(1+b^2). Without `b`, runs the six
/// reference heights 1, 1.2, sqrt2, 1.5, 2, 3.
std::vector<CheckReport> lemma_suite(std::optional<double> b, int grid_n);

/// Bounds suite: dominance sweep, global scan, and `samples` seeded random
/// strictness witnesses off the arc.
std::vector<CheckReport> bounds_suite(double step, double b_max, std::uint64_t seed,
                                      int samples = 50);

/// Entry point shared by the executable and the tests. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace torusbound::cli
