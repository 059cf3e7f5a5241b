#pragma once

#include <string>
#include <utility>
#include <vector>

namespace torusbound {

/// Outcome of one numerical verification. Serialised as
/// {schema, check, params, pass, witness, min_value, argmin}.
struct CheckReport {
  std::string check;
  std::vector<std::pair<std::string, double>> params;
  bool pass = false;
  /// Human-readable description of the decisive point or failure.
  std::string witness;
  /// The extremal value the check compares against its threshold. For
  /// "upper bound" checks this is the smallest margin found.
  double min_value = 0.0;
  std::vector<double> argmin;
};

inline bool all_passed(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace torusbound
