#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "torusbound/bounds.hpp"
#include "torusbound/conformal.hpp"
#include "torusbound/galerkin.hpp"
#include "torusbound/report.hpp"
#include "torusbound/torus.hpp"

namespace torusbound {

/// Malformed input text (CSV or JSON).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal string that reads back to the same double. Non-finite
/// values print as nan, inf, -inf.
std::string format_double(double x);

/// index,eigenvalue,multiplicity,modes with modes written p:q;p:q.
void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumEntry>& entries);

struct ConformalGrid {
  TorusParams torus;
  int n = 0;
  std::vector<double> samples;  ///< row-major, row = t index

  ConformalFactor factor() const { return ConformalFactor::sampled(n, samples); }
};

/// Reads "# torus a=<a> b=<b> n=<N>" followed by N rows of N comma-separated
/// samples. Throws FormatError on any deviation.
ConformalGrid read_conformal_grid(std::istream& in);
void write_conformal_grid(std::ostream& out, const ConformalGrid& grid);

/// {n, components: [{A, p, q}], torus: {a, b}, shear}, n the sphere dimension.
std::string immersion_to_json(const Immersion& imm);
/// Inverse of immersion_to_json. Throws FormatError on malformed JSON or a
/// mismatched n, std::invalid_argument if the immersion itself is invalid.
Immersion immersion_from_json(const std::string& text);

/// {"schema": 1, "pass": ..., "reports": [...]}, pretty-printed with a
/// trailing newline.
std::string reports_to_json(const std::vector<CheckReport>& reports);

/// a,b,corollary,esir,theorem_class,b0_opt,L
void write_sweep_csv(std::ostream& out, const std::vector<BoundReport>& rows);

}  // namespace torusbound
