#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <vector>

namespace torusbound {

/// The flat torus T(a, b) = R^2 / (Z(1,0) + Z(a,b)) with its Euclidean metric.
/// Cell area is b.
struct TorusParams {
  double a = 0.0;
  double b = 1.0;

  /// Throws std::invalid_argument unless a, b are finite and b > 0.
  void validate() const;

  double area() const { return b; }

  /// Physical point of the lattice coordinates (s, t): s (1,0) + t (a,b).
  std::array<double, 2> physical(double s, double t) const { return {s + a * t, b * t}; }
};

/// True iff 0 <= a <= 1/2 and b >= sqrt(1 - a^2), the fundamental region of
/// flat tori up to isometry and dilation. Points within 1e-12 of the arc
/// b = sqrt(1 - a^2) count as inside. Throws std::invalid_argument for
/// non-finite input.
bool in_fundamental_domain(double a, double b);

/// Index (p, q) of the eigenfunctions cos / sin 2 pi <(q, (p - q a)/b), (x, y)>.
struct LatticeMode {
  int p = 0;
  int q = 0;

  /// q > 0, or q == 0 and p >= 0.
  bool canonical() const { return q > 0 || (q == 0 && p >= 0); }

  friend auto operator<=>(const LatticeMode&, const LatticeMode&) = default;
};

/// Dual-lattice frequency vector (q, (p - q a)/b).
std::array<double, 2> frequency(const TorusParams& torus, LatticeMode mode);

/// Flat Laplace eigenvalue 4 pi^2 (q^2 + ((p - q a)/b)^2).
double eigenvalue(const TorusParams& torus, LatticeMode mode);

enum class EigenKind { cos, sin };

/// f_{pq}(x, y) (kind == cos) or g_{pq}(x, y) (kind == sin).
double eigenfunction_eval(const TorusParams& torus, LatticeMode mode, EigenKind kind, double x,
                          double y);

struct SpectrumEntry {
  double eigenvalue = 0.0;
  int multiplicity = 0;
  /// Canonical modes sharing this eigenvalue, sorted.
  std::vector<LatticeMode> modes;
};

struct SpectrumOptions {
  /// Entries whose eigenvalues agree to this relative tolerance are merged.
  double group_rel_tol = 1e-9;
  /// Multiplies the initial enumeration radius. Tests use 2 to confirm the
  /// output does not depend on it.
  double radius_scale = 1.0;
  /// Enumeration aborts with std::overflow_error beyond this many modes.
  std::size_t max_modes = 20'000'000;
};

/// The zero eigenvalue followed by the lowest `count` distinct positive
/// eigenvalues of T(a, b), with multiplicities (2 per canonical mode, 1 for
/// the constant). Every mode with |w| <= R is enumerated, and R grows until
/// the `count`-th level lies strictly inside the disc, so no level below it
/// can be missed.
std::vector<SpectrumEntry> spectrum(const TorusParams& torus, int count,
                                    const SpectrumOptions& options = {});

}  // namespace torusbound
