#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "torusbound/torus.hpp"

namespace torusbound {

/// A positive doubly periodic density omega on a flat torus, defining the
/// conformal metric g = omega g_flat. Either a closed-form function of the
/// physical point (x, y) or an n x n sample grid in lattice coordinates:
/// sample (i, j) sits at (s, t) = (j/n, i/n), i.e. at (x, y) = (s + a t, b t).
class ConformalFactor {
 public:
  using Function = std::function<double(double x, double y)>;

  static ConformalFactor analytic(Function omega);
  /// Row-major samples; row i is the t-index. Throws std::invalid_argument
  /// if the size is not n^2 or any sample is not strictly positive.
  static ConformalFactor sampled(int n, std::vector<double> samples);
  static ConformalFactor constant(double c);

  bool is_sampled() const { return !function_; }
  /// Native grid size of a sampled factor.
  std::optional<int> native_resolution() const;

  /// The n x n lattice-coordinate grid for `torus`. A sampled factor only
  /// answers at its native resolution. Throws std::invalid_argument if any
  /// value is not strictly positive and finite.
  std::vector<double> grid(const TorusParams& torus, int n) const;

 private:
  Function function_;
  int n_ = 0;
  std::vector<double> samples_;
};

/// Default sampling resolution of an analytic factor in the Galerkin mass matrix.
inline constexpr int kDefaultFactorResolution = 64;

struct GalerkinOptions {
  /// Relative change between the two resolutions above which the result is
  /// flagged unconverged.
  double convergence_tol = 1e-6;
  /// Quadrature grid for the mass matrix; 0 selects max(64, 4 modes + 4)
  /// (or the native resolution of a sampled factor).
  int quadrature_nodes = 0;
};

struct GalerkinResult {
  double lambda1 = 0.0;         ///< smallest positive eigenvalue, fine basis
  double lambda1_coarse = 0.0;  ///< same at the coarse basis (3/4 of the modes)
  double area = 0.0;            ///< A(g) = \int omega dv_flat
  double relative_change = 0.0;
  bool converged = false;
  int basis_size = 0;

  double product() const { return lambda1 * area; }
};

/// First positive eigenvalue of Delta_g = omega^{-1} Delta_flat, from the weak
/// problem \int grad u . grad v = lambda \int omega u v over the real Fourier
/// modes cos/sin 2 pi (q s + p t) with |p|, |q| <= modes. The stiffness matrix
/// is exact and diagonal; the mass matrix comes from the periodic trapezoid
/// rule on the sampled factor. The basis at 3/4 of `modes` supplies the
/// convergence indicator.
///
/// Throws std::invalid_argument for modes < 4 or a non-positive factor, and
/// NumericalError if the mass matrix is not numerically positive definite.
GalerkinResult conformal_lambda1(const TorusParams& torus, const ConformalFactor& omega, int modes,
                                 const GalerkinOptions& options = {});

}  // namespace torusbound
