#pragma once

#include <array>
#include <span>
#include <vector>

#include "torusbound/galerkin.hpp"
#include "torusbound/specfun.hpp"
#include "torusbound/torus.hpp"

namespace torusbound {

/// A point gamma of the open unit ball D^{n+1}, acting on S^n by
///   gamma(p) = (p + (beta <p,gamma> + alpha) gamma) / (alpha (<p,gamma> + 1)),
/// alpha = 1/sqrt(1 - |gamma|^2), beta = (alpha - 1)/|gamma|^2 (1/2 at gamma = 0).
class ConformalPoint {
 public:
  /// Throws std::invalid_argument if empty, non-finite, or |gamma| >= 1.
  explicit ConformalPoint(std::vector<double> gamma);
  static ConformalPoint origin(int ambient_dim);

  int ambient_dim() const { return static_cast<int>(gamma_.size()); }
  std::span<const double> coords() const { return gamma_; }
  double operator[](int i) const { return gamma_[i]; }
  double norm2() const { return norm2_; }
  double norm() const;
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  ConformalPoint negated() const;

 private:
  std::vector<double> gamma_;
  double norm2_;
  double alpha_;
  double beta_;
};

/// Image of the unit vector p. Throws std::invalid_argument if dimensions
/// differ or | |p| - 1 | > 1e-12, NumericalError if the output leaves the
/// sphere by more than 1e-12.
std::vector<double> mobius_apply(const ConformalPoint& gamma, std::span<const double> p);

/// Pointwise conformal factor |d gamma|^2 / |dp|^2 = (1 - |gamma|^2) / (1 + <p,gamma>)^2.
double mobius_conformal_factor(const ConformalPoint& gamma, std::span<const double> p);

struct ImmersionComponent {
  double amplitude = 0.0;
  LatticeMode mode;
};

/// F = (A_1 f_1, A_1 g_1, ..., A_m f_m, A_m g_m) into S^{2m-1}, with f_i, g_i
/// the cos/sin eigenfunctions of `mode_i` on `torus`. With shear off the
/// frequencies are those of the rectangular torus T(0, b).
class Immersion {
 public:
  /// Throws std::invalid_argument if the amplitudes do not satisfy
  /// sum A_i^2 = 1 to 1e-12, or the torus is invalid.
  Immersion(TorusParams torus, std::vector<ImmersionComponent> components, bool shear = true);

  /// psi_{ab} into S^5: modes (1,0), (0,1), (1,1) with amplitudes
  /// sqrt(b^2 + a^2 - a), sqrt(1 - a), sqrt(a), normalised.
  static Immersion psi_ab(double a, double b);
  /// psi_b into S^3 on T(0, b): (b cos 2pi y/b, b sin 2pi y/b, cos 2pi x, sin 2pi x) / sqrt(1+b^2).
  static Immersion psi_b(double b);
  /// Phi_{b0} on T(a, b): (b0 cos 2pi y/b, b0 sin 2pi y/b, cos 2pi(x - a y/b), sin ...) / sqrt(1+b0^2).
  static Immersion phi(const TorusParams& torus, double b0);

  const TorusParams& torus() const { return torus_; }
  const std::vector<ImmersionComponent>& components() const { return components_; }
  bool shear() const { return shear_; }
  int ambient_dim() const { return 2 * static_cast<int>(components_.size()); }
  int sphere_dim() const { return ambient_dim() - 1; }

  /// Same amplitudes and modes on another torus.
  Immersion on(const TorusParams& torus) const;

  /// Frequency vector of component i.
  std::array<double, 2> frequency(int i) const;
  /// |grad F|^2, constant over the torus: sum_i A_i^2 4 pi^2 |w_i|^2.
  double gradient_norm2() const;

 private:
  TorusParams torus_;
  std::vector<ImmersionComponent> components_;
  bool shear_;
};

std::vector<double> immersion_eval(const Immersion& imm, double x, double y);

struct Jacobian {
  std::vector<double> dx;  ///< dF/dx
  std::vector<double> dy;  ///< dF/dy
};

/// Analytic partial derivatives of F.
Jacobian immersion_jacobian(const Immersion& imm, double x, double y);

/// Quadrature order actually used for a given gamma: doubled when |gamma| > 0.7.
QuadratureSpec effective_spec(const ConformalPoint& gamma, const QuadratureSpec& spec);

/// A(gamma o F) = (1/2) \int (1 - |gamma|^2) / (1 - <F, gamma>)^2 |grad F|^2 over
/// the fundamental cell. Requires |gamma| <= 1 - 1e-6. Evaluated at the
/// effective order and at half of it; NumericalError if the two disagree by
/// more than 1e-9 relative.
///
/// The weight (1 - <F,gamma>)^{-2} is the conformal factor of the ball map at
/// -gamma, so area_functional(gamma, F) equals the energy of
/// mobius(-gamma) o F.
double area_functional(const ConformalPoint& gamma, const Immersion& imm,
                       const QuadratureSpec& spec = {});

/// Point (lambda, mu) of the reduced region
///   Omega = { lambda, mu >= 0, lambda^2/r1 + mu^2/r2 < 1 },
/// r1 = b^2/(1+b^2), r2 = 1/(1+b^2).
struct OmegaPoint {
  double lambda = 0.0;
  double mu = 0.0;
};

inline double r1_of(double b) { return b * b / (1.0 + b * b); }

/// 1 - lambda^2/r1 - mu^2/r2.
double omega_radial_slack(double r1, const OmegaPoint& w);

/// Throws std::invalid_argument unless w lies in Omega with slack >= margin.
void check_omega_point(double r1, const OmegaPoint& w, double margin);

/// (b/(1+b^2)) (1 - lambda^2/r1 - mu^2/r2) \iint ds dt / (1 - lambda cos t - mu cos s)^2,
/// integrated by the periodic trapezoid rule.
double area_reduced(double b, const OmegaPoint& w, const QuadratureSpec& spec = {});

/// The same functional in closed form through E(k).
double area_closed_form(double b, const OmegaPoint& w);

/// Rotation-reduced representative of gamma in D^4 for psi_b:
/// lambda = |(g1, g2)| sqrt(r1), mu = |(g3, g4)| sqrt(r2).
OmegaPoint reduce_gamma(const ConformalPoint& gamma, double b);

/// E(F) = (1/2) \int |grad F|^2 over the flat cell (by quadrature).
double energy_functional(const Immersion& imm, const QuadratureSpec& spec = {});

/// E(gamma o F) with the ball map applied explicitly and its Jacobian taken
/// by the chain rule.
double energy_of_composition(const ConformalPoint& gamma, const Immersion& imm,
                             const QuadratureSpec& spec = {});

/// | E(gamma o F_1)/E(gamma o F_2) - E(F_1)/E(F_2) | with F_i the template
/// instantiated on t1 and t2.
double energy_ratio_residual(const Immersion& tmpl, const ConformalPoint& gamma,
                             const TorusParams& t1, const TorusParams& t2,
                             const QuadratureSpec& spec = {});

struct HerschOptions {
  int max_iterations = 2000;
  double tolerance = 1e-10;       ///< on every |\int (gamma o F)_j omega dv|
  double boundary_cap = 1e-6;     ///< |gamma| <= 1 - boundary_cap
  double initial_step = 1.0;
};

struct HerschResult {
  std::vector<double> gamma;
  std::vector<double> centre;  ///< \int (gamma o F)_j omega dv, per component
  double residual = 0.0;       ///< max_j |centre_j|
  int iterations = 0;
  bool converged = false;
  bool near_boundary = false;  ///< the iterate hit the cap |gamma| = 1 - boundary_cap
};

/// Finds gamma with \int (gamma o F) omega dv = 0 by damped fixed-point
/// iteration gamma <- gamma - eta m(gamma) on the normalised centre of mass
/// m, eta adapted to the residual. Starts from gamma = 0. Does not throw on
/// non-convergence: check `converged`.
HerschResult hersch_center(const Immersion& imm, const ConformalFactor& omega,
                           const QuadratureSpec& spec = {}, const HerschOptions& options = {});

/// \int (gamma o F)_j omega dv for each component j.
std::vector<double> centre_of_mass(const ConformalPoint& gamma, const Immersion& imm,
                                   const std::vector<double>& omega_grid, int n);

}  // namespace torusbound
