#include "torusbound/galerkin.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "torusbound/error.hpp"

namespace torusbound {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Normalised Fourier moments of omega over the cell:
///   C(nq, np) = mean(omega cos 2pi(nq s + np t)),  S likewise with sin.
class FactorMoments {
 public:
  FactorMoments(const std::vector<double>& grid, int n, int max_index)
      : max_(max_index), width_(2 * max_index + 1), values_(width_ * width_) {
    // Separable DFT: first along s (columns), then along t (rows).
    std::vector<std::complex<double>> partial(static_cast<std::size_t>(n) * width_);
    for (int i = 0; i < n; ++i) {
      for (int kq = -max_; kq <= max_; ++kq) {
        std::complex<double> acc = 0.0;
        for (int j = 0; j < n; ++j) {
          const double ph = -kTwoPi * static_cast<double>(kq) * j / n;
          acc += grid[static_cast<std::size_t>(i) * n + j] * std::polar(1.0, ph);
        }
        partial[static_cast<std::size_t>(i) * width_ + (kq + max_)] = acc;
      }
    }
    const double norm = 1.0 / (static_cast<double>(n) * n);
    for (int kq = -max_; kq <= max_; ++kq) {
      for (int kp = -max_; kp <= max_; ++kp) {
        std::complex<double> acc = 0.0;
        for (int i = 0; i < n; ++i) {
          const double ph = -kTwoPi * static_cast<double>(kp) * i / n;
          acc += partial[static_cast<std::size_t>(i) * width_ + (kq + max_)] * std::polar(1.0, ph);
        }
        values_[index(kq, kp)] = acc * norm;
      }
    }
  }

  double cos_moment(int kq, int kp) const { return values_[index(kq, kp)].real(); }
  double sin_moment(int kq, int kp) const { return -values_[index(kq, kp)].imag(); }

 private:
  std::size_t index(int kq, int kp) const {
    return static_cast<std::size_t>(kq + max_) * width_ + (kp + max_);
  }

  int max_;
  int width_;
  std::vector<std::complex<double>> values_;
};

struct Solve {
  double lambda1;
  int basis_size;
};

Solve solve_basis(const TorusParams& torus, const FactorMoments& moments, int modes) {
  std::vector<LatticeMode> basis_modes;
  for (int q = 0; q <= modes; ++q) {
    for (int p = -modes; p <= modes; ++p) {
      const LatticeMode m{p, q};
      if (m.canonical() && !(p == 0 && q == 0)) basis_modes.push_back(m);
    }
  }
  const int nm = static_cast<int>(basis_modes.size());
  const int n = 2 * nm + 1;  // constant, then cos_k at 1 + 2k, sin_k at 2 + 2k

  // Mass and stiffness per unit cell area; the common factor b cancels.
  Eigen::MatrixXd mass(n, n);
  Eigen::VectorXd stiff(n);
  mass(0, 0) = moments.cos_moment(0, 0);
  stiff(0) = 0.0;
  for (int k = 0; k < nm; ++k) {
    const auto& mk = basis_modes[k];
    const int ck = 1 + 2 * k;
    const int sk = ck + 1;
    mass(0, ck) = mass(ck, 0) = moments.cos_moment(mk.q, mk.p);
    mass(0, sk) = mass(sk, 0) = moments.sin_moment(mk.q, mk.p);
    stiff(ck) = stiff(sk) = 0.5 * eigenvalue(torus, mk);
    for (int j = 0; j <= k; ++j) {
      const auto& mj = basis_modes[j];
      const int cj = 1 + 2 * j;
      const int sj = cj + 1;
      const double c_minus = moments.cos_moment(mj.q - mk.q, mj.p - mk.p);
      const double c_plus = moments.cos_moment(mj.q + mk.q, mj.p + mk.p);
      const double s_minus_jk = moments.sin_moment(mj.q - mk.q, mj.p - mk.p);
      const double s_plus = moments.sin_moment(mj.q + mk.q, mj.p + mk.p);
      mass(cj, ck) = mass(ck, cj) = 0.5 * (c_minus + c_plus);
      mass(sj, sk) = mass(sk, sj) = 0.5 * (c_minus - c_plus);
      // cos_j sin_k = (sin(k+j) - sin(j-k)) / 2, and symmetrically.
      mass(cj, sk) = mass(sk, cj) = 0.5 * (s_plus - s_minus_jk);
      mass(sj, ck) = mass(ck, sj) = 0.5 * (s_plus + s_minus_jk);
    }
  }

  Eigen::LLT<Eigen::MatrixXd> llt(mass);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("conformal_lambda1: Galerkin mass matrix is not positive definite");
  }

  // Eliminate the constant mode (stiffness 0): for lambda != 0 it is slaved
  // to the rest, leaving stiff' u = lambda S u with S the Schur complement.
  const int r = n - 1;
  const double m00 = mass(0, 0);
  Eigen::VectorXd m0 = mass.block(0, 1, 1, r).transpose();
  Eigen::MatrixXd schur = mass.block(1, 1, r, r) - (m0 * m0.transpose()) / m00;
  Eigen::VectorXd inv_sqrt = stiff.tail(r).cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd scaled = inv_sqrt.asDiagonal() * schur * inv_sqrt.asDiagonal();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scaled, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("conformal_lambda1: eigen-solver did not converge");
  }
  const double top = eig.eigenvalues().maxCoeff();
  const double bottom = eig.eigenvalues().minCoeff();
  if (!(bottom > 0.0) || top / bottom > 1e14) {
    throw NumericalError("conformal_lambda1: reduced Galerkin matrix is ill-conditioned");
  }
  return {1.0 / top, n};
}

}  // namespace

ConformalFactor ConformalFactor::analytic(Function omega) {
  if (!omega) throw std::invalid_argument("ConformalFactor: empty function");
  ConformalFactor f;
  f.function_ = std::move(omega);
  return f;
}

ConformalFactor ConformalFactor::sampled(int n, std::vector<double> samples) {
  if (n < 1 || samples.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("ConformalFactor: expected n*n samples");
  }
  for (double v : samples) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw std::invalid_argument("ConformalFactor: samples must be finite and > 0");
    }
  }
  ConformalFactor f;
  f.n_ = n;
  f.samples_ = std::move(samples);
  return f;
}

ConformalFactor ConformalFactor::constant(double c) {
  if (!std::isfinite(c) || !(c > 0.0)) {
    throw std::invalid_argument("ConformalFactor: constant must be > 0");
  }
  return analytic([c](double, double) { return c; });
}

std::optional<int> ConformalFactor::native_resolution() const {
  if (is_sampled()) return n_;
  return std::nullopt;
}

std::vector<double> ConformalFactor::grid(const TorusParams& torus, int n) const {
  if (is_sampled()) {
    if (n != n_) {
      throw std::invalid_argument("ConformalFactor: sampled at n=" + std::to_string(n_) +
                                  ", requested n=" + std::to_string(n));
    }
    return samples_;
  }
  std::vector<double> out(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto xy = torus.physical(static_cast<double>(j) / n, static_cast<double>(i) / n);
      const double v = function_(xy[0], xy[1]);
      if (!std::isfinite(v) || !(v > 0.0)) {
        throw std::invalid_argument("ConformalFactor: omega must be finite and > 0, got " +
                                    std::to_string(v) + " at (x=" + std::to_string(xy[0]) +
                                    ", y=" + std::to_string(xy[1]) + ")");
      }
      out[static_cast<std::size_t>(i) * n + j] = v;
    }
  }
  return out;
}

GalerkinResult conformal_lambda1(const TorusParams& torus, const ConformalFactor& omega, int modes,
                                 const GalerkinOptions& options) {
  torus.validate();
  if (modes < 4) throw std::invalid_argument("conformal_lambda1: modes must be >= 4");

  int nodes = options.quadrature_nodes;
  if (nodes == 0) {
    nodes = omega.native_resolution().value_or(std::max(kDefaultFactorResolution, 4 * modes + 4));
  }
  const auto samples = omega.grid(torus, nodes);
  const FactorMoments moments(samples, nodes, 2 * modes);

  const int coarse_modes = std::max(3, (3 * modes) / 4);
  const Solve fine = solve_basis(torus, moments, modes);
  const Solve coarse = solve_basis(torus, moments, coarse_modes);

  GalerkinResult out;
  out.lambda1 = fine.lambda1;
  out.lambda1_coarse = coarse.lambda1;
  out.area = torus.area() * moments.cos_moment(0, 0);
  out.relative_change = std::abs(fine.lambda1 - coarse.lambda1) / fine.lambda1;
  out.converged = out.relative_change <= options.convergence_tol;
  out.basis_size = fine.basis_size;
  return out;
}

}  // namespace torusbound
