#include "torusbound/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace torusbound {

namespace {

constexpr double kPi = std::numbers::pi;

void check_modulus(double k, const char* who) {
  if (!(std::abs(k) <= 1.0)) {
    throw std::domain_error(std::string(who) + ": modulus must lie in [-1, 1], got " +
                            std::to_string(k));
  }
}

}  // namespace

double elliptic_e(double k) {
  check_modulus(k, "elliptic_e");
  const double ak = std::abs(k);
  if (ak < 1e-3) {
    const double m = ak * ak;
    return 0.5 * kPi * (1.0 - m * (0.25 + m * (3.0 / 64.0 + m * (5.0 / 256.0))));
  }
  // k'^2 formed as a product so that it keeps full relative precision near 1.
  const double kp2 = (1.0 - ak) * (1.0 + ak);
  const double kp = std::sqrt(kp2);
  if (kp < 1e-4) {
    if (kp == 0.0) return 1.0;
    const double lg = std::log(4.0 / kp);
    return 1.0 + 0.5 * kp2 * (lg - 0.5) + (3.0 / 16.0) * kp2 * kp2 * (lg - 13.0 / 12.0);
  }

  double a = 1.0;
  double g = kp;
  double weight = 0.5;
  double sum = weight * ak * ak;
  for (int it = 0; it < 64; ++it) {
    const double c = 0.5 * (a - g);
    const double a_next = 0.5 * (a + g);
    g = std::sqrt(a * g);
    a = a_next;
    weight *= 2.0;
    sum += weight * c * c;
    if (std::abs(c) <= std::numeric_limits<double>::epsilon() * a) break;
  }
  return 0.5 * kPi / a * (1.0 - sum);
}

double elliptic_e_upper_bound(double k) {
  check_modulus(k, "elliptic_e_upper_bound");
  return 0.5 * kPi * (1.0 - 0.25 * k * k);
}

double cos_integral_sq(double A, double B) {
  if (!std::isfinite(A) || !std::isfinite(B) || A - std::abs(B) < kDivergenceMargin) {
    throw std::domain_error("cos_integral_sq: requires A > |B| (divergent integral), got A=" +
                            std::to_string(A) + ", B=" + std::to_string(B));
  }
  const double d = (A - B) * (A + B);
  return 2.0 * kPi * A / (d * std::sqrt(d));
}

double elliptic_cos_integral(double A, double B) {
  if (!std::isfinite(A) || !std::isfinite(B) || A < 0.0 || B < 0.0) {
    throw std::domain_error("elliptic_cos_integral: requires A, B >= 0");
  }
  if (A + B > 1.0 - kDivergenceMargin) {
    throw std::domain_error("elliptic_cos_integral: requires A + B < 1 (divergent integral), got A+B=" +
                            std::to_string(A + B));
  }
  const double minus = (1.0 - (A - B)) * (1.0 + (A - B));
  const double plus = (1.0 - (A + B)) * (1.0 + (A + B));
  // k^2 <= 1 on the admissible set; clamp the rounding excess.
  const double k = std::min(1.0, std::sqrt(4.0 * A * B / minus));
  return 4.0 * elliptic_e(k) / (std::sqrt(minus) * plus);
}

void QuadratureSpec::validate() const {
  if (nodes_per_axis < 8 || nodes_per_axis % 2 != 0) {
    throw std::invalid_argument("QuadratureSpec: nodes_per_axis must be even and >= 8, got " +
                                std::to_string(nodes_per_axis));
  }
}

}  // namespace torusbound
