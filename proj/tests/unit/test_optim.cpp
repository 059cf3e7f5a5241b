#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "torusbound/conformal.hpp"
#include "torusbound/optim.hpp"

using namespace torusbound;
using oracle::pi;

namespace {

OmegaPoint random_interior(std::mt19937_64& rng, double r1, double margin = 0.02) {
  std::uniform_real_distribution<double> u(0, 1);
  while (true) {
    const double rho = std::sqrt(u(rng)) * (1 - margin);
    const double th = 0.5 * pi * u(rng);
    const OmegaPoint w{rho * std::sqrt(r1) * std::cos(th), rho * std::sqrt(1 - r1) * std::sin(th)};
    if (w.lambda > 1e-3 && w.mu > 1e-3 && 1 - std::pow(w.lambda + w.mu, 2) > 1e-3) return w;
  }
}

}  // namespace

TEST_CASE("surrogate reference values") {
  for (double r1 : {0.5, 0.6, 0.8, 0.95}) CHECK(surrogate_value(r1, {0, 0}) == 1.0);
  CHECK(surrogate_value(0.8, {std::sqrt(0.4), 0}) == doctest::Approx(1.07583).epsilon(1e-5));
  for (double r1 : {0.7, 0.8, 0.9, 0.97}) {
    CHECK(surrogate_value(r1, {std::sqrt(3 * r1 - 2), 0}) == doctest::Approx(case2_axis_maximum(r1)).epsilon(1e-14));
  }
  CHECK(case2_axis_maximum(0.7) == doctest::Approx(1.0038977).epsilon(1e-7));
  CHECK(case2_axis_maximum(0.7) > 1.0);
  for (double th = 0.05; th < pi / 2; th += 0.1) {
    const double r1 = 0.75;
    const OmegaPoint w{std::sqrt(r1) * std::cos(th), std::sqrt(1 - r1) * std::sin(th)};
    CHECK(std::abs(surrogate_value(r1, w)) < 1e-12);
  }
  CHECK_THROWS_AS(surrogate_value(0.4, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(surrogate_value(0.8, {0.95, 0}), std::invalid_argument);
}

TEST_CASE("surrogate majorises the normalised area and is exact on the lambda axis") {
  // The closed-form area over its value at the origin replaces E(k) by its
  // quadratic majorant to give I, with equality where k = 0.
  std::mt19937_64 rng(17);
  for (double b : {1.0, 1.3, 2.0, 3.0}) {
    const double r1 = r1_of(b);
    const double base = 4 * pi * pi * b / (1 + b * b);
    for (int i = 0; i < 200; ++i) {
      const auto w = random_interior(rng, r1);
      CHECK(area_closed_form(b, w) / base <= surrogate_value(r1, w) * (1 + 1e-14));
      const OmegaPoint axis{w.lambda, 0};
      CHECK(area_closed_form(b, axis) / base == doctest::Approx(surrogate_value(r1, axis)).epsilon(1e-13));
    }
  }
}

TEST_CASE("analytic gradient against central differences") {
  std::mt19937_64 rng(23);
  for (double r1 : {0.5, 0.62, 0.75, 0.9}) {
    for (int i = 0; i < 125; ++i) {
      const auto w = random_interior(rng, r1);
      const auto g = surrogate_gradient(r1, w);
      const double h = 1e-6;
      const double fl = oracle::central_diff([&](double x) { return surrogate_value(r1, {x, w.mu}); }, w.lambda, h);
      const double fm = oracle::central_diff([&](double x) { return surrogate_value(r1, {w.lambda, x}); }, w.mu, h);
      const double scale = std::max(1.0, std::hypot(fl, fm));
      CHECK(std::abs(g[0] - fl) <= 1e-6 * scale);
      CHECK(std::abs(g[1] - fm) <= 1e-6 * scale);
    }
  }
  SUBCASE("critical points on the axis and at the origin") {
    for (double r1 : {0.7, 0.8, 0.9}) CHECK(std::abs(surrogate_gradient(r1, {std::sqrt(3 * r1 - 2), 0})[0]) < 1e-12);
    const auto g0 = surrogate_gradient(0.8, {0, 0});
    CHECK(std::abs(g0[0]) < 1e-15);
    CHECK(std::abs(g0[1]) < 1e-15);
  }
  SUBCASE("no lambda-mu symmetry off r1 = 1/2") {
    const auto g = surrogate_gradient(0.8, {0.2, 0.2});
    CHECK(std::abs(g[0] - g[1]) > 1e-3);
    const auto s = surrogate_gradient(0.5, {0.2, 0.2});
    CHECK(s[0] == doctest::Approx(s[1]).epsilon(1e-13));
  }
}

TEST_CASE("Case 1 polynomial") {
  CHECK(case1_polynomial(0.6, 0, 0) == 0.0);
  CHECK(case1_polynomial(0.6, 0.3, 0.2) > 0);
  // At r1 = r2 = 1/2 with lambda = mu the quadratic part is (1/2)(l^2 + m^2) >= 0.
  for (double l = 0.05; l < 0.5; l += 0.05) CHECK(case1_polynomial(0.5, l, l) >= 0);
  // Brute-force expansion from the definition.
  for (double r1 : {0.5, 0.55, 0.6, 2.0 / 3}) {
    const double l = 0.31, m = 0.17, r2 = 1 - r1;
    const double direct = (1 - 1.5 * (l - m) * (l - m)) * (1 - (l + m) * (l + m)) -
                          (1 - l * l / r1 - m * m / r2) * (1 - (l + m) * (l + m) + 3 * l * m);
    CHECK(case1_polynomial(r1, l, m) == doctest::Approx(direct).epsilon(1e-14));
  }
}

TEST_CASE("factored critical-point polynomial") {
  CHECK(critical_polynomial(0, 0.3).value == 0.0);
  CHECK(critical_polynomial(0.3, 0).value == 0.0);
  const auto g = critical_polynomial(0.3, 0.2);
  const std::array<double, 6> expected{0.3, 0.2, 0.9801, 0.421875, 0.93, 0.9819};
  double prod = 1;
  for (int i = 0; i < 6; ++i) {
    CHECK(g.factors[i] == doctest::Approx(expected[i]).epsilon(1e-14));
    prod *= expected[i];
  }
  CHECK(g.value == doctest::Approx(prod).epsilon(1e-13));
  const auto edge = critical_polynomial(0.5, 0.5);
  CHECK(edge.factors[3] == 0.0);
  CHECK(edge.value == 0.0);
}

TEST_CASE("corner limit stays below the axis maximum for r1 in (2/3, 1)") {
  for (int i = 1; i < 1000; ++i) {
    const double r1 = 2.0 / 3 + (1.0 / 3) * i / 1000;
    CHECK(corner_limit(r1) < case2_axis_maximum(r1));
  }
}

TEST_CASE("Case 1 verification") {
  for (double r1 : {0.5, 0.55, 0.6, 2.0 / 3}) {
    const auto reports = case1_verify(r1, 300);
    CHECK(reports.size() == 3);
    for (const auto& r : reports) {
      CAPTURE(r.check);
      CAPTURE(r.witness);
      CHECK(r.pass);
    }
  }
  // Determinant of the quadratic form is 0 at r1 = 1/2 and the first
  // coefficient 1/r1 - 3/2 vanishes at r1 = 2/3.
  CHECK(case1_verify(0.5, 50)[2].min_value == doctest::Approx(0).scale(1));
  CHECK(case1_verify(2.0 / 3, 50)[1].min_value == doctest::Approx(0).scale(1));
  CHECK_THROWS_AS(case1_verify(0.7, 100), std::invalid_argument);
}

TEST_CASE("Case 2 verification") {
  for (double r1 : {0.7, 0.8, 0.9}) {
    const auto reports = case2_verify(r1, 0.05, 200);
    REQUIRE(reports.size() == 4);
    for (const auto& r : reports) {
      CAPTURE(r1);
      CAPTURE(r.check);
      CAPTURE(r.witness);
      CHECK(r.pass);
    }
  }
  const auto at08 = case2_verify(0.8, 0.05, 200);
  CHECK(at08[0].argmin[0] == doctest::Approx(std::sqrt(0.4)).epsilon(5e-3));
  CHECK_THROWS_AS(case2_verify(0.6, 0.05, 100), std::invalid_argument);
  CHECK_THROWS_AS(case2_verify(0.8, 0, 100), std::invalid_argument);
}
