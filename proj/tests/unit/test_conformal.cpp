#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "torusbound/conformal.hpp"

using namespace torusbound;
using oracle::pi;

namespace {

std::vector<double> random_unit(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> n;
  std::vector<double> v(d);
  double s = 0;
  for (double& x : v) {
    x = n(rng);
    s += x * x;
  }
  for (double& x : v) x /= std::sqrt(s);
  return v;
}

std::vector<double> random_ball(std::mt19937_64& rng, int d, double rmax) {
  auto v = random_unit(rng, d);
  const double r = rmax * std::uniform_real_distribution<double>(0, 1)(rng);
  for (double& x : v) x *= r;
  return v;
}

double norm(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// A(gamma o F) straight from its definition: the ball map applied
// pointwise, its differential by central differences in (x, y), and a
// plain midpoint sum over the lattice cell (periodic, so spectrally exact).
double area_by_definition(const ConformalPoint& gamma, const Immersion& imm) {
  const auto& t = imm.torus();
  auto energy_density = [&](double s, double u) {
    const double x = s + t.a * u, y = t.b * u;
    const double h = 1e-5;
    double total = 0;
    for (auto [dx, dy] : {std::pair{h, 0.0}, {0.0, h}}) {
      const auto fp = mobius_apply(gamma, immersion_eval(imm, x + dx, y + dy));
      const auto fm = mobius_apply(gamma, immersion_eval(imm, x - dx, y - dy));
      for (std::size_t k = 0; k < fp.size(); ++k) total += std::pow((fp[k] - fm[k]) / (2 * h), 2);
    }
    return total;
  };
  const int n = 200;
  double integral = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) integral += energy_density((i + 0.5) / n, (j + 0.5) / n);
  }
  return 0.5 * t.b * integral / (n * n);
}

}  // namespace

TEST_CASE("ball maps act on the sphere") {
  std::mt19937_64 rng(11);
  SUBCASE("gamma = 0 is the identity") {
    const auto p = random_unit(rng, 4);
    const auto q = mobius_apply(ConformalPoint::origin(4), p);
    for (int k = 0; k < 4; ++k) CHECK(q[k] == doctest::Approx(p[k]).epsilon(1e-15));
  }
  SUBCASE("radial fixed points") {
    const ConformalPoint g({0.5, 0, 0, 0});
    const std::vector<double> north{1, 0, 0, 0}, south{-1, 0, 0, 0};
    CHECK(mobius_apply(g, north)[0] == doctest::Approx(1).epsilon(1e-15));
    CHECK(mobius_apply(g, south)[0] == doctest::Approx(-1).epsilon(1e-15));
  }
  SUBCASE("images stay on the sphere and the factor matches the differential") {
    for (int i = 0; i < 100; ++i) {
      const ConformalPoint g(random_ball(rng, 6, 0.95));
      const auto p = random_unit(rng, 6);
      const auto img = mobius_apply(g, p);
      CHECK(std::abs(norm(img) - 1) < 1e-12);
      // Tangent curve p cos h + v sin h.
      auto v = random_unit(rng, 6);
      double pv = 0;
      for (int k = 0; k < 6; ++k) pv += p[k] * v[k];
      for (int k = 0; k < 6; ++k) v[k] -= pv * p[k];
      const double vn = norm(v);
      for (double& x : v) x /= vn;
      auto curve = [&](double h) {
        std::vector<double> c(6);
        for (int k = 0; k < 6; ++k) c[k] = p[k] * std::cos(h) + v[k] * std::sin(h);
        return mobius_apply(g, c);
      };
      const double h = 1e-5;
      const auto cp = curve(h), cm = curve(-h);
      double d2 = 0;
      for (int k = 0; k < 6; ++k) d2 += std::pow((cp[k] - cm[k]) / (2 * h), 2);
      CHECK(d2 == doctest::Approx(mobius_conformal_factor(g, p)).epsilon(1e-7));
    }
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(ConformalPoint({1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ConformalPoint(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(mobius_apply(ConformalPoint::origin(4), std::vector<double>{1, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(mobius_apply(ConformalPoint::origin(4), std::vector<double>{1, 1, 0, 0}), std::invalid_argument);
  }
}

TEST_CASE("immersions") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  const double b = 1.7;
  const auto psi = Immersion::psi_b(b);
  const auto at0 = immersion_eval(psi, 0, 0);
  const double s = std::sqrt(1 + b * b);
  const std::vector<double> expected{b / s, 0, 1 / s, 0};
  for (int k = 0; k < 4; ++k) CHECK(at0[k] == doctest::Approx(expected[k]).epsilon(1e-15));
  CHECK(psi.sphere_dim() == 3);

  const auto psi_ab = Immersion::psi_ab(0.3, 1.2);
  CHECK(psi_ab.sphere_dim() == 5);
  for (int i = 0; i < 100; ++i) {
    const double x = 3 * u(rng), y = 3 * u(rng);
    CHECK(std::abs(norm(immersion_eval(psi_ab, x, y)) - 1) < 1e-14);
    const auto j = immersion_jacobian(psi_ab, x, y);
    double g2 = 0;
    for (int k = 0; k < 6; ++k) {
      const double fx = oracle::central_diff([&](double t) { return immersion_eval(psi_ab, t, y)[k]; }, x, 1e-5);
      const double fy = oracle::central_diff([&](double t) { return immersion_eval(psi_ab, x, t)[k]; }, y, 1e-5);
      CHECK(j.dx[k] == doctest::Approx(fx).epsilon(1e-6).scale(1));
      CHECK(j.dy[k] == doctest::Approx(fy).epsilon(1e-6).scale(1));
      g2 += fx * fx + fy * fy;
    }
    CHECK(psi_ab.gradient_norm2() == doctest::Approx(g2).epsilon(1e-6));
  }
  CHECK(Immersion::psi_b(b).gradient_norm2() == doctest::Approx(8 * pi * pi / (1 + b * b)).epsilon(1e-14));
  CHECK_THROWS_AS(Immersion({0, 1}, {{0.5, {1, 0}}, {0.5, {0, 1}}}), std::invalid_argument);
}

TEST_CASE("area functional reference values") {
  const double r2 = std::sqrt(2.0);
  CHECK(area_functional(ConformalPoint::origin(4), Immersion::psi_b(r2)) ==
        doctest::Approx(4 * r2 * pi * pi / 3).epsilon(1e-12));
  // Maximiser for b = 2: lambda = gamma_1 sqrt(r1) = sqrt(3 r1 - 2) with r1 = 4/5.
  const double g1 = std::sqrt(0.4 / 0.8);
  const double sup = 8 * pi * pi * std::sqrt(5.0) / (6 * std::sqrt(3.0));
  CHECK(area_functional(ConformalPoint({g1, 0, 0, 0}), Immersion::psi_b(2)) == doctest::Approx(sup).epsilon(1e-11));
  CHECK(area_functional(ConformalPoint({std::sqrt(0.4), 0, 0, 0}), Immersion::psi_b(2)) < sup - 0.05);
  CHECK(area_functional(ConformalPoint::origin(6), Immersion::psi_ab(0.5, std::sqrt(3.0) / 2)) ==
        doctest::Approx(4 * pi * pi * (std::sqrt(3.0) / 2) / 1.5).epsilon(1e-12));
}

TEST_CASE("area functional against the definition and the explicit ball map") {
  std::mt19937_64 rng(21);
  const auto imm = Immersion::psi_ab(0.2, 1.3);
  for (int i = 0; i < 3; ++i) {
    const ConformalPoint g(random_ball(rng, 6, 0.6));
    const double value = area_functional(g, imm);
    // The weight (1 - <F, gamma>)^-2 belongs to the map at -gamma.
    CHECK(value == doctest::Approx(energy_of_composition(g.negated(), imm)).epsilon(1e-10));
    CHECK(value == doctest::Approx(area_by_definition(g.negated(), imm)).epsilon(1e-8));
  }
  CHECK_THROWS_AS(area_functional(ConformalPoint({0.9999999, 0, 0, 0}), Immersion::psi_b(2)), std::invalid_argument);
  CHECK_THROWS_AS(area_functional(ConformalPoint::origin(6), Immersion::psi_b(2)), std::invalid_argument);
}

TEST_CASE("reduced area: quadrature, closed form, and rotation reduction") {
  CHECK(area_reduced(1.3, {0, 0}) == doctest::Approx(4 * pi * pi * 1.3 / (1 + 1.69)).epsilon(1e-14));
  CHECK(area_closed_form(1.3, {0, 0}) == doctest::Approx(4 * pi * pi * 1.3 / (1 + 1.69)).epsilon(1e-14));
  CHECK(std::abs(area_reduced(2, {std::sqrt(0.4), 0}) -
                 area_functional(ConformalPoint({std::sqrt(0.4) / std::sqrt(0.8), 0, 0, 0}), Immersion::psi_b(2))) < 1e-10);
  CHECK(area_closed_form(2, {std::sqrt(0.4), 0}) == doctest::Approx(8 * pi * pi * std::sqrt(5.0) / (6 * std::sqrt(3.0))).epsilon(1e-13));
  CHECK(std::abs(area_reduced(1, {0.3, 0.2}) - area_closed_form(1, {0.3, 0.2})) < 1e-10);
  CHECK(std::abs(area_reduced(1.5, {0.25, 0.25}) - area_closed_form(1.5, {0.25, 0.25})) < 1e-10);

  const auto z = reduce_gamma(ConformalPoint::origin(4), 2);
  CHECK(z.lambda == 0);
  CHECK(z.mu == 0);
  const auto w = reduce_gamma(ConformalPoint({0.3, 0.4, 0, 0}), 1);
  CHECK(w.lambda == doctest::Approx(0.5 * std::sqrt(0.5)).epsilon(1e-15));
  CHECK(w.mu == 0);
  CHECK(area_functional(ConformalPoint({0.3, 0.4, 0, 0}), Immersion::psi_b(1)) ==
        doctest::Approx(area_functional(ConformalPoint({0.5, 0, 0, 0}), Immersion::psi_b(1))).epsilon(1e-12));

  CHECK_THROWS_AS(area_closed_form(2, {0.9, 0}), std::invalid_argument);
  CHECK_THROWS_AS(area_closed_form(2, {-0.1, 0}), std::invalid_argument);
}

TEST_CASE("energies") {
  for (double b : {1.0, 1.5, 2.5}) {
    CHECK(energy_functional(Immersion::psi_b(b)) == doctest::Approx(4 * pi * pi * b / (1 + b * b)).epsilon(1e-13));
  }
  for (auto [a, b, b0] : {std::tuple{0.2, 1.4, 1.1}, {0.5, 0.9, 2.0}, {0.0, 1.7, 1.7}}) {
    const auto phi = Immersion::phi({a, b}, b0);
    const double expected = 2 * pi * pi * (b0 * b0 + a * a + b * b) / ((1 + b0 * b0) * b);
    CHECK(energy_functional(phi) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(energy_of_composition(ConformalPoint::origin(4), phi) == doctest::Approx(expected).epsilon(1e-13));
  }
  CHECK(energy_functional(Immersion::phi({0.5, std::sqrt(3.0) / 2}, std::sqrt(2.0))) ==
        doctest::Approx(4 * pi * pi / std::sqrt(3.0)).epsilon(1e-13));
}

TEST_CASE("energy ratio is unchanged by the ball maps") {
  const auto phi = Immersion::phi({0, 1}, 1.3);
  CHECK(energy_ratio_residual(phi, ConformalPoint::origin(4), {0, 1}, {0.5, std::sqrt(3.0) / 2}) == 0.0);
  CHECK(energy_ratio_residual(phi, ConformalPoint({0.4, 0, 0, 0}), {0, 1}, {0.5, std::sqrt(3.0) / 2}) <= 1e-8);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0, 1);
  const auto tmpl = Immersion::psi_ab(0.3, 1.1);
  for (int i = 0; i < 5; ++i) {
    const ConformalPoint g(random_ball(rng, 6, 0.7));
    const TorusParams t1{0.5 * u(rng), 1 + u(rng)}, t2{0.5 * u(rng), 1 + 2 * u(rng)};
    CHECK(energy_ratio_residual(tmpl, g, t1, t2) <= 1e-8);
  }
}

TEST_CASE("Hersch centring") {
  const QuadratureSpec spec{64};
  SUBCASE("flat measure needs no correction") {
    const auto r = hersch_center(Immersion::phi({0, 1.3}, 1.3), ConformalFactor::constant(1), spec);
    CHECK(r.converged);
    CHECK(norm(r.gamma) < 1e-12);
  }
  SUBCASE("perturbed measure") {
    const auto omega = ConformalFactor::analytic([](double x, double) { return 1 + 0.2 * std::cos(2 * pi * x); });
    const auto imm = Immersion::phi({0, 1}, 1);
    const auto r = hersch_center(imm, omega, spec);
    CHECK(r.converged);
    CHECK(r.residual <= 1e-10);
    CHECK(norm(r.gamma) > 1e-3);
    // Recompute the centring integral independently with the explicit ball map.
    const int n = spec.nodes_per_axis;
    std::vector<double> acc(4, 0);
    const ConformalPoint g(r.gamma);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double x = double(j) / n, y = double(i) / n;
        const auto v = mobius_apply(g, immersion_eval(imm, x, y));
        for (int k = 0; k < 4; ++k) acc[k] += v[k] * (1 + 0.2 * std::cos(2 * pi * x)) / (n * n);
      }
    }
    for (double c : acc) CHECK(std::abs(c) < 1e-9);
  }
  SUBCASE("concentrating measure drives gamma toward the antipode") {
    const auto imm = Immersion::phi({0, 1}, 1);
    const auto p = immersion_eval(imm, 0, 0);
    double last = 0;
    for (double kappa : {2.0, 6.0, 20.0}) {
      const auto omega = ConformalFactor::analytic(
          [=](double x, double y) { return std::exp(kappa * (std::cos(2 * pi * x) + std::cos(2 * pi * y))); });
      const auto r = hersch_center(imm, omega, spec);
      const double gn = norm(r.gamma);
      CHECK(gn > last);
      CHECK(gn <= 1 - 1e-6 + 1e-15);
      double cosang = 0;
      for (int k = 0; k < 4; ++k) cosang += r.gamma[k] * p[k] / gn;
      CHECK(cosang < -0.99);
      last = gn;
    }
    HerschOptions tight;
    tight.boundary_cap = 0.05;
    const auto sharp = ConformalFactor::analytic(
        [](double x, double y) { return std::exp(40 * (std::cos(2 * pi * x) + std::cos(2 * pi * y))); });
    const auto capped = hersch_center(imm, sharp, {128}, tight);
    CHECK(norm(capped.gamma) <= 0.95 + 1e-12);
    CHECK(capped.near_boundary);
    CHECK_FALSE(capped.converged);
  }
}
