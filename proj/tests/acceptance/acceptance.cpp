// Acceptance suite: one PASS/FAIL line per criterion, tolerances fixed here.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "torusbound/bounds.hpp"
#include "torusbound/conformal.hpp"
#include "torusbound/galerkin.hpp"
#include "torusbound/optim.hpp"
#include "torusbound/torus.hpp"

using namespace torusbound;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;
const double kSharp = 8 * kPi2 / std::sqrt(3.0);
const double kRoot3_2 = std::sqrt(3.0) / 2;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::vector<double> random_ball(std::mt19937_64& rng, int d, double rmax) {
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> v(d);
  double s = 0;
  for (double& x : v) {
    x = n(rng);
    s += x * x;
  }
  const double r = rmax * std::pow(u(rng), 1.0 / d) / std::sqrt(s);
  for (double& x : v) x *= r;
  return v;
}

Outcome ac1() {
  const auto t0 = Clock::now();
  const auto spec = spectrum({0.5, kRoot3_2}, 1);
  const double l1 = spec[1].eigenvalue;
  const double e1 = std::abs(l1 - 16 * kPi2 / 3) / (16 * kPi2 / 3);
  const double e2 = std::abs(l1 * kRoot3_2 - kSharp) / kSharp;
  const double t = seconds_since(t0);
  return {e1 <= 1e-10 && e2 <= 1e-10 && spec[1].multiplicity == 6 && t < 1.0,
          "lambda1 = " + num(l1, 10) + " (mult " + std::to_string(spec[1].multiplicity) + "), lambda1*A = " +
              num(l1 * kRoot3_2, 10) + ", rel err " + num(std::max(e1, e2), 2) + ", " + num(t, 2) + " s"};
}

Outcome sup_s3_case(const std::vector<double>& heights, bool case1, double time_limit) {
  Outcome o;
  double worst = 0, worst_arg = 0, slowest = 0;
  for (double b : heights) {
    const auto t0 = Clock::now();
    const auto s = sup_area_s3(b);
    const double t = seconds_since(t0);
    const double expected = case1 ? 4 * kPi2 * b / (1 + b * b)
                                   : 8 * kPi2 * std::sqrt(b * b + 1) / (3 * std::sqrt(3.0) * b);
    const double arg0 = case1 ? 0.0 : std::sqrt(3 * r1_of(b) - 2);
    const double err = std::abs(s.value - expected);
    const double arg_err = std::hypot(s.argmax[0] - arg0, s.argmax[1]);
    worst = std::max(worst, err);
    worst_arg = std::max(worst_arg, arg_err);
    slowest = std::max(slowest, t);
    o.pass = o.pass && err <= 1e-6 && arg_err <= 1e-6 && t < time_limit;
  }
  o.detail = "max |sup - closed form| " + num(worst, 2) + ", max argmax offset " + num(worst_arg, 2) +
             ", slowest " + num(slowest, 2) + " s";
  return o;
}

Outcome ac4() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const double b = 1 + 2 * u(rng);
    const ConformalPoint g(random_ball(rng, 4, 0.9));
    const double full = area_functional(g, Immersion::psi_b(b));
    const double closed = area_closed_form(b, reduce_gamma(g, b));
    worst = std::max(worst, std::abs(full - closed) / closed);
  }
  return {worst <= 1e-8, "max relative gap over 100 samples " + num(worst, 2)};
}

Outcome ac5() {
  Outcome o;
  double min_q = INFINITY;
  for (double r1 : {0.50, 0.55, 0.60, 2.0 / 3}) {
    const auto reports = case1_verify(r1, 1000);
    min_q = std::min(min_q, reports[0].min_value);
    o.pass = o.pass && reports[0].min_value >= -1e-12 && all_passed(reports);
  }
  o.detail = "min Q over 4 x 10^6 points " + num(min_q, 3);
  return o;
}

Outcome ac6() {
  Outcome o;
  int runs = 0, passed = 0;
  std::string first_fail;
  for (double r1 : {0.7, 0.8, 0.9}) {
    for (double delta : {0.1, 0.05, 0.02}) {
      const auto reports = case2_verify(r1, delta, 800);
      ++runs;
      const bool ok = reports.size() == 4 && all_passed(reports);
      passed += ok;
      if (!ok && first_fail.empty()) {
        for (const auto& r : reports) {
          if (!r.pass) first_fail = r.check + " at r1 " + num(r1) + ", delta " + num(delta) + ": " + r.witness;
        }
      }
    }
  }
  o.pass = passed == runs;
  o.detail = std::to_string(passed) + "/" + std::to_string(runs) + " (r1, delta) pairs pass all four sub-checks";
  if (!first_fail.empty()) o.detail += "; " + first_fail;
  return o;
}

Outcome ac7() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  double worst = 0;
  for (int i = 0; i < 500; ++i) {
    const double r1 = 0.5 + 0.45 * u(rng);
    OmegaPoint w;
    do {
      const double rho = 0.98 * std::sqrt(u(rng)), th = 0.5 * kPi * u(rng);
      w = {rho * std::sqrt(r1) * std::cos(th), rho * std::sqrt(1 - r1) * std::sin(th)};
    } while (w.lambda < 1e-3 || w.mu < 1e-3);
    const auto g = surrogate_gradient(r1, w);
    // Fourth-order central differences.
    auto d = [&](const std::function<double(double)>& f, double x) {
      const double h = 1e-4;
      return (8 * (f(x + h) - f(x - h)) - (f(x + 2 * h) - f(x - 2 * h))) / (12 * h);
    };
    const double fl = d([&](double x) { return surrogate_value(r1, {x, w.mu}); }, w.lambda);
    const double fm = d([&](double x) { return surrogate_value(r1, {w.lambda, x}); }, w.mu);
    // Relative to the gradient norm, floored at 1e-2 near critical points.
    const double rel = std::hypot(g[0] - fl, g[1] - fm) / std::max(std::hypot(fl, fm), 1e-2);
    worst = std::max(worst, rel);
  }
  return {worst <= 1e-6, "max relative error over 500 points " + num(worst, 2)};
}

Outcome ac8() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 1);
  auto random_torus = [&] {
    const double a = 0.5 * u(rng);
    return TorusParams{a, std::sqrt(1 - a * a) + 2 * u(rng)};
  };
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const TorusParams t1 = random_torus(), t2 = random_torus();
    if (i % 2 == 0) {
      const Immersion tmpl = Immersion::phi(t1, 1 + 2 * u(rng));
      worst = std::max(worst, energy_ratio_residual(tmpl, ConformalPoint(random_ball(rng, 4, 0.7)), t1, t2));
    } else {
      const TorusParams base = random_torus();
      const Immersion tmpl = Immersion::psi_ab(base.a, base.b);
      worst = std::max(worst, energy_ratio_residual(tmpl, ConformalPoint(random_ball(rng, 6, 0.7)), t1, t2));
    }
  }
  return {worst <= 1e-8, "max residual over 50 triples " + num(worst, 2)};
}

Outcome ac9() {
  struct Case {
    double a, b, expected, tol;
  };
  const Case cases[] = {{0, 2, 8 * kPi2 * std::sqrt(5.0) / (6 * std::sqrt(3.0)), 1e-3},
                        {0, 1, 2 * kPi2, 1e-3},
                        {0.5, kRoot3_2, 4 * kPi2 * kRoot3_2 / 1.5, 1e-4}};
  Outcome o;
  for (const auto& c : cases) {
    const auto t0 = Clock::now();
    const auto s = sup_area_s5(c.a, c.b);
    const double t = seconds_since(t0);
    const double err = std::abs(s.value - c.expected);
    o.pass = o.pass && err <= c.tol && t < 300;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("(") + num(c.a, 3) + ", " + num(c.b, 4) +
                ") -> " + num(s.value, 8) + " err " + num(err, 2) + " in " + num(t, 2) + " s";
  }
  return o;
}

Outcome ac10() {
  const auto s = bound_sweep({0.0, 0.5, 5.0, 0.01});
  double worst_cross = 0;
  for (const auto& r : s.rows) {
    worst_cross = std::max(worst_cross, std::abs(r.corollary - r.corollary_numeric) / r.corollary);
  }
  const bool ok = !s.violation && s.max_arc_gap <= 1e-10 && s.min_strict_gap >= 1e-4 * kPi2 && worst_cross <= 1e-9;
  return {ok, std::to_string(s.rows.size()) + " grid points, " + (s.violation ? "violation" : "no violation") +
                  ", arc gap " + num(s.max_arc_gap, 2) + ", min strict gap " + num(s.min_strict_gap, 4) +
                  " (needs >= " + num(1e-4 * kPi2, 3) + "), analytic vs numeric " + num(worst_cross, 2)};
}

Outcome ac11() {
  const auto g = global_sup_scan(0.005, 5);
  const double err = std::abs(g.value - kSharp);
  const double dist = std::hypot(g.a - 0.5, g.b - 0.8660);
  return {err <= 0.05 && dist <= 0.01,
          "max " + num(g.value, 8) + " at (" + num(g.a, 4) + ", " + num(g.b, 6) + "), |value - 8pi^2/sqrt3| " +
              num(err, 2)};
}

Outcome ac12() {
  const auto t0 = Clock::now();
  const TorusParams eq{0.5, kRoot3_2};
  const auto flat = conformal_lambda1(eq, ConformalFactor::constant(1), 16);
  const double flat_l1 = spectrum(eq, 1)[1].eigenvalue;
  const double flat_err = std::abs(flat.lambda1 - flat_l1) / flat_l1;

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0, 1);
  double worst_margin = INFINITY;
  int converged = 0;
  for (int i = 0; i < 20; ++i) {
    const double a = 0.5 * u(rng);
    const double b = std::sqrt(1 - a * a) + 1.5 * u(rng);
    std::array<double, 4> c{}, ph{};
    for (int k = 0; k < 4; ++k) {
      c[k] = 0.25 * u(rng);
      ph[k] = 2 * kPi * u(rng);
    }
    auto omega = [=](double x, double y) {
      const double s = x - a * y / b, t = y / b;
      return std::exp(c[0] * std::cos(2 * kPi * s + ph[0]) + c[1] * std::cos(2 * kPi * t + ph[1]) +
                      c[2] * std::cos(2 * kPi * (s + t) + ph[2]) + c[3] * std::cos(2 * kPi * (2 * s - t) + ph[3]));
    };
    const auto g = conformal_lambda1({a, b}, ConformalFactor::analytic(omega), 16);
    converged += g.converged;
    worst_margin = std::min(worst_margin, corollary_value(a, b) + 1e-3 - g.product());
  }
  const double t = seconds_since(t0);
  return {flat_err <= 1e-8 && worst_margin >= 0 && t < 120,
          "flat rel err " + num(flat_err, 2) + ", min (bound + 1e-3 - lambda1*A) " + num(worst_margin, 4) + ", " +
              std::to_string(converged) + "/20 converged, " + num(t, 3) + " s"};
}

Outcome ac13() {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0, 1);
  double min_w = INFINITY;
  for (int i = 0; i < 50; ++i) {
    const double a = 0.5 * u(rng);
    const double b_lo = std::sqrt(1.1 - a * a);
    const double b = b_lo + (4 - b_lo) * u(rng);
    const double b0 = 1 + 3 * u(rng);
    min_w = std::min(min_w, strictness_witness(a, b, ConformalPoint(random_ball(rng, 4, 0.8)), b0, 32));
  }
  double arc_coeff = 0, arc_w = 0;
  for (double a = 0; a <= 0.5 + 1e-12; a += 0.05) {
    const double b = std::sqrt(1 - a * a);
    arc_coeff = std::max(arc_coeff, std::abs(obstruction_coefficient(a, b)));
    const double b0 = corollary_bound(a, b).b0_opt;  // sqrt2 on the arc, so gamma = 0
    arc_w = std::max(arc_w, strictness_witness(a, b, ConformalPoint::origin(4), b0, 32));
  }
  return {min_w > 1e-3 && arc_coeff <= 1e-15 && arc_w <= 1e-9,
          "min witness over 50 samples " + num(min_w, 4) + "; on the arc coefficient " + num(arc_coeff, 2) +
              ", witness " + num(arc_w, 2)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"equilateral maximum", ac1},
      {"S^3 supremum, origin branch", [] { return sup_s3_case({1.0, 1.2, std::sqrt(2.0)}, true, 30); }},
      {"S^3 supremum, axis branch", [] { return sup_s3_case({1.5, 2.0, 3.0}, false, 60); }},
      {"area functional vs closed form", ac4},
      {"Case 1 polynomial", ac5},
      {"Case 2 certification", ac6},
      {"surrogate gradient", ac7},
      {"energy-ratio identity", ac8},
      {"S^5 supremum", ac9},
      {"bound dominance", ac10},
      {"global scan", ac11},
      {"Galerkin validation", ac12},
      {"strictness witness", ac13},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("AC%02zu %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
