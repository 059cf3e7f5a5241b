#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "torusbound/error.hpp"
#include "torusbound/optim.hpp"

namespace torusbound {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRhoCap = 1.0 - 1e-6;

using Vec = std::vector<double>;
using Objective = std::function<double(const Vec&)>;

struct Box {
  Vec lo;
  Vec hi;

  Vec clamp(Vec x) const {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
    return x;
  }
};

struct Ascent {
  Vec x;
  double value;
  int iterations;
};

/// Projected gradient ascent with central-difference gradients and an
/// Armijo backtracking step on the box.
Ascent projected_ascent(const Objective& f, const Box& box, Vec x, int max_iter) {
  const std::size_t n = x.size();
  x = box.clamp(std::move(x));
  double fx = f(x);
  double step = 1e-2;
  int it = 0;
  for (; it < max_iter; ++it) {
    Vec grad(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double h = 1e-7 * std::max(1.0, std::abs(x[i]));
      Vec xp = x;
      Vec xm = x;
      xp[i] = std::min(x[i] + h, box.hi[i]);
      xm[i] = std::max(x[i] - h, box.lo[i]);
      if (xp[i] == xm[i]) continue;
      grad[i] = (f(xp) - f(xm)) / (xp[i] - xm[i]);
    }
    bool moved = false;
    double t = std::min(step * 4.0, 1.0);
    while (t > 1e-14) {
      Vec trial(n);
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + t * grad[i];
      trial = box.clamp(std::move(trial));
      double expected = 0.0;
      for (std::size_t i = 0; i < n; ++i) expected += grad[i] * (trial[i] - x[i]);
      const double ft = f(trial);
      if (expected > 0.0 && ft >= fx + 1e-4 * expected) {
        const double gain = ft - fx;
        x = std::move(trial);
        fx = ft;
        step = t;
        moved = gain > 1e-15 * std::max(1.0, std::abs(fx));
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
  }
  return {x, fx, it};
}

struct Candidate {
  Vec argmax;
  double value;
  int stratum;  // 0 origin, 1 axis, 2 interior
};

/// Largest value; values within a few ulps of it count as ties, broken by
/// the lower-dimensional stratum and then the lexicographically smaller argmax.
Candidate pick_best(std::vector<Candidate> cands) {
  double best = -INFINITY;
  for (const auto& c : cands) best = std::max(best, c.value);
  const double tie = 1e-14 * std::abs(best);
  Candidate* chosen = nullptr;
  for (auto& c : cands) {
    if (c.value < best - tie) continue;
    if (!chosen || c.stratum < chosen->stratum ||
        (c.stratum == chosen->stratum && c.argmax < chosen->argmax)) {
      chosen = &c;
    }
  }
  return *chosen;
}

int stratum_of(const Vec& x) {
  int nonzero = 0;
  for (double v : x) nonzero += v != 0.0 ? 1 : 0;
  return std::min(nonzero, 2);
}

}  // namespace

std::string_view to_string(SupBranch branch) {
  switch (branch) {
    case SupBranch::origin:
      return "origin";
    case SupBranch::boundary_axis_lambda:
      return "boundary-axis-lambda";
    case SupBranch::boundary_axis_mu:
      return "boundary-axis-mu";
    case SupBranch::interior:
      return "interior";
  }
  return "unknown";
}

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  // Endpoints are candidates too: the maximum of a monotone f sits there.
  double best = 0.5 * (a + b);
  double fbest = f(best);
  for (double e : {lo, hi}) {
    const double fe = f(e);
    if (fe > fbest) {
      best = e;
      fbest = fe;
    }
  }
  return best;
}

double expected_sup_s3(double b) {
  if (b <= std::sqrt(2.0)) return 4.0 * kPi * kPi * b / (1.0 + b * b);
  return 8.0 * kPi * kPi * std::sqrt(b * b + 1.0) / (3.0 * std::sqrt(3.0) * b);
}

double expected_sup_s5(double a, double b) {
  const double c = b * b + a * a - a;
  if ((a - 0.5) * (a - 0.5) + b * b > 2.25) {
    return 8.0 * kPi * kPi * b * std::sqrt(c + 1.0) / (3.0 * std::sqrt(3.0) * c);
  }
  return 4.0 * kPi * kPi * b / (1.0 + c);
}

SupResult sup_area_s3(double b, double tol) {
  if (!(b >= 1.0) || !std::isfinite(b)) throw std::invalid_argument("sup_area_s3: need b >= 1");
  const double r1 = r1_of(b);
  const double sr1 = std::sqrt(r1);
  const double sr2 = std::sqrt(1.0 - r1);
  auto at = [&](double l, double m) { return area_closed_form(b, {l, m}); };
  // Elliptic polar coordinates (rho, theta) map the box onto Omega.
  auto polar = [&](const Vec& x) {
    return Vec{x[0] * sr1 * std::cos(x[1]), x[0] * sr2 * std::sin(x[1])};
  };
  const Objective objective = [&](const Vec& x) {
    const Vec lm = polar(x);
    return at(std::max(lm[0], 0.0), std::max(lm[1], 0.0));
  };
  const Box box{{0.0, 0.0}, {kRhoCap, 0.5 * kPi}};

  constexpr int kGrid = 64;
  struct Seed {
    double value;
    Vec x;
  };
  std::vector<Seed> seeds;
  double grid_max = -INFINITY;
  Vec grid_arg;
  for (int i = 0; i < kGrid; ++i) {
    const double rho = kRhoCap * i / (kGrid - 1);
    for (int j = 0; j < kGrid; ++j) {
      const double th = 0.5 * kPi * j / (kGrid - 1);
      const Vec x{rho, th};
      const double v = objective(x);
      seeds.push_back({v, x});
      if (v > grid_max) {
        grid_max = v;
        grid_arg = polar(x);
      }
    }
  }
  std::partial_sort(seeds.begin(), seeds.begin() + 8, seeds.end(),
                    [](const Seed& p, const Seed& q) { return p.value > q.value; });

  std::vector<Candidate> cands;
  cands.push_back({{0.0, 0.0}, at(0.0, 0.0), 0});
  int iterations = 0;
  for (int k = 0; k < 8; ++k) {
    const auto run = projected_ascent(objective, box, seeds[k].x, 500);
    iterations += run.iterations;
    Vec lm = polar(run.x);
    lm[0] = std::max(lm[0], 0.0);
    lm[1] = run.x[1] == 0.0 ? 0.0 : std::max(lm[1], 0.0);
    if (run.x[1] == 0.5 * kPi) lm[0] = 0.0;
    cands.push_back({lm, at(lm[0], lm[1]), stratum_of(lm)});
  }
  const double lcap = kRhoCap * sr1;
  const double mcap = kRhoCap * sr2;
  const double lbest = golden_section_max([&](double l) { return at(l, 0.0); }, 0.0, lcap, 1e-12);
  const double mbest = golden_section_max([&](double m) { return at(0.0, m); }, 0.0, mcap, 1e-12);
  cands.push_back({{lbest, 0.0}, at(lbest, 0.0), stratum_of({lbest, 0.0})});
  cands.push_back({{0.0, mbest}, at(0.0, mbest), stratum_of({0.0, mbest})});

  const Candidate best = pick_best(std::move(cands));
  SupResult out;
  out.value = best.value;
  out.argmax = best.argmax;
  out.iterations = iterations;
  if (best.argmax[0] == 0.0 && best.argmax[1] == 0.0) {
    out.branch = SupBranch::origin;
  } else if (best.argmax[1] == 0.0) {
    out.branch = SupBranch::boundary_axis_lambda;
  } else if (best.argmax[0] == 0.0) {
    out.branch = SupBranch::boundary_axis_mu;
  } else {
    out.branch = SupBranch::interior;
  }

  // Certification on a finer grid than the seeding one, plus both axes.
  double gap = grid_max - out.value;
  constexpr int kVerify = 200;
  for (int i = 0; i < kVerify; ++i) {
    const double rho = kRhoCap * i / (kVerify - 1);
    for (int j = 0; j < kVerify; ++j) {
      gap = std::max(gap, objective({rho, 0.5 * kPi * j / (kVerify - 1)}) - out.value);
    }
    gap = std::max(gap, at(lcap * i / (kVerify - 1), 0.0) - out.value);
    gap = std::max(gap, at(0.0, mcap * i / (kVerify - 1)) - out.value);
  }
  out.certified_gap = gap;
  if (grid_max > out.value + tol) {
    std::ostringstream msg;
    msg << "sup_area_s3: grid maximum " << grid_max << " at (" << grid_arg[0] << ", "
        << grid_arg[1] << ") exceeds refined maximum " << out.value;
    throw NumericalError(msg.str());
  }
  return out;
}

// ---------------------------------------------------------------------------
// S^5

double area_s5_reduced(double a, double b, const std::array<double, 3>& lambdas, double chi,
                       const QuadratureSpec& spec) {
  const Immersion psi = Immersion::psi_ab(a, b);
  double slack = 1.0;
  for (int i = 0; i < 3; ++i) {
    const double amp = psi.components()[i].amplitude;
    if (lambdas[i] < 0.0) throw std::invalid_argument("area_s5_reduced: radii must be >= 0");
    if (amp == 0.0) {
      if (lambdas[i] != 0.0) {
        throw std::invalid_argument("area_s5_reduced: nonzero radius on a vanishing component");
      }
      continue;
    }
    slack -= (lambdas[i] / amp) * (lambdas[i] / amp);
  }
  if (slack < 0.0) throw std::invalid_argument("area_s5_reduced: point outside the ball");
  if (lambdas[0] + lambdas[1] + lambdas[2] > 1.0 - kDivergenceMargin) {
    throw std::invalid_argument("area_s5_reduced: too close to the divergence boundary");
  }
  // Mode (1,0) has phase ut, mode (0,1) phase us, mode (1,1) phase us + ut.
  const double integral = quad2d_periodic(
      [&](double us, double ut) {
        const double d = 1.0 - lambdas[0] * std::cos(ut) - lambdas[1] * std::cos(us) -
                         lambdas[2] * std::cos(us + ut - chi);
        return 1.0 / (d * d);
      },
      spec);
  return 0.5 * psi.gradient_norm2() * b / (4.0 * kPi * kPi) * slack * integral;
}

SupResult sup_area_s5(double a, double b, double tol, const QuadratureSpec& spec) {
  if (!in_fundamental_domain(a, b)) {
    throw std::invalid_argument("sup_area_s5: (a, b) must lie in the fundamental domain");
  }
  const Immersion psi = Immersion::psi_ab(a, b);
  std::array<double, 3> amp{};
  for (int i = 0; i < 3; ++i) amp[i] = psi.components()[i].amplitude;
  const bool third = amp[2] > 0.0;

  // x = (rho, theta1, theta2, chi): lambdas = rho * amp * direction on the
  // positive octant of the unit sphere.
  auto lambdas_of = [&](const Vec& x) {
    const double u1 = std::cos(x[1]);
    const double u2 = std::sin(x[1]) * (third ? std::cos(x[2]) : 1.0);
    const double u3 = third ? std::sin(x[1]) * std::sin(x[2]) : 0.0;
    return std::array<double, 3>{x[0] * amp[0] * u1, std::max(0.0, x[0] * amp[1] * u2),
                                 std::max(0.0, x[0] * amp[2] * u3)};
  };
  auto eval = [&](const Vec& x, const QuadratureSpec& q) {
    return area_s5_reduced(a, b, lambdas_of(x), third ? x[3] : 0.0, q);
  };
  const QuadratureSpec coarse{std::max(32, spec.nodes_per_axis / 2)};
  const Objective objective = [&](const Vec& x) { return eval(x, spec); };
  const Box box{{0.0, 0.0, 0.0, 0.0},
                {0.97, 0.5 * kPi, third ? 0.5 * kPi : 0.0, third ? 2.0 * kPi : 0.0}};

  struct Seed {
    double value;
    Vec x;
  };
  std::vector<Seed> seeds;
  const int n_rho = 10;
  const int n_t1 = 7;
  const int n_t2 = third ? 7 : 1;
  const int n_chi = third ? 8 : 1;
  for (int i = 1; i <= n_rho; ++i) {
    for (int j = 0; j < n_t1; ++j) {
      for (int k = 0; k < n_t2; ++k) {
        for (int c = 0; c < n_chi; ++c) {
          const Vec x{0.95 * i / n_rho, 0.5 * kPi * j / (n_t1 - 1),
                      n_t2 > 1 ? 0.5 * kPi * k / (n_t2 - 1) : 0.0, 2.0 * kPi * c / n_chi};
          seeds.push_back({eval(x, coarse), x});
        }
      }
    }
  }
  const std::size_t n_starts = std::min<std::size_t>(6, seeds.size());
  std::partial_sort(seeds.begin(), seeds.begin() + n_starts, seeds.end(),
                    [](const Seed& p, const Seed& q) { return p.value > q.value; });

  SupResult out;
  out.value = eval({0.0, 0.0, 0.0, 0.0}, spec);
  out.argmax = {0.0, 0.0, 0.0, 0.0};
  out.branch = SupBranch::origin;
  double seed_max = out.value;
  for (std::size_t s = 0; s < n_starts; ++s) {
    seed_max = std::max(seed_max, objective(seeds[s].x));
    const auto run = projected_ascent(objective, box, seeds[s].x, 300);
    out.iterations += run.iterations;
    if (run.value > out.value + 1e-12 * std::abs(out.value)) {
      const auto l = lambdas_of(run.x);
      out.value = run.value;
      out.argmax = {l[0], l[1], l[2], third ? run.x[3] : 0.0};
      out.branch = SupBranch::interior;
      if (l[1] < 1e-7 && l[2] < 1e-7) out.branch = SupBranch::boundary_axis_lambda;
      if (l[0] < 1e-7 && l[2] < 1e-7) out.branch = SupBranch::boundary_axis_mu;
    }
  }

  // Confirm the reported value at twice the quadrature order.
  const double check = out.argmax[0] + out.argmax[1] + out.argmax[2] == 0.0
                           ? out.value
                           : area_s5_reduced(a, b, {out.argmax[0], out.argmax[1], out.argmax[2]},
                                             out.argmax[3], spec.doubled());
  if (std::abs(check - out.value) > tol) {
    throw NumericalError("sup_area_s5: quadrature not converged at the maximiser");
  }
  out.certified_gap = seed_max - out.value;
  if (out.certified_gap > tol) {
    throw NumericalError("sup_area_s5: seed grid exceeds refined maximum");
  }
  return out;
}

}  // namespace torusbound
