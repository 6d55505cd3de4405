// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tsrk/harness.hpp"
#include "tsrk/order_conditions.hpp"
#include "tsrk/problems.hpp"
#include "tsrk/solver.hpp"
#include "tsrk/tableau.hpp"
#include "tsrk/tableau_io.hpp"

using namespace tsrk;
using P = CoeffPolynomial;
using S = ExactScalar;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s criterion %d: %s (%.3f s)%s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs,
              o.detail.str().c_str());
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

P random_vanishing(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-12, 12), den(1, 9);
  std::uniform_int_distribution<int> deg(0, 4);
  std::vector<S> c{S(0)};
  for (int k = 0, d = deg(rng); k <= d; ++k) c.push_back(S(num(rng), den(rng)));
  return P(c);
}

TsrkTableau random_embedded(std::mt19937& rng) {
  std::uniform_int_distribution<int> stages(2, 5);
  std::uniform_int_distribution<long> cnum(1, 9), cden(1, 9);
  const std::size_t s = static_cast<std::size_t>(stages(rng));
  std::vector<S> c{S(0)};
  for (std::size_t i = 1; i < s; ++i) c.push_back(S(cnum(rng), cden(rng)));
  const P x = P::x();
  PolyMatrix a(s, PolyRow(s));
  for (std::size_t i = 1; i < s; ++i) {
    P sum;
    for (std::size_t j = 1; j < i; ++j) {
      a[i][j] = random_vanishing(rng);
      sum += a[i][j];
    }
    a[i][0] = x - sum;
  }
  PolyRow b(s);
  P sum;
  for (std::size_t j = 1; j < s; ++j) {
    b[j] = random_vanishing(rng);
    sum += b[j];
  }
  b[0] = x - sum;
  return embed_one_step(c, a, b, "random-embedded");
}

/// Gauss-Jordan elimination over the exact field.
std::vector<S> solve_exact(std::vector<std::vector<S>> m, std::vector<S> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (m[piv][col].is_zero()) ++piv;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      const S f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t r = 0; r < n; ++r) rhs[r] /= m[r][r];
  return rhs;
}

/// Node and stage-splice continuity of a finished trajectory, bit for bit.
bool continuity_exact(const Trajectory& tr) {
  for (std::size_t i = 0; i < tr.segment_count(); ++i) {
    const auto& seg = tr.segment(i);
    const Vec entry = i == 0 ? tr.eval(tr.t0()) : tr.segment(i - 1).eval(1.0);
    if (seg.eval(0.0) != entry || seg.in.y_node != entry) return false;
    for (std::size_t row = 0; row < seg.tab->stages; ++row) {
      if (combine_row(*seg.tab, row, 0.0, seg.h(), seg.in, seg.k_curr, row) != entry) return false;
    }
  }
  return true;
}

std::vector<Trajectory> acceptance_runs;

double hand_linear_delay(double t) { return t <= 1.0 ? 1.0 - t : 1.0 - t + (t - 1.0) * (t - 1.0) / 2.0; }

}  // namespace

int main() {
  report(1, "order-four family exact order conditions", [](Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
      const auto t = build_order4_family(random_vanishing(rng), random_vanishing(rng));
      for (unsigned k = 1; k <= 4; ++k) o.require(gamma(t, 2, k).is_zero(), "Gamma_k, k <= 4");
      for (unsigned k = 1; k <= 3; ++k) o.require(gamma(t, 1, k).is_zero(), "Gamma_2k, k <= 3");
      o.require(gamma_bracket(t, 2, 5)(S(1)) == S(4, 15), "Gamma_5(1) with free parameters");
    }
    const auto probe = discrete_order_probe(build_order4_family(), 5);
    o.require(probe.bracket == S(4, 15), "Gamma_5(1) = 4/15");
    const double secs = seconds_since(t0);
    o.require(secs < 1.0, "runtime < 1 s");
    o.detail << " Gamma_5(1) bracket " << probe.bracket.to_string() << ", normalized " << probe.value.to_string();
  });

  report(2, "order-five method exact order conditions", [](Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto t = build_order5_method();
    for (unsigned k = 1; k <= 5; ++k) o.require(gamma(t, 2, k).is_zero(), "Gamma_k, k <= 5");
    for (unsigned k = 1; k <= 4; ++k) o.require(gamma(t, 1, k).is_zero(), "Gamma_2k, k <= 4");
    o.require(gamma(t, 1, 5)(S(1)) == S(0), "Gamma_25(1) = 0");
    const S r41 = S::sqrt_of(41);
    const S expected = S(-16) * (S(17) - S(2) * r41) / (S(75) * (S(71) - S(11) * r41));
    const auto probe = discrete_order_probe(t, 6);
    o.require(probe.bracket == expected, "Gamma_6(1)");
    o.require(seconds_since(t0) < 1.0, "runtime < 1 s");
    o.detail << " Gamma_6(1) bracket " << probe.bracket.to_string() << " ~ " << probe.bracket.to_double();
  });

  report(3, "zero-stability verdicts and the order-five discrepancy", [](Outcome& o) {
    auto z = zero_stability(build_order4_family());
    o.require(z.zero_stable && z.v_at_1 == S(0), "order4 zero-stable with v(1) = 0");
    for (const char* name : {"rk4-embedded", "rk3-embedded", "euler-embedded"}) {
      z = zero_stability(builtin_tableau(name));
      o.require(z.zero_stable && z.v_at_1 == S(1), std::string(name) + " zero-stable with v(1) = 1");
    }
    const auto t5 = build_order5_method();
    z = zero_stability(t5);
    const S r41 = S::sqrt_of(41);
    o.require(!z.zero_stable, "order5 not zero-stable");
    o.require(z.v_at_1 == S(-76) - S(12) * r41, "order5 v(1) = -76 - 12 sqrt 41");

    // independent route: the four output-row conditions k = 2..5 at alpha = 1
    // in the unknowns (1 - v, btilde_1, btilde_2, b_2)
    const S c2 = (S(11) - r41) / S(10);
    std::vector<std::vector<S>> m;
    std::vector<S> rhs;
    for (unsigned k = 2; k <= 5; ++k) {
      const S sgn = k % 2 == 0 ? S(1) : S(-1);
      m.push_back({sgn / S(static_cast<long>(k)), -sgn, (c2 - S(1)).pow(k - 1), c2.pow(k - 1)});
      rhs.push_back(S(1, static_cast<long>(k)));
    }
    const auto x = solve_exact(m, rhs);
    const S v_solved = S(1) - x[0];
    o.require(v_solved == z.v_at_1, "linear solve agrees with the tableau");
    o.require(x[3] == t5.b[1](S(1)) && x[1] == t5.btilde[0](S(1)) && x[2] == t5.btilde[1](S(1)),
              "solved weights agree with the tableau");
    o.detail << " order5 v(1) = " << z.v_at_1.to_string() << " ~ " << z.v_at_1.to_double()
             << " (linear solve: " << v_solved.to_string() << ")";
  });

  report(4, "embedded one-step methods have uniform stage order one", [](Outcome& o) {
    std::mt19937 rng(77);
    std::vector<TsrkTableau> cases{build_rk4_embedded(), build_rk3_embedded()};
    for (int i = 0; i < 25; ++i) cases.push_back(random_embedded(rng));
    const P x = P::x();
    for (const auto& t : cases) {
      o.require(uniform_stage_order(t) == 1, "stage order 1");
      S fact(1);
      for (unsigned k = 2; k <= 4; ++k) {
        fact *= S(static_cast<long>(k));
        o.require(gamma(t, 1, k) == -x.pow(k) / fact, "Gamma_2k = -a^k / k!");
      }
    }
    o.detail << " " << cases.size() << " tableaux";
  });

  report(5, "empirical convergence of the order-four family; order-five residual exponent", [](Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto p = make_manufactured(ManufacturedKind::Sin, 1.0, 1.0, 0.0, 2.0);
    const auto t4 = build_order4_family();
    ConvergenceOptions opt;
    opt.ladder = {8, 16, 32, 64, 128};
    const auto study = convergence_study(t4, p, opt);
    for (std::size_t i = study.rows.size() - 2; i < study.rows.size(); ++i) {
      const auto& r = study.rows[i];
      o.require(!r.failed && r.discrete_order && r.uniform_order, "orders available");
      if (!r.discrete_order || !r.uniform_order) continue;
      o.require(*r.discrete_order >= 3.7 && *r.discrete_order <= 4.3, "discrete order in [3.7, 4.3]");
      o.require(*r.uniform_order >= 3.7 && *r.uniform_order <= 4.3, "uniform order in [3.7, 4.3]");
      o.detail << " N=" << r.N << " p_disc=" << *r.discrete_order << " p_unif=" << *r.uniform_order << ";";
    }
    for (std::size_t N : opt.ladder) acceptance_runs.push_back(integrate(t4, p, N));

    ResidualOptions ropt;
    ropt.steps = {1.0 / 32, 1.0 / 64, 1.0 / 128};
    ropt.t_star = 1.0;
    const auto res = residual_study(build_order5_method(), p, ropt);
    for (const auto& row : res.rows) {
      if (row.fitted_exponent) {
        o.require(*row.fitted_exponent >= 4.7, "order5 residual exponent >= 4.7");
        o.detail << " row " << row.row + 1 << " exponent " << *row.fitted_exponent << ";";
      } else {
        o.detail << " row " << row.row + 1 << " residual identically 0;";
      }
    }
    const double secs = seconds_since(t0);
    o.require(secs < 10.0, "runtime < 10 s");
  });

  report(6, "one-step tableaux annihilate previous-step inputs", [](Outcome& o) {
    const auto p = make_manufactured(ManufacturedKind::Sin, 1.0, 1.0, 0.0, 2.0);
    const std::size_t N = 32;
    const double h = (p.T - p.t0) / N;
    std::mt19937 rng(606);
    std::uniform_real_distribution<double> junk(-1e8, 1e8);
    for (const char* name : {"rk4-embedded", "rk3-embedded", "euler-embedded"}) {
      const auto t = builtin_tableau(name);
      const auto tab = std::make_shared<const FloatTableau>(t);
      const auto clean = integrate(t, p, N);
      Trajectory dirty(p.t0, p.r, p.dim, p.phi);
      StepState st = start_exact(*tab, p, h);
      while (st.n <= N) {
        st.in.y_back = {junk(rng)};
        for (auto& k : st.in.k_prev) k = {junk(rng)};
        st = step(tab, p, st, h, dirty);
      }
      double worst = 0.0;
      for (std::size_t n = 0; n < N; ++n) {
        worst = std::max(worst, std::abs(clean.segment(n).eval(1.0)[0] - dirty.segment(n).eval(1.0)[0]));
      }
      o.require(worst == 0.0, std::string(name) + " node difference exactly 0");
      o.detail << " " << name << " max diff " << worst << ";";
      acceptance_runs.push_back(clean);
    }
  });

  report(7, "linear delay problem against hand solution and method-of-steps reference", [](Outcome& o) {
    LinearDelayProblem lp;
    lp.a = 0.0;
    lp.b = -1.0;
    lp.tau = 1.0;
    lp.phi = [](double) { return 1.0; };
    lp.t0 = 0.0;
    lp.T = 2.0;
    const auto p = lp.to_problem();
    const std::size_t N = 64;
    const double h = (p.T - p.t0) / N;
    StartOptions start;
    start.kind = StartKind::Substep;
    const auto tr = integrate(build_order4_family(), p, N, start);
    const auto ref = reference_method_of_steps(lp, h / 64);
    double vs_hand = 0.0, vs_ref = 0.0;
    for (double t : tr.mesh()) {
      const double y = tr.eval(t)[0];
      vs_hand = std::max(vs_hand, std::abs(y - hand_linear_delay(t)));
      vs_ref = std::max(vs_ref, std::abs(y - ref.eval(t)[0]));
    }
    o.require(vs_hand <= 1e-6, "max node error vs hand solution <= 1e-6");
    o.require(vs_ref <= 1e-6, "max node error vs reference <= 1e-6");
    o.detail << " vs hand " << vs_hand << ", vs reference " << vs_ref << ", restarts at";
    for (double r : tr.start.restarts) o.detail << ' ' << r;
    acceptance_runs.push_back(tr);
  });

  report(8, "structural invariants", [](Outcome& o) {
    o.require(!acceptance_runs.empty(), "acceptance runs recorded");
    for (const auto& tr : acceptance_runs) o.require(continuity_exact(tr), "bit-exact node and splice continuity");
    for (const auto& name : builtin_tableau_names()) {
      const auto t = builtin_tableau(name);
      o.require(validate(t).empty(), name + " validates");
      o.require(tableau_from_text(tableau_to_text(t)) == t, name + " round-trips");
    }
    o.detail << " " << acceptance_runs.size() << " trajectories, " << builtin_tableau_names().size() << " built-ins";
  });

  return failures == 0 ? 0 : 1;
}
