#include "tsrk/solver.hpp"

#include <algorithm>
#include <cmath>

#include "tsrk/errors.hpp"
#include "tsrk/order_conditions.hpp"

namespace tsrk {

namespace {

/// Stage i's view of the solution: its own polynomial above t_a, the
/// trajectory below.
class StageSplice : public HistorySource {
 public:
  StageSplice(const Trajectory& tr, const FloatTableau& tab, std::size_t stage, double t_a, double h,
              const StepInputs& in, const std::vector<Vec>& k_curr)
      : tr_(tr), tab_(tab), stage_(stage), t_a_(t_a), h_(h), in_(in), k_curr_(k_curr) {}

  Vec value_at(double s) const override {
    if (s <= t_a_) return tr_.value_at(s);
    const double alpha = std::min((s - t_a_) / h_, tab_.c[stage_]);
    return combine_row(tab_, stage_, alpha, h_, in_, k_curr_, stage_);
  }

 private:
  const Trajectory& tr_;
  const FloatTableau& tab_;
  std::size_t stage_;
  double t_a_;
  double h_;
  const StepInputs& in_;
  const std::vector<Vec>& k_curr_;
};

void check_vector(const Vec& k, std::size_t dim, double t) {
  if (k.size() != dim) throw SolverError("right-hand side returned wrong dimension at t = " + std::to_string(t));
  for (double x : k) {
    if (!std::isfinite(x)) throw SolverError("non-finite derivative at t = " + std::to_string(t));
  }
}

/// Stage derivatives of one step on [t_a, t_a + h].
std::vector<Vec> stage_derivatives(const FloatTableau& tab, const RfdeProblem& p, const Trajectory& tr, double t_a,
                                   double h, const StepInputs& in) {
  if (!tab.is_explicit) throw SolverError("tableau '" + tab.name + "' is implicit; only explicit stepping is supported");
  std::vector<Vec> k_curr;
  k_curr.reserve(tab.stages);
  for (std::size_t i = 0; i < tab.stages; ++i) {
    StageSplice source(tr, tab, i, t_a, h, in, k_curr);
    const double ti = t_a + tab.c[i] * h;
    Vec k = p.rhs(ti, HistoryView(source, ti, p.r));
    check_vector(k, p.dim, ti);
    k_curr.push_back(std::move(k));
  }
  return k_curr;
}

void append_step(const std::shared_ptr<const FloatTableau>& tab, const RfdeProblem& p, Trajectory& tr, double t_a,
                 double t_b, const StepInputs& in) {
  auto k_curr = stage_derivatives(*tab, p, tr, t_a, t_b - t_a, in);
  Segment seg{t_a, t_b, tab, in, std::move(k_curr)};
  const Vec end = seg.eval(1.0);
  for (double x : end) {
    if (!std::isfinite(x)) throw SolverError("non-finite solution at t = " + std::to_string(t_b));
  }
  tr.append(std::move(seg));
}

/// Inputs that make a one-step tableau start from the trajectory's value at t.
StepInputs one_step_inputs(const FloatTableau& starter, const Trajectory& tr, double t) {
  StepInputs in;
  in.y_node = tr.value_at(t);
  in.y_back = in.y_node;
  in.k_prev.assign(starter.stages, Vec(tr.dim(), 0.0));
  return in;
}

std::vector<Vec> derivatives_at_stage_times(const FloatTableau& tab, const RfdeProblem& p, const HistorySource& src,
                                            double t_a, double h) {
  std::vector<Vec> out;
  for (std::size_t j = 0; j < tab.stages; ++j) {
    const double tj = t_a + tab.c[j] * h;
    Vec k = p.rhs(tj, HistoryView(src, tj, p.r));
    check_vector(k, p.dim, tj);
    out.push_back(std::move(k));
  }
  return out;
}

}  // namespace

StepState step(const std::shared_ptr<const FloatTableau>& tab, const RfdeProblem& p, const StepState& st, double h,
               Trajectory& tr) {
  if (!(h > 0.0)) throw SolverError("step size must be positive");
  const double t_a = p.t0 + static_cast<double>(st.n - 1) * h;
  const double t_b = p.t0 + static_cast<double>(st.n) * h;
  append_step(tab, p, tr, t_a, t_b, st.in);
  const Segment& seg = tr.segment(tr.segment_count() - 1);
  return StepState{st.n + 1, StepInputs{st.in.y_node, seg.eval(1.0), seg.k_curr}};
}

StepState start_exact(const FloatTableau& tab, const RfdeProblem& p, double h) {
  if (!p.exact) throw SolverError("exact start requires an exact solution for problem '" + p.name + "'");
  const ExactHistory history(*p.exact);
  const double t_back = p.t0 - h;
  StepState st;
  st.n = 1;
  st.in.y_back = p.exact->value(t_back);
  st.in.y_node = p.phi(p.t0);
  st.in.k_prev = derivatives_at_stage_times(tab, p, history, t_back, h);
  return st;
}

StepState start_substep(const FloatTableau& tab, const std::shared_ptr<const FloatTableau>& starter,
                        const RfdeProblem& p, std::size_t n, double h, int m, Trajectory& tr) {
  if (m < 1) throw SolverError("substep count must be >= 1");
  if (!starter->is_one_step || !starter->is_explicit) {
    throw SolverError("starter '" + starter->name + "' must be an explicit one-step method");
  }
  const double t_a = p.t0 + static_cast<double>(n - 1) * h;
  const double t_b = p.t0 + static_cast<double>(n) * h;
  for (int k = 0; k < m; ++k) {
    const double sa = k == 0 ? t_a : t_a + (t_b - t_a) * k / m;
    const double sb = k + 1 == m ? t_b : t_a + (t_b - t_a) * (k + 1) / m;
    append_step(starter, p, tr, sa, sb, one_step_inputs(*starter, tr, sa));
  }
  StepState st;
  st.n = n + 1;
  st.in.y_back = tr.value_at(t_a);
  st.in.y_node = tr.eval_segment(tr.segment_count() - 1, 1.0);
  st.in.k_prev = derivatives_at_stage_times(tab, p, tr, t_a, h);
  return st;
}

int default_substeps(std::size_t N, int p, int q_s) {
  if (q_s <= 0) throw SolverError("starter order must be positive");
  if (p <= q_s) return 1;
  const double m = std::pow(static_cast<double>(N), static_cast<double>(p - q_s) / q_s);
  return std::max(1, static_cast<int>(std::ceil(m - 1e-9)));
}

Trajectory integrate(const TsrkTableau& t, const RfdeProblem& p, std::size_t N, const StartOptions& start) {
  if (N < 2) throw SolverError("integrate needs N >= 2");
  if (!(p.T > p.t0)) throw SolverError("empty time interval");
  const auto tab = std::make_shared<const FloatTableau>(t);
  if (!tab->is_explicit) throw SolverError("tableau '" + t.name + "' is implicit; only explicit stepping is supported");
  const TsrkTableau starter_exact = start.starter ? *start.starter : build_rk4_embedded();
  const auto starter = std::make_shared<const FloatTableau>(starter_exact);
  const double h = (p.T - p.t0) / static_cast<double>(N);

  int m = start.substeps;
  if (m == 0) {
    m = default_substeps(N, uniform_order(t).order, uniform_order(starter_exact).order);
  }

  Trajectory tr(p.t0, p.r, p.dim, p.phi);
  tr.start.kind = start.kind;
  tr.start.substeps = m;
  tr.start.starter = starter->name;
  tr.add_mesh_node(p.t0);

  std::vector<bool> restart(N + 1, false);
  for (double bp : p.breaking_points) {
    if (bp <= p.t0 || bp >= p.T) continue;
    const double k = (bp - p.t0) / h;
    const double nearest = std::round(k);
    if (std::abs(k - nearest) <= 1e-9 && start.restart_at_breaking_points) {
      restart[static_cast<std::size_t>(nearest) + 1] = true;  // step whose start node is bp
    } else {
      tr.start.unaligned_breaking_points.push_back(bp);
    }
  }

  StepState st;
  if (start.kind == StartKind::Exact) {
    st = start_exact(*tab, p, h);
  } else {
    st = start_substep(*tab, starter, p, 1, h, m, tr);
    tr.add_mesh_node(p.t0 + h);
  }
  while (st.n <= N) {
    if (restart[st.n]) {
      tr.start.restarts.push_back(p.t0 + static_cast<double>(st.n - 1) * h);
      st = start_substep(*tab, starter, p, st.n, h, m, tr);
    } else {
      st = step(tab, p, st, h, tr);
    }
    tr.add_mesh_node(p.t0 + static_cast<double>(st.n - 1) * h);
  }
  return tr;
}

Trajectory integrate_one_step(const TsrkTableau& t, const RfdeProblem& p, std::vector<double> knots, double h_max) {
  if (!is_one_step(t)) throw SolverError("integrate_one_step needs a one-step tableau");
  if (!(h_max > 0.0)) throw SolverError("h_max must be positive");
  const auto tab = std::make_shared<const FloatTableau>(t);
  knots.push_back(p.t0);
  knots.push_back(p.T);
  std::erase_if(knots, [&](double x) { return x < p.t0 || x > p.T; });
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end(), [](double x, double y) { return std::abs(x - y) < 1e-14; }),
              knots.end());

  Trajectory tr(p.t0, p.r, p.dim, p.phi);
  tr.start.kind = StartKind::Substep;
  tr.start.starter = tab->name;
  tr.add_mesh_node(p.t0);
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double a = knots[k];
    const double b = knots[k + 1];
    const auto steps = static_cast<std::size_t>(std::ceil((b - a) / h_max - 1e-9));
    for (std::size_t i = 0; i < steps; ++i) {
      const double sa = i == 0 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(steps);
      const double sb = i + 1 == steps ? b : a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(steps);
      append_step(tab, p, tr, sa, sb, one_step_inputs(*tab, tr, sa));
      tr.add_mesh_node(sb);
    }
  }
  return tr;
}

std::vector<RowResidual> local_residual(const TsrkTableau& t, const RfdeProblem& p, std::size_t n, double h,
                                        const std::vector<double>& fractions, unsigned order_p) {
  if (!p.exact) throw SolverError("local residual needs an exact solution");
  if (order_p < 1) throw SolverError("local residual needs order p >= 1");
  if (p.exact->max_derivative + 1 < order_p) {
    throw SolverError("exact derivatives up to order " + std::to_string(order_p - 1) + " required");
  }
  if (n < 2) throw SolverError("local residual needs n >= 2");
  const FloatTableau tab(t);
  const ExactSolution& ex = *p.exact;
  const ExactHistory history(ex);
  const double t_prev = p.t0 + static_cast<double>(n - 1) * h;
  const double t_back = t_prev - h;
  const auto f_prev = derivatives_at_stage_times(tab, p, history, t_back, h);
  const auto f_curr = derivatives_at_stage_times(tab, p, history, t_prev, h);
  const auto y_back = ex.derivative(t_back, 0);
  const auto y_prev = ex.derivative(t_prev, 0);
  std::vector<Vec> derivs;  // derivs[k] = y^(k)(t_prev)
  for (unsigned k = 0; k < order_p; ++k) derivs.push_back(ex.deriv(t_prev, k));

  const std::size_t s = tab.stages;
  std::vector<RowResidual> out;
  for (std::size_t row = 0; row <= s; ++row) {
    std::vector<FloatPolynomial> gammas;
    for (unsigned k = 1; k < order_p; ++k) gammas.push_back({gamma(t, row, k).lowered()});
    RowResidual rr;
    rr.row = row;
    const double c_row = tab.row_c(row);
    for (double frac : fractions) {
      const double alpha = frac * c_row;
      const auto z = ex.derivative(static_cast<long double>(t_prev) + static_cast<long double>(alpha) * h, 0);
      const long double ua = tab.row_u(row)(alpha);
      Vec res(p.dim), pred(p.dim, 0.0);
      for (std::size_t d = 0; d < p.dim; ++d) {
        long double model = (1.0L - ua) * y_back[d] + ua * y_prev[d];
        long double inc = 0.0L;
        for (std::size_t j = 0; j < s; ++j) {
          inc += static_cast<long double>(tab.row_atilde(row, j)(alpha)) * f_prev[j][d];
          inc += static_cast<long double>(tab.row_a(row, j)(alpha)) * f_curr[j][d];
        }
        model += static_cast<long double>(h) * inc;
        res[d] = static_cast<double>(z[d] - model);
        double hk = 1.0;
        for (unsigned k = 1; k < order_p; ++k) {
          hk *= h;
          pred[d] -= gammas[k - 1](alpha) * derivs[k][d] * hk;
        }
      }
      rr.alphas.push_back(alpha);
      rr.residual.push_back(std::move(res));
      rr.prediction.push_back(std::move(pred));
    }
    out.push_back(std::move(rr));
  }
  return out;
}

}  // namespace tsrk
