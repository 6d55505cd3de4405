#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tsrk/problem.hpp"
#include "tsrk/tableau.hpp"
#include "tsrk/trajectory.hpp"

namespace tsrk {

/// State before step n on the mesh t_k = t0 + k h.
struct StepState {
  std::size_t n = 1;
  StepInputs in;
};

/// Advances one explicit two-step step from mesh node t_{n-1} to t_n and
/// appends the dense segment. Stage i's history is its own stage polynomial
/// on [t_{n-1}, t_{n-1} + c_i h] spliced onto the trajectory below.
StepState step(const std::shared_ptr<const FloatTableau>& tab, const RfdeProblem& p, const StepState& st, double h,
               Trajectory& tr);

/// Step-1 inputs taken from the exact solution: values at t0 - h and t0 and
/// derivatives f(t0 - h + c_j h, y) against the exact history.
StepState start_exact(const FloatTableau& tab, const RfdeProblem& p, double h);

/// Covers [t_{n-1}, t_n] with m substeps of a one-step starter, then
/// evaluates the main method's derivatives there. Returns the state for
/// step n + 1.
StepState start_substep(const FloatTableau& tab, const std::shared_ptr<const FloatTableau>& starter,
                        const RfdeProblem& p, std::size_t n, double h, int m, Trajectory& tr);

struct StartOptions {
  StartKind kind = StartKind::Exact;
  /// 0 selects ceil(N^((p - q_s) / q_s)).
  int substeps = 0;
  /// One-step starter; rk4-embedded when empty.
  std::optional<TsrkTableau> starter;
  /// Re-run the substep start at mesh nodes that are breaking points.
  bool restart_at_breaking_points = true;
};

/// Default substep count for a main method of order p and starter of order q_s.
int default_substeps(std::size_t N, int p, int q_s);

/// Integrates on the equispaced mesh with N steps.
Trajectory integrate(const TsrkTableau& t, const RfdeProblem& p, std::size_t N, const StartOptions& start = {});

/// Integrates a one-step tableau on a mesh that places nodes on every
/// interval boundary in `knots` (method of steps), with steps no longer than
/// h_max.
Trajectory integrate_one_step(const TsrkTableau& t, const RfdeProblem& p, std::vector<double> knots, double h_max);

struct RowResidual {
  std::size_t row = 0;
  std::vector<double> alphas;
  std::vector<Vec> residual;    ///< exact values substituted in the step
  std::vector<Vec> prediction;  ///< -sum_{k<p} gamma_k(alpha) y^(k)(t_{n-1}) h^k
};

/// Local residuals of step n (n >= 2) for every row. Sample points are
/// fractions of each row's domain [0, c_i]. Requires exact derivatives up
/// to order p - 1.
std::vector<RowResidual> local_residual(const TsrkTableau& t, const RfdeProblem& p, std::size_t n, double h,
                                        const std::vector<double>& fractions, unsigned order_p);

}  // namespace tsrk
