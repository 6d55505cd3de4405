#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tsrk/order_conditions.hpp"
#include "tsrk/problem.hpp"
#include "tsrk/solver.hpp"
#include "tsrk/tableau.hpp"

namespace tsrk {

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

struct ConvergenceRow {
  std::size_t N = 0;
  double h = 0.0;
  double discrete_error = 0.0;
  double uniform_error = 0.0;
  /// log2(err(N/2) / err(N)); empty on the first row or after a failure.
  std::optional<double> discrete_order;
  std::optional<double> uniform_order;
  bool failed = false;
  std::string failure;
};

struct ConvergenceOptions {
  std::vector<std::size_t> ladder{8, 16, 32, 64, 128};
  unsigned samples_per_step = 16;
  StartOptions start;
  bool parallel = true;
};

struct ConvergenceStudy {
  std::string method;
  std::string problem;
  ZeroStability stability;
  std::vector<ConvergenceRow> rows;
};

/// Error of a trajectory against the exact solution or the problem's reference.
struct ErrorPair {
  double discrete = 0.0;
  double uniform = 0.0;
};
ErrorPair measure_errors(const Trajectory& tr, const RfdeProblem& p, const HistorySource& truth, unsigned samples_per_step);

ConvergenceStudy convergence_study(const TsrkTableau& t, const RfdeProblem& p, const ConvergenceOptions& opt = {});
std::string convergence_csv(const ConvergenceStudy& study);

struct ResidualOptions {
  std::vector<double> steps{1.0 / 32, 1.0 / 64, 1.0 / 128};
  std::vector<double> fractions{0.25, 0.5, 0.75, 1.0};
  double t_star = 1.0;
  /// 0 selects uniform order + 1, so the prediction carries the leading term.
  unsigned order_p = 0;
};

struct ResidualSample {
  double h = 0.0;
  std::size_t row = 0;
  double alpha = 0.0;
  double residual = 0.0;
  double prediction = 0.0;
};

struct ResidualRowSummary {
  std::size_t row = 0;
  std::vector<double> max_residual;    ///< per step size
  std::vector<double> max_difference;  ///< |residual - prediction| per step size
  /// Least-squares slope of log max_residual against log h; empty when the
  /// residual is identically zero.
  std::optional<double> fitted_exponent;
};

struct ResidualStudy {
  std::vector<double> steps;
  unsigned order_p = 0;
  std::vector<ResidualSample> samples;
  std::vector<ResidualRowSummary> rows;
};

ResidualStudy residual_study(const TsrkTableau& t, const RfdeProblem& p, const ResidualOptions& opt = {});
std::string residual_csv(const ResidualStudy& study);
std::string residual_summary(const ResidualStudy& study);

/// step,sample,t,is_node,y0,... with M + 1 samples per mesh interval.
std::string run_csv(const Trajectory& tr, unsigned samples_per_step);

struct VerifyReport {
  std::string name;
  OrderReport order;
  unsigned probe_k = 0;
  Probe output_probe;
  std::vector<StageProbe> stage_probes;
  /// Stage polynomials gamma(row, q~ + 1) that do not vanish, as text.
  std::vector<std::string> stage_obstructions;
};

VerifyReport verify(const TsrkTableau& t);
std::string render_text(const VerifyReport& r);
std::string render_json(const VerifyReport& r);

}  // namespace tsrk
