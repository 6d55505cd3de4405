#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tsrk {

using Vec = std::vector<double>;

/// Anything that can be evaluated as a function of absolute time.
class HistorySource {
 public:
  virtual ~HistorySource() = default;
  virtual Vec value_at(double t) const = 0;
};

/// The solution segment y_t seen by a right-hand side evaluated at time t:
/// eval_rel(theta) = y(t + theta), theta in [-r, 0]. Queries outside that
/// window throw HistoryRangeError.
class HistoryView {
 public:
  HistoryView(const HistorySource& source, double t, double r) : source_(&source), t_(t), r_(r) {}

  double time() const { return t_; }
  double delay_bound() const { return r_; }

  Vec eval_abs(double s) const;
  Vec eval_rel(double theta) const { return eval_abs(t_ + theta); }
  /// First component of eval_abs, for scalar problems.
  double scalar_abs(double s) const { return eval_abs(s).front(); }

 private:
  const HistorySource* source_;
  double t_;
  double r_;
};

using Rhs = std::function<Vec(double t, const HistoryView& y)>;
using InitialFunction = std::function<Vec(double t)>;

/// Closed-form solution with derivatives; evaluated in extended precision so
/// residual diagnostics are not swamped by rounding.
struct ExactSolution {
  /// Highest k for which derivative(t, k) is available.
  unsigned max_derivative = 0;
  std::function<std::vector<long double>(long double t, unsigned k)> derivative;

  Vec value(double t) const { return deriv(t, 0); }
  Vec deriv(double t, unsigned k) const;
};

/// Retarded functional differential equation y'(t) = f(t, y_t) on [t0, T]
/// with y = phi on [t0 - r, t0].
struct RfdeProblem {
  std::string name;
  std::size_t dim = 1;
  double t0 = 0.0;
  double T = 1.0;
  double r = 0.0;
  InitialFunction phi;
  Rhs rhs;
  std::optional<ExactSolution> exact;
  /// Times in (t0, T] where the solution loses smoothness.
  std::vector<double> breaking_points;
  /// Fine-grid reference when there is no closed form; argument is the
  /// coarse step size it will be compared against.
  std::function<std::shared_ptr<const HistorySource>(double h)> reference;
};

/// Exact solution as a history source (no range restriction of its own).
class ExactHistory : public HistorySource {
 public:
  explicit ExactHistory(const ExactSolution& exact) : exact_(&exact) {}
  Vec value_at(double t) const override { return exact_->value(t); }

 private:
  const ExactSolution* exact_;
};

}  // namespace tsrk
