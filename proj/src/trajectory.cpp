#include "tsrk/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "tsrk/errors.hpp"

namespace tsrk {

namespace {

FloatPolynomial lower(const CoeffPolynomial& p) { return {p.lowered()}; }

std::vector<FloatPolynomial> lower_row(const PolyRow& row) {
  std::vector<FloatPolynomial> out;
  out.reserve(row.size());
  for (const auto& p : row) out.push_back(lower(p));
  return out;
}

double slack(double t) { return 1e-12 * std::max(1.0, std::abs(t)); }

}  // namespace

FloatTableau::FloatTableau(const TsrkTableau& t)
    : name(t.name), stages(t.stages()), v(lower(t.v)), is_explicit(tsrk::is_explicit(t)), is_one_step(tsrk::is_one_step(t)) {
  require_valid(t);
  for (const auto& x : t.c) c.push_back(x.to_double());
  u = lower_row(t.u);
  for (const auto& row : t.atilde) atilde.push_back(lower_row(row));
  for (const auto& row : t.a) a.push_back(lower_row(row));
  btilde = lower_row(t.btilde);
  b = lower_row(t.b);
}

Vec HistoryView::eval_abs(double s) const {
  const double eps = slack(t_) + 1e-12 * r_;
  if (s < t_ - r_ - eps || s > t_ + eps) {
    throw HistoryRangeError("history query at " + std::to_string(s) + " outside [" + std::to_string(t_ - r_) + ", " +
                            std::to_string(t_) + "]");
  }
  return source_->value_at(s);
}

Vec ExactSolution::deriv(double t, unsigned k) const {
  if (k > max_derivative) throw SolverError("exact derivative of order " + std::to_string(k) + " unavailable");
  const auto ld = derivative(static_cast<long double>(t), k);
  return Vec(ld.begin(), ld.end());
}

Vec combine_row(const FloatTableau& tab, std::size_t row, double alpha, double h, const StepInputs& in,
                const std::vector<Vec>& k_curr, std::size_t limit) {
  const std::size_t s = tab.stages;
  const double ua = tab.row_u(row)(alpha);
  std::vector<double> wt(s), w(limit);
  for (std::size_t j = 0; j < s; ++j) wt[j] = tab.row_atilde(row, j)(alpha);
  for (std::size_t j = 0; j < limit; ++j) w[j] = tab.row_a(row, j)(alpha);

  Vec out(in.y_node.size());
  for (std::size_t d = 0; d < out.size(); ++d) {
    // exact when u == 1 or y_back == y_node; zero weights never touch their inputs
    double acc = in.y_node[d];
    if (ua != 1.0) acc += (1.0 - ua) * (in.y_back[d] - in.y_node[d]);
    double inc = 0.0;
    for (std::size_t j = 0; j < s; ++j) {
      if (wt[j] != 0.0) inc += wt[j] * in.k_prev[j][d];
    }
    for (std::size_t j = 0; j < limit; ++j) {
      if (w[j] != 0.0) inc += w[j] * k_curr[j][d];
    }
    out[d] = acc + h * inc;
  }
  return out;
}

Vec Segment::eval(double alpha) const { return combine_row(*tab, tab->stages, alpha, h(), in, k_curr, tab->stages); }

Trajectory::Trajectory(double t0, double r, std::size_t dim, InitialFunction phi)
    : t0_(t0), r_(r), dim_(dim), phi_(std::move(phi)) {}

void Trajectory::append(Segment seg) {
  if (seg.t_stop <= seg.t_start) throw SolverError("segment with nonpositive length");
  if (std::abs(seg.t_start - t_end()) > slack(seg.t_start)) throw SolverError("segments must be contiguous");
  seg.t_start = t_end();
  segments_.push_back(std::move(seg));
}

Vec Trajectory::eval_segment(std::size_t index, double alpha) const { return segments_.at(index).eval(alpha); }

Vec Trajectory::value_at(double t) const {
  if (t < t0_ - r_ - slack(t) - 1e-12 * r_ || t > t_end() + slack(t)) {
    throw HistoryRangeError("trajectory evaluated at " + std::to_string(t) + " outside [" +
                            std::to_string(t0_ - r_) + ", " + std::to_string(t_end()) + "]");
  }
  if (t <= t0_ || segments_.empty()) return phi_(std::min(t, t0_));
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](double x, const Segment& s) { return x < s.t_start; });
  const Segment& seg = *std::prev(it);
  if (t >= seg.t_stop) return seg.eval(1.0);
  return seg.eval((t - seg.t_start) / seg.h());
}

}  // namespace tsrk
