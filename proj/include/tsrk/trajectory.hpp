#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "tsrk/problem.hpp"
#include "tsrk/tableau.hpp"

namespace tsrk {

/// Double-precision image of a tableau, for time stepping.
struct FloatPolynomial {
  std::vector<double> coeffs;
  double operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
};

struct FloatTableau {
  explicit FloatTableau(const TsrkTableau& t);

  std::string name;
  std::size_t stages = 0;
  std::vector<double> c;
  std::vector<FloatPolynomial> u;
  std::vector<std::vector<FloatPolynomial>> atilde;
  std::vector<std::vector<FloatPolynomial>> a;
  FloatPolynomial v;
  std::vector<FloatPolynomial> btilde;
  std::vector<FloatPolynomial> b;
  bool is_explicit = false;
  bool is_one_step = false;

  double row_c(std::size_t row) const { return row == stages ? 1.0 : c[row]; }
  const FloatPolynomial& row_u(std::size_t row) const { return row == stages ? v : u[row]; }
  const FloatPolynomial& row_atilde(std::size_t row, std::size_t j) const {
    return row == stages ? btilde[j] : atilde[row][j];
  }
  const FloatPolynomial& row_a(std::size_t row, std::size_t j) const { return row == stages ? b[j] : a[row][j]; }
};

/// Inputs of one two-step step: the previous segment's two endpoint values
/// and both derivative sets.
struct StepInputs {
  Vec y_back;                ///< value at the start of the previous step
  Vec y_node;                ///< value at the start of this step
  std::vector<Vec> k_prev;   ///< previous step's stage derivatives
};

/// Evaluates row `row` of the tableau at local parameter alpha:
///   (1 - u(alpha)) y_back + u(alpha) y_node
///     + h sum_j atilde_j(alpha) k_prev_j + h sum_{j < limit} a_j(alpha) k_curr_j.
/// Blends the node values as y_node + (1 - u)(y_back - y_node).
Vec combine_row(const FloatTableau& tab, std::size_t row, double alpha, double h, const StepInputs& in,
                const std::vector<Vec>& k_curr, std::size_t limit);

/// One dense output piece on [t_start, t_stop].
struct Segment {
  double t_start = 0.0;
  double t_stop = 0.0;
  std::shared_ptr<const FloatTableau> tab;
  StepInputs in;
  std::vector<Vec> k_curr;

  double h() const { return t_stop - t_start; }
  Vec eval(double alpha) const;
};

enum class StartKind { Exact, Substep };

struct StartInfo {
  StartKind kind = StartKind::Exact;
  int substeps = 0;
  std::string starter;
  /// Mesh nodes where the two-step recursion was restarted.
  std::vector<double> restarts;
  /// Breaking points that do not fall on a mesh node.
  std::vector<double> unaligned_breaking_points;
};

/// Piecewise-polynomial solution: the initial function on [t0 - r, t0]
/// followed by contiguous dense segments.
class Trajectory : public HistorySource {
 public:
  Trajectory(double t0, double r, std::size_t dim, InitialFunction phi);

  /// Appends a segment starting where the last one stops (or at t0).
  void append(Segment seg);

  Vec value_at(double t) const override;
  Vec eval(double t) const { return value_at(t); }
  /// Segment `index` at local parameter alpha in [0, 1].
  Vec eval_segment(std::size_t index, double alpha) const;

  double t0() const { return t0_; }
  double t_end() const { return segments_.empty() ? t0_ : segments_.back().t_stop; }
  double delay_bound() const { return r_; }
  std::size_t dim() const { return dim_; }
  std::size_t segment_count() const { return segments_.size(); }
  const Segment& segment(std::size_t i) const { return segments_.at(i); }

  /// Step mesh t_0 < t_1 < ... (a step may span several segments).
  void add_mesh_node(double t) { mesh_.push_back(t); }
  const std::vector<double>& mesh() const { return mesh_; }

  StartInfo start;

 private:
  double t0_;
  double r_;
  std::size_t dim_;
  InitialFunction phi_;
  std::vector<Segment> segments_;
  std::vector<double> mesh_;
};

}  // namespace tsrk
