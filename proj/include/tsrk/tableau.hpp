#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tsrk/exact_scalar.hpp"
#include "tsrk/polynomial.hpp"

namespace tsrk {

using PolyRow = std::vector<CoeffPolynomial>;
using PolyMatrix = std::vector<PolyRow>;

/// Two-step Runge-Kutta tableau with polynomial coefficient functions.
///
/// Stage i uses u[i], atilde[i][j] (weights of the previous step's
/// derivatives) and a[i][j] (current step), on the local domain [0, c[i]].
/// The output uses v, btilde[j], b[j] on [0, 1]. Rows are 0-based; row index
/// `stages()` addresses the output row, which behaves like a stage with
/// c = 1, u = v, atilde = btilde, a = b.
struct TsrkTableau {
  std::string name;
  std::vector<ExactScalar> c;
  PolyRow u;
  PolyMatrix atilde;
  PolyMatrix a;
  CoeffPolynomial v;
  PolyRow btilde;
  PolyRow b;

  std::size_t stages() const { return c.size(); }

  // Extended-row accessors, row in [0, stages()].
  ExactScalar row_c(std::size_t row) const;
  const CoeffPolynomial& row_u(std::size_t row) const;
  const CoeffPolynomial& row_atilde(std::size_t row, std::size_t j) const;
  const CoeffPolynomial& row_a(std::size_t row, std::size_t j) const;

  /// Common radicand of every coefficient, 0 if all are rational.
  unsigned long radicand() const;

  friend bool operator==(const TsrkTableau&, const TsrkTableau&) = default;
};

enum class ConstraintKind {
  Shape,              ///< block dimensions disagree with the stage count
  NegativeAbscissa,   ///< c_i < 0
  StageStartValue,    ///< u_i(0) = 1, a_ij(0) = atilde_ij(0) = 0
  OutputStartValue,   ///< v(0) = 1, b_j(0) = btilde_j(0) = 0
};

struct ValidationIssue {
  ConstraintKind kind;
  std::string message;
};

/// Every violated structural constraint; empty means valid.
std::vector<ValidationIssue> validate(const TsrkTableau& t);
std::string describe(const std::vector<ValidationIssue>& issues);
/// Throws TableauError if validate() reports anything.
void require_valid(const TsrkTableau& t);

/// a_ij identically zero for all j >= i.
bool is_explicit(const TsrkTableau& t);

/// u_i = 1, atilde = 0, v = 1, btilde = 0: a one-step method in two-step form.
bool is_one_step(const TsrkTableau& t);

struct DistinctAbscissae {
  /// Strictly increasing distinct abscissae.
  std::vector<ExactScalar> values;
  /// groups[m] = 0-based stage indices with c_i == values[m].
  std::vector<std::vector<std::size_t>> groups;
};

DistinctAbscissae distinct_abscissae(const TsrkTableau& t);

/// Two-stage explicit family of uniform order four and uniform stage order
/// three (c = 0, 1). `atilde22` and `btilde2` are free but must vanish at 0.
TsrkTableau build_order4_family(const CoeffPolynomial& atilde22 = {}, const CoeffPolynomial& btilde2 = {});

/// Two-stage explicit method of uniform order five and uniform stage order
/// four over Q(sqrt(41)), c2 = (11 - sqrt(41)) / 10.
TsrkTableau build_order5_method();

/// Wraps a one-step continuous RK method (stage polynomials `a`, dense
/// output weights `b`) as a two-step tableau with u = v = 1 and zero
/// previous-step weights. Throws TableauError if any a_ij(0) or b_j(0) != 0.
TsrkTableau embed_one_step(std::vector<ExactScalar> c, PolyMatrix a, PolyRow b, std::string name = "one-step");

/// Forward Euler, b(a) = a.
TsrkTableau build_euler_embedded();

/// Classical RK4 nodes and weights with a cubic dense output and quadratic
/// stage polynomials; continuous uniform order three.
TsrkTableau build_rk4_embedded();

/// Four stages, c = (0, 1/3, 1/3, 1), cubic dense output; uniform order
/// three and node order three (a fourth-order node weight would hide the
/// dense-output order in refinement studies).
TsrkTableau build_rk3_embedded();

/// "order4", "order5", "rk4-embedded", "rk3-embedded", "euler-embedded".
TsrkTableau builtin_tableau(const std::string& name);
std::vector<std::string> builtin_tableau_names();

}  // namespace tsrk
