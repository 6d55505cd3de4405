#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tsrk/exact_scalar.hpp"
#include "tsrk/polynomial.hpp"
#include "tsrk/tableau.hpp"

namespace tsrk {

/// Local-error coefficient polynomial of `row` (0-based, `stages()` is the
/// output row) at order k >= 1:
///   1/(k-1)! [ (1-u)(-1)^k/k + sum_j atilde_j (c_j-1)^(k-1) + sum_j a_j c_j^(k-1) - x^k/k ].
/// The local residual of the row is -sum_k gamma_k(x) y^(k) h^k + O(h^p).
CoeffPolynomial gamma(const TsrkTableau& t, std::size_t row, unsigned k);

/// (k-1)! * gamma(t, row, k), the bracketed combination alone.
CoeffPolynomial gamma_bracket(const TsrkTableau& t, std::size_t row, unsigned k);

struct GammaTable {
  unsigned kmax = 0;
  /// entries[row][k-1]
  std::vector<std::vector<CoeffPolynomial>> entries;
  const CoeffPolynomial& at(std::size_t row, unsigned k) const { return entries.at(row).at(k - 1); }
};

GammaTable gamma_table(const TsrkTableau& t, unsigned kmax);

/// p vanishes on [0, c]: identically for c > 0, at 0 for c == 0.
bool vanishes_on_domain(const CoeffPolynomial& p, const ExactScalar& c);

/// Largest q <= kmax with gamma(row, k) vanishing on each row's domain for
/// every row and every k <= q.
int uniform_stage_order(const TsrkTableau& t, unsigned kmax = 8);

enum class OrderPath {
  Inconsistent,        ///< gamma(row, 1) does not vanish somewhere: order 0
  StageOrder,          ///< q equals the uniform stage order
  StageOrderPlusOne,   ///< stage order q~ and gamma_{q~+1} == 0 on the output row
  ProductConditions,   ///< output-row conditions plus grouped product sums (q <= 4)
};

std::string to_string(OrderPath path);

struct ZeroStability {
  bool zero_stable = false;
  ExactScalar v_at_1;
};

struct OrderReport {
  int stage_order = 0;
  int order = 0;
  OrderPath path = OrderPath::Inconsistent;
  bool zero_stable = false;
  ExactScalar v_at_1;
  /// What stops order + 1, in words.
  std::string first_failing_condition;
  /// gamma_{order+1} vanishes on the output row but no implemented criterion
  /// certifies order + 1.
  bool next_order_uncertified = false;
};

/// Certified uniform order. The product-condition route covers orders 2..4;
/// above that only the stage-order route applies.
OrderReport uniform_order(const TsrkTableau& t, unsigned pmax = 8);

/// 0 <= v(1) < 2, decided exactly.
ZeroStability zero_stability(const TsrkTableau& t);

struct Probe {
  ExactScalar value;    ///< gamma evaluated at the probe point
  ExactScalar bracket;  ///< (k-1)! * value
};

/// Output row gamma_k(1): a nonzero value rules out discrete order k.
Probe discrete_order_probe(const TsrkTableau& t, unsigned k);

struct StageProbe {
  Probe at_node;  ///< gamma_{i,k}(c_i)
  Probe at_one;   ///< gamma_{i,k}(1), the polynomial extended past c_i
};

std::vector<StageProbe> stage_order_probes(const TsrkTableau& t, unsigned k);

/// Grouped product sums over distinct abscissae (orders 3 and 4); true when all
/// vanish on their domains. Exposed for tests and reports.
bool order3_product_sums_vanish(const TsrkTableau& t);
bool order4_product_sums_vanish(const TsrkTableau& t);

}  // namespace tsrk
