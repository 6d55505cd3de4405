#include "tsrk/order_conditions.hpp"

#include <algorithm>

#include "tsrk/errors.hpp"

namespace tsrk {

namespace {

ExactScalar factorial(unsigned n) {
  ExactScalar f(1);
  for (unsigned i = 2; i <= n; ++i) f *= ExactScalar(static_cast<long>(i));
  return f;
}

CoeffPolynomial restrict_to(const CoeffPolynomial& p, const ExactScalar& c) {
  return c.is_zero() ? CoeffPolynomial::constant(p(ExactScalar(0))) : p;
}

std::string row_label(const TsrkTableau& t, std::size_t row) {
  return row == t.stages() ? std::string("output row") : "stage " + std::to_string(row + 1);
}

bool output_vanishes(const TsrkTableau& t, unsigned k) { return gamma_bracket(t, t.stages(), k).is_zero(); }

}  // namespace

CoeffPolynomial gamma_bracket(const TsrkTableau& t, std::size_t row, unsigned k) {
  const std::size_t s = t.stages();
  if (row > s) throw TableauError("gamma: row " + std::to_string(row) + " out of range");
  if (k == 0) throw TableauError("gamma: order must be >= 1");
  const ExactScalar sign_k = (k % 2 == 0) ? ExactScalar(1) : ExactScalar(-1);
  const ExactScalar inv_k(1, static_cast<long>(k));

  CoeffPolynomial acc = (CoeffPolynomial::constant(ExactScalar(1)) - t.row_u(row)) * (sign_k * inv_k);
  for (std::size_t j = 0; j < s; ++j) {
    acc += t.row_atilde(row, j) * (t.c[j] - ExactScalar(1)).pow(k - 1);
    acc += t.row_a(row, j) * t.c[j].pow(k - 1);
  }
  acc -= CoeffPolynomial::monomial(k, inv_k);
  return acc;
}

CoeffPolynomial gamma(const TsrkTableau& t, std::size_t row, unsigned k) {
  return gamma_bracket(t, row, k) / factorial(k - 1);
}

GammaTable gamma_table(const TsrkTableau& t, unsigned kmax) {
  GammaTable table;
  table.kmax = kmax;
  table.entries.resize(t.stages() + 1);
  for (std::size_t row = 0; row <= t.stages(); ++row) {
    for (unsigned k = 1; k <= kmax; ++k) table.entries[row].push_back(gamma(t, row, k));
  }
  return table;
}

bool vanishes_on_domain(const CoeffPolynomial& p, const ExactScalar& c) {
  return c.is_zero() ? p(ExactScalar(0)).is_zero() : p.is_zero();
}

int uniform_stage_order(const TsrkTableau& t, unsigned kmax) {
  int order = 0;
  for (unsigned k = 1; k <= kmax; ++k) {
    for (std::size_t row = 0; row <= t.stages(); ++row) {
      if (!vanishes_on_domain(gamma_bracket(t, row, k), t.row_c(row))) return order;
    }
    order = static_cast<int>(k);
  }
  return order;
}

bool order3_product_sums_vanish(const TsrkTableau& t) {
  const auto groups = distinct_abscissae(t);
  for (std::size_t m = 0; m < groups.values.size(); ++m) {
    std::vector<std::vector<CoeffPolynomial>> terms;
    for (std::size_t i : groups.groups[m]) {
      terms.push_back({t.b[i], restrict_to(gamma(t, i, 2), groups.values[m])});
    }
    if (!tensor_outer(terms).is_zero()) return false;
  }
  return true;
}

bool order4_product_sums_vanish(const TsrkTableau& t) {
  const auto groups = distinct_abscissae(t);
  const std::size_t ng = groups.values.size();
  for (std::size_t m = 0; m < ng; ++m) {
    std::vector<std::vector<CoeffPolynomial>> terms;
    for (std::size_t i : groups.groups[m]) {
      terms.push_back({t.b[i], restrict_to(gamma(t, i, 3), groups.values[m])});
    }
    if (!tensor_outer(terms).is_zero()) return false;
  }
  for (std::size_t m = 0; m < ng; ++m) {
    for (std::size_t l = 0; l < ng; ++l) {
      std::vector<std::vector<CoeffPolynomial>> terms;
      for (std::size_t i : groups.groups[m]) {
        for (std::size_t j : groups.groups[l]) {
          terms.push_back({t.b[i], restrict_to(t.a[i][j], groups.values[m]),
                           restrict_to(gamma(t, j, 2), groups.values[l])});
        }
      }
      if (!tensor_outer(terms).is_zero()) return false;
    }
  }
  return true;
}

ZeroStability zero_stability(const TsrkTableau& t) {
  ZeroStability z;
  z.v_at_1 = t.v(ExactScalar(1));
  z.zero_stable = z.v_at_1.sign() >= 0 && (z.v_at_1 - ExactScalar(2)).sign() < 0;
  return z;
}

std::string to_string(OrderPath path) {
  switch (path) {
    case OrderPath::Inconsistent: return "inconsistent (first-order conditions fail)";
    case OrderPath::StageOrder: return "uniform stage order";
    case OrderPath::StageOrderPlusOne: return "uniform stage order + 1";
    case OrderPath::ProductConditions: return "product conditions";
  }
  return "unknown";
}

OrderReport uniform_order(const TsrkTableau& t, unsigned pmax) {
  OrderReport report;
  const auto zs = zero_stability(t);
  report.zero_stable = zs.zero_stable;
  report.v_at_1 = zs.v_at_1;
  const unsigned kmax = std::max(pmax, 1U) + 1;

  for (std::size_t row = 0; row <= t.stages(); ++row) {
    if (!vanishes_on_domain(gamma_bracket(t, row, 1), t.row_c(row))) {
      report.first_failing_condition = "Gamma_1 does not vanish on " + row_label(t, row);
      return report;
    }
  }

  report.stage_order = uniform_stage_order(t, kmax);
  const auto q_stage = static_cast<unsigned>(report.stage_order);
  const unsigned q_via_stage = output_vanishes(t, q_stage + 1) ? q_stage + 1 : q_stage;

  unsigned q_via_products = 1;
  if (output_vanishes(t, 2)) {
    q_via_products = 2;
    if (output_vanishes(t, 3) && order3_product_sums_vanish(t)) {
      q_via_products = 3;
      if (output_vanishes(t, 4) && order4_product_sums_vanish(t)) q_via_products = 4;
    }
  }

  unsigned q = std::max(q_via_stage, q_via_products);
  if (q_via_stage >= q_via_products) {
    report.path = q_via_stage > q_stage ? OrderPath::StageOrderPlusOne : OrderPath::StageOrder;
  } else {
    report.path = OrderPath::ProductConditions;
  }
  q = std::min(q, pmax);
  report.order = static_cast<int>(q);

  const unsigned next = q + 1;
  if (!output_vanishes(t, next)) {
    report.first_failing_condition = "Gamma_" + std::to_string(next) + " does not vanish on the output row";
  } else if (q == pmax) {
    report.first_failing_condition = "order cap " + std::to_string(pmax) + " reached";
  } else {
    report.next_order_uncertified = true;
    if (next <= 4) {
      report.first_failing_condition = next == 3 ? "order-3 product sums do not vanish"
                                                 : "order-4 product sums do not vanish";
    } else {
      for (std::size_t row = 0; row < t.stages(); ++row) {
        if (!vanishes_on_domain(gamma_bracket(t, row, q_stage + 1), t.c[row])) {
          report.first_failing_condition = "Gamma_" + std::to_string(q_stage + 1) + " does not vanish on " +
                                           row_label(t, row) + "; order " + std::to_string(next) +
                                           " not certifiable by implemented criteria";
          break;
        }
      }
    }
  }
  return report;
}

Probe discrete_order_probe(const TsrkTableau& t, unsigned k) {
  const ExactScalar bracket = gamma_bracket(t, t.stages(), k)(ExactScalar(1));
  return {bracket / factorial(k - 1), bracket};
}

std::vector<StageProbe> stage_order_probes(const TsrkTableau& t, unsigned k) {
  std::vector<StageProbe> out;
  const ExactScalar fact = factorial(k - 1);
  for (std::size_t i = 0; i < t.stages(); ++i) {
    const auto p = gamma_bracket(t, i, k);
    const ExactScalar at_c = p(t.c[i]);
    const ExactScalar at_1 = p(ExactScalar(1));
    out.push_back({{at_c / fact, at_c}, {at_1 / fact, at_1}});
  }
  return out;
}

}  // namespace tsrk
