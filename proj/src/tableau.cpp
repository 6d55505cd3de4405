#include "tsrk/tableau.hpp"

#include <algorithm>
#include <sstream>

#include "tsrk/errors.hpp"

namespace tsrk {

ExactScalar TsrkTableau::row_c(std::size_t row) const { return row == stages() ? ExactScalar(1) : c.at(row); }

const CoeffPolynomial& TsrkTableau::row_u(std::size_t row) const { return row == stages() ? v : u.at(row); }

const CoeffPolynomial& TsrkTableau::row_atilde(std::size_t row, std::size_t j) const {
  return row == stages() ? btilde.at(j) : atilde.at(row).at(j);
}

const CoeffPolynomial& TsrkTableau::row_a(std::size_t row, std::size_t j) const {
  return row == stages() ? b.at(j) : a.at(row).at(j);
}

unsigned long TsrkTableau::radicand() const {
  unsigned long d = 0;
  auto visit = [&d](const ExactScalar& x) {
    if (x.radicand() == 0) return;
    if (d != 0 && d != x.radicand()) throw AlgebraError("tableau mixes radicands");
    d = x.radicand();
  };
  auto visit_poly = [&](const CoeffPolynomial& p) {
    for (const auto& x : p.coeffs()) visit(x);
  };
  for (const auto& x : c) visit(x);
  for (const auto& p : u) visit_poly(p);
  for (const auto& row : atilde) std::for_each(row.begin(), row.end(), visit_poly);
  for (const auto& row : a) std::for_each(row.begin(), row.end(), visit_poly);
  visit_poly(v);
  std::for_each(btilde.begin(), btilde.end(), visit_poly);
  std::for_each(b.begin(), b.end(), visit_poly);
  return d;
}

namespace {

bool square(const PolyMatrix& m, std::size_t s) {
  return m.size() == s && std::all_of(m.begin(), m.end(), [s](const PolyRow& r) { return r.size() == s; });
}

std::string idx(std::size_t i) { return std::to_string(i + 1); }

}  // namespace

std::vector<ValidationIssue> validate(const TsrkTableau& t) {
  std::vector<ValidationIssue> issues;
  const std::size_t s = t.stages();
  if (s == 0) issues.push_back({ConstraintKind::Shape, "tableau has no stages"});
  if (t.u.size() != s) issues.push_back({ConstraintKind::Shape, "u has " + std::to_string(t.u.size()) + " entries"});
  if (!square(t.atilde, s)) issues.push_back({ConstraintKind::Shape, "Atilde is not s x s"});
  if (!square(t.a, s)) issues.push_back({ConstraintKind::Shape, "A is not s x s"});
  if (t.btilde.size() != s) issues.push_back({ConstraintKind::Shape, "btilde has wrong length"});
  if (t.b.size() != s) issues.push_back({ConstraintKind::Shape, "b has wrong length"});
  if (!issues.empty()) return issues;

  for (std::size_t i = 0; i < s; ++i) {
    if (t.c[i].sign() < 0) issues.push_back({ConstraintKind::NegativeAbscissa, "c_" + idx(i) + " < 0"});
    if (!t.u[i].coeff(0).is_one()) issues.push_back({ConstraintKind::StageStartValue, "u_" + idx(i) + "(0) != 1"});
    for (std::size_t j = 0; j < s; ++j) {
      if (!t.a[i][j].coeff(0).is_zero()) {
        issues.push_back({ConstraintKind::StageStartValue, "a_" + idx(i) + idx(j) + "(0) != 0"});
      }
      if (!t.atilde[i][j].coeff(0).is_zero()) {
        issues.push_back({ConstraintKind::StageStartValue, "atilde_" + idx(i) + idx(j) + "(0) != 0"});
      }
    }
  }
  if (!t.v.coeff(0).is_one()) issues.push_back({ConstraintKind::OutputStartValue, "v(0) != 1"});
  for (std::size_t j = 0; j < s; ++j) {
    if (!t.b[j].coeff(0).is_zero()) issues.push_back({ConstraintKind::OutputStartValue, "b_" + idx(j) + "(0) != 0"});
    if (!t.btilde[j].coeff(0).is_zero()) {
      issues.push_back({ConstraintKind::OutputStartValue, "btilde_" + idx(j) + "(0) != 0"});
    }
  }
  return issues;
}

std::string describe(const std::vector<ValidationIssue>& issues) {
  std::ostringstream out;
  for (std::size_t k = 0; k < issues.size(); ++k) {
    if (k) out << "; ";
    switch (issues[k].kind) {
      case ConstraintKind::Shape: out << "[shape] "; break;
      case ConstraintKind::NegativeAbscissa: out << "[abscissa] "; break;
      case ConstraintKind::StageStartValue: out << "[stage start value] "; break;
      case ConstraintKind::OutputStartValue: out << "[output start value] "; break;
    }
    out << issues[k].message;
  }
  return out.str();
}

void require_valid(const TsrkTableau& t) {
  const auto issues = validate(t);
  if (!issues.empty()) throw TableauError("invalid tableau '" + t.name + "': " + describe(issues));
}

bool is_explicit(const TsrkTableau& t) {
  for (std::size_t i = 0; i < t.a.size(); ++i) {
    for (std::size_t j = i; j < t.a[i].size(); ++j) {
      if (!t.a[i][j].is_zero()) return false;
    }
  }
  return true;
}

bool is_one_step(const TsrkTableau& t) {
  const auto one = CoeffPolynomial::constant(ExactScalar(1));
  auto all_zero = [](const PolyRow& r) { return std::all_of(r.begin(), r.end(), [](const auto& p) { return p.is_zero(); }); };
  return std::all_of(t.u.begin(), t.u.end(), [&](const auto& p) { return p == one; }) && t.v == one &&
         std::all_of(t.atilde.begin(), t.atilde.end(), all_zero) && all_zero(t.btilde);
}

DistinctAbscissae distinct_abscissae(const TsrkTableau& t) {
  DistinctAbscissae out;
  std::vector<std::size_t> order(t.stages());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return t.c[x] < t.c[y]; });
  for (std::size_t i : order) {
    if (out.values.empty() || out.values.back() != t.c[i]) {
      out.values.push_back(t.c[i]);
      out.groups.emplace_back();
    }
    out.groups.back().push_back(i);
  }
  return out;
}

TsrkTableau embed_one_step(std::vector<ExactScalar> c, PolyMatrix a, PolyRow b, std::string name) {
  const std::size_t s = c.size();
  if (!square(a, s) || b.size() != s) throw TableauError("embed_one_step: inconsistent block sizes");
  for (std::size_t i = 0; i < s; ++i) {
    if (!b[i].coeff(0).is_zero()) throw TableauError("embed_one_step: b_" + idx(i) + "(0) != 0");
    for (std::size_t j = 0; j < s; ++j) {
      if (!a[i][j].coeff(0).is_zero()) throw TableauError("embed_one_step: a_" + idx(i) + idx(j) + "(0) != 0");
    }
  }
  TsrkTableau t;
  t.name = std::move(name);
  t.c = std::move(c);
  t.u.assign(s, CoeffPolynomial::constant(ExactScalar(1)));
  t.atilde.assign(s, PolyRow(s));
  t.a = std::move(a);
  t.v = CoeffPolynomial::constant(ExactScalar(1));
  t.btilde.assign(s, CoeffPolynomial());
  t.b = std::move(b);
  require_valid(t);
  return t;
}

}  // namespace tsrk
