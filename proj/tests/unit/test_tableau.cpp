#include <doctest.h>

#include <filesystem>
#include <random>

#include <json.hpp>

#include "tsrk/errors.hpp"
#include "tsrk/tableau.hpp"
#include "tsrk/tableau_io.hpp"

using namespace tsrk;
using P = CoeffPolynomial;
using S = ExactScalar;

namespace {

bool has_kind(const std::vector<ValidationIssue>& issues, ConstraintKind k) {
  for (const auto& i : issues) {
    if (i.kind == k) return true;
  }
  return false;
}

S random_scalar(std::mt19937& rng, bool surd) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
  S x(num(rng), den(rng));
  if (surd) x += S(num(rng), den(rng)) * S::sqrt_of(41);
  return x;
}

// x * (random polynomial): vanishes at 0.
P vanishing_at_zero(std::mt19937& rng, bool surd) {
  std::uniform_int_distribution<int> deg(0, 3);
  std::vector<S> c{S(0)};
  for (int k = 0, d = deg(rng); k <= d; ++k) c.push_back(random_scalar(rng, surd));
  return P(c);
}

TsrkTableau random_valid_tableau(std::mt19937& rng) {
  std::uniform_int_distribution<int> stages(1, 3), coin(0, 1);
  std::uniform_int_distribution<long> cnum(0, 8), cden(1, 4);
  const bool surd = coin(rng) == 1;
  const std::size_t s = static_cast<std::size_t>(stages(rng));
  TsrkTableau t;
  t.name = "random";
  for (std::size_t i = 0; i < s; ++i) t.c.push_back(S(cnum(rng), cden(rng)));
  const P one = P::constant(1);
  t.atilde.assign(s, PolyRow(s));
  t.a.assign(s, PolyRow(s));
  for (std::size_t i = 0; i < s; ++i) {
    t.u.push_back(one + vanishing_at_zero(rng, surd));
    for (std::size_t j = 0; j < s; ++j) {
      if (coin(rng)) t.atilde[i][j] = vanishing_at_zero(rng, surd);
      if (coin(rng)) t.a[i][j] = vanishing_at_zero(rng, surd);
    }
    t.btilde.push_back(vanishing_at_zero(rng, surd));
    t.b.push_back(vanishing_at_zero(rng, surd));
  }
  t.v = one + vanishing_at_zero(rng, surd);
  return t;
}

TsrkTableau tiny(const P& a11) {
  const P x = P::x();
  return TsrkTableau{"tiny", {S(0)}, {P::constant(1)}, {{P()}}, {{a11}}, P::constant(1), {P()}, {x}};
}

}  // namespace

TEST_CASE("built-ins validate cleanly") {
  for (const auto& name : builtin_tableau_names()) {
    const auto t = builtin_tableau(name);
    CHECK_MESSAGE(validate(t).empty(), name);
    CHECK(t.name == name);
  }
  CHECK_THROWS_AS(builtin_tableau("nope"), TableauError);
}

TEST_CASE("v(0) != 1 is reported as an output start value violation") {
  auto t = build_order4_family();
  t.v = P::x();
  const auto issues = validate(t);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].kind == ConstraintKind::OutputStartValue);
  CHECK(issues[0].message == "v(0) != 1");
  CHECK_THROWS_AS(require_valid(t), TableauError);
}

TEST_CASE("other violations are classified") {
  auto t = build_order4_family();
  t.c[1] = S(-1, 2);
  t.u[0] = P::constant(2);
  t.b[0] = P::constant(1);
  const auto issues = validate(t);
  CHECK(issues.size() == 3);
  CHECK(has_kind(issues, ConstraintKind::NegativeAbscissa));
  CHECK(has_kind(issues, ConstraintKind::StageStartValue));
  CHECK(has_kind(issues, ConstraintKind::OutputStartValue));

  t.atilde.pop_back();
  CHECK(has_kind(validate(t), ConstraintKind::Shape));
}

TEST_CASE("explicitness") {
  CHECK(is_explicit(build_order5_method()));
  CHECK(is_explicit(build_order4_family()));
  CHECK(is_explicit(tiny(P())));
  CHECK_FALSE(is_explicit(tiny(P::x())));
  // the output row is unconstrained, b_s may be anything
  CHECK(is_explicit(build_rk4_embedded()));
}

TEST_CASE("order-four family coefficients") {
  const auto t = build_order4_family();
  const P x = P::x();
  const P one = P::constant(1);
  CHECK(t.b[1] == x.pow(2) * (x + one).pow(2) / S(12));
  CHECK(t.v == (x - one).pow(2) * (x + one).pow(2));
  CHECK(t.b[0](S(1)) == S(4, 3));
  CHECK(t.u[0] == one);
  CHECK(t.atilde[0][0].is_zero());
  CHECK(t.atilde[0][1].is_zero());
  CHECK(t.c == std::vector<S>{S(0), S(1)});
  CHECK_THROWS_AS(build_order4_family(P::constant(1), P()), TableauError);
  CHECK_THROWS_AS(build_order4_family(P(), x + one), TableauError);
  const auto free = build_order4_family(x.pow(2), x.pow(2));
  CHECK(validate(free).empty());
  CHECK(free.atilde[1][1] == x.pow(2));
  CHECK(free.v == t.v);
}

TEST_CASE("fifth-order method coefficients") {
  const auto t = build_order5_method();
  CHECK(t.c[1].to_double() == doctest::Approx(0.4596875763).epsilon(1e-10));
  CHECK(t.c[1] == (S(11) - S::sqrt_of(41)) / S(10));
  CHECK(t.b[1](S(1)) == S(0));
  CHECK(t.v(S(0)) == S(1));
  CHECK(t.radicand() == 41);
  CHECK(build_order4_family().radicand() == 0);
}

TEST_CASE("one-step embedding") {
  const auto rk4 = build_rk4_embedded();
  CHECK(validate(rk4).empty());
  CHECK(is_one_step(rk4));
  CHECK(rk4.v == P::constant(1));
  CHECK_FALSE(is_one_step(build_order4_family()));

  // classical RK4 with a linear dense output b_j(a) = a b_j(1)
  const P x = P::x();
  PolyMatrix a(4, PolyRow(4));
  a[1][0] = x;
  a[2][1] = x;
  a[3][2] = x;
  const PolyRow b{x / S(6), x / S(3), x / S(3), x / S(6)};
  const auto linear = embed_one_step({S(0), S(1, 2), S(1, 2), S(1)}, a, b, "rk4-linear");
  CHECK(validate(linear).empty());
  CHECK(is_explicit(linear));

  PolyMatrix bad = a;
  bad[1][0] = x + P::constant(1);
  CHECK_THROWS_AS(embed_one_step({S(0), S(1, 2), S(1, 2), S(1)}, bad, b), TableauError);
  CHECK_THROWS_AS(embed_one_step({S(0)}, {{P()}}, {P::constant(1)}), TableauError);

  const auto euler = build_euler_embedded();
  CHECK(euler.stages() == 1);
  CHECK(euler.b[0] == x);
}

TEST_CASE("distinct abscissae") {
  auto t = build_order4_family();
  auto d = distinct_abscissae(t);
  CHECK(d.values == std::vector<S>{S(0), S(1)});
  CHECK(d.groups == std::vector<std::vector<std::size_t>>{{0}, {1}});

  d = distinct_abscissae(build_rk4_embedded());
  CHECK(d.values == std::vector<S>{S(0), S(1, 2), S(1)});
  CHECK(d.groups == std::vector<std::vector<std::size_t>>{{0}, {1, 2}, {3}});

  d = distinct_abscissae(build_euler_embedded());
  CHECK(d.values == std::vector<S>{S(0)});

  // unsorted input and a shared group
  TsrkTableau u = tiny(P());
  u.c = {S(1, 2), S(0), S(1, 2)};
  d = distinct_abscissae(u);
  CHECK(d.values == std::vector<S>{S(0), S(1, 2)});
  CHECK(d.groups == std::vector<std::vector<std::size_t>>{{1}, {0, 2}});
}

TEST_CASE("partition property on random tableaux") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = random_valid_tableau(rng);
    const auto d = distinct_abscissae(t);
    std::vector<int> seen(t.stages(), 0);
    for (std::size_t m = 0; m < d.groups.size(); ++m) {
      if (m > 0) CHECK(d.values[m - 1] < d.values[m]);
      for (std::size_t i : d.groups[m]) {
        ++seen[i];
        CHECK(t.c[i] == d.values[m]);
      }
    }
    for (int s : seen) CHECK(s == 1);
  }
}

TEST_CASE("text round trip on built-ins and random tableaux") {
  for (const auto& name : builtin_tableau_names()) {
    const auto t = builtin_tableau(name);
    CHECK(tableau_from_text(tableau_to_text(t)) == t);
  }
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = random_valid_tableau(rng);
    REQUIRE(validate(t).empty());
    CHECK(tableau_from_text(tableau_to_text(t)) == t);
  }
  const auto path = std::filesystem::temp_directory_path() / "tsrk_order5_roundtrip.json";
  save_tableau(build_order5_method(), path);
  CHECK(load_tableau(path) == build_order5_method());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_tableau("/nonexistent/tableau.json"), Error);
}

TEST_CASE("malformed files") {
  const auto base = nlohmann::json::parse(tableau_to_text(build_order4_family()));

  auto missing_v = base;
  missing_v.erase("v");
  CHECK_THROWS_AS(tableau_from_text(missing_v.dump()), ParseError);

  auto v_two = base;
  v_two["v"][0] = "2/1";
  try {
    tableau_from_text(v_two.dump());
    FAIL("expected a validation error");
  } catch (const TableauError& e) {
    CHECK(std::string(e.what()).find("v(0) != 1") != std::string::npos);
  }

  auto bad_scalar = base;
  bad_scalar["c"][1] = "one";
  CHECK_THROWS_AS(tableau_from_text(bad_scalar.dump()), ParseError);

  auto wrong_field = base;
  wrong_field["c"][1] = "1/2+1/2*sqrt(41)";
  CHECK_THROWS_AS(tableau_from_text(wrong_field.dump()), ParseError);

  auto wrong_shape = base;
  wrong_shape["s"] = 3;
  CHECK_THROWS_AS(tableau_from_text(wrong_shape.dump()), ParseError);

  CHECK_THROWS_AS(tableau_from_text("{ not json"), ParseError);
  CHECK_THROWS_AS(tableau_from_text("[1, 2]"), ParseError);
}
