#include <stdexcept>

#include "tsrk/errors.hpp"
#include "tsrk/tableau.hpp"

namespace tsrk {

namespace {

using P = CoeffPolynomial;
using S = ExactScalar;

P k(const S& s) { return P::constant(s); }
P k(long n, long d = 1) { return P::constant(S(n, d)); }

}  // namespace

TsrkTableau build_order4_family(const CoeffPolynomial& atilde22, const CoeffPolynomial& btilde2) {
  if (!atilde22.coeff(0).is_zero() || !btilde2.coeff(0).is_zero()) {
    throw TableauError("order-4 family: free parameters must vanish at 0");
  }
  const P x = P::x();
  const P xp1 = x + k(1);

  TsrkTableau t;
  t.name = "order4";
  t.c = {S(0), S(1)};
  t.u = {k(1), -(k(2) * x - k(1)) * xp1.pow(2)};
  t.v = (x - k(1)).pow(2) * xp1.pow(2);
  t.atilde = {{P(), P()}, {x.pow(2) * xp1, atilde22}};
  t.a = {{P(), P()}, {x * xp1.pow(2) - atilde22, P()}};
  t.btilde = {S(-1, 12) * x.pow(2) * xp1 * (k(5) * x - k(7)), btilde2};
  t.b = {S(-1, 3) * x * (k(2) * x - k(3)) * xp1.pow(2) - btilde2, S(1, 12) * x.pow(2) * xp1.pow(2)};
  require_valid(t);
  return t;
}

TsrkTableau build_order5_method() {
  const S r41 = S::sqrt_of(41);
  const S c = (S(11) - r41) / S(10);
  const S c2 = c * c;
  const S c3 = c2 * c;
  const S c4 = c3 * c;
  const P x = P::x();
  const P x2 = x.pow(2);
  const P xp1 = x + k(1);
  const P xp1_2 = xp1.pow(2);
  const S q5 = S(5) * c2 - S(1);  // 5 c^2 - 1

  TsrkTableau t;
  t.name = "order5";
  t.c = {S(0), c};
  t.u = {k(1), xp1_2 * (k(1) - S(2) * x + (S(3) / (S(2) * c - S(1))) * x2)};
  t.v = -(xp1_2 * ((S(10) * x - k(5)) * c2 - S(15) * c * x2 + xp1 * (S(6) * x2 - S(3) * x + k(1)))) / q5;

  const P at21 = x2 * xp1 - x2 * xp1_2 * ((S(3) * c - S(1)) / (S(2) * c * (S(2) * c - S(1))));
  const P at22 = x2 * xp1_2 / (S(2) * c * (c - S(1)) * (S(2) * c - S(1)));
  const P a21 = x * xp1_2 * (k(1) - x * ((S(3) * c - S(2)) / (S(2) * (S(2) * c - S(1)) * (c - S(1)))));
  t.atilde = {{P(), P()}, {at21, at22}};
  t.a = {{P(), P()}, {a21, P()}};

  const P bt1 = x2 * xp1 *
                (k(S(20) * c4) - (S(30) * x + k(10)) * c3 + (S(12) * x2 + S(3) * x - k(13)) * c2 +
                 (S(4) * x2 + S(11) * x + k(3)) * c - S(2) * x * xp1) /
                (S(4) * c * q5 * (c + S(1)));
  const P bt2 = x2 * xp1_2 * (k(S(5) * c2) - (S(4) * x - k(3)) * c - S(2) * x) / (S(4) * c * q5 * (c - S(1)));
  const P b1 = x * xp1_2 *
               (k(S(20) * c4) - (S(30) * x + k(20)) * c3 + (S(12) * x2 + S(21) * x - k(4)) * c2 +
                (S(-4) * x2 + S(3) * x + k(4)) * c - S(2) * x * xp1) /
               (S(4) * c * q5 * (c - S(1)));
  const P b2 = -(x2 * xp1_2 * (k(S(5) * c2) - (S(4) * x + k(7)) * c + S(2) * x + k(2))) / (S(4) * c * q5 * (c + S(1)));
  t.btilde = {bt1, bt2};
  t.b = {b1, b2};
  require_valid(t);
  return t;
}

TsrkTableau build_euler_embedded() { return embed_one_step({S(0)}, {{P()}}, {P::x()}, "euler-embedded"); }

TsrkTableau build_rk4_embedded() {
  const P x = P::x();
  const P x2 = x.pow(2);
  const P x3 = x.pow(3);
  PolyMatrix a(4, PolyRow(4));
  a[1][0] = x;
  a[2][0] = x - S(2) * x2;
  a[2][1] = S(2) * x2;
  a[3][0] = x - x2;
  a[3][2] = x2;
  PolyRow b = {x - S(3, 2) * x2 + S(2, 3) * x3, x2 - S(2, 3) * x3, x2 - S(2, 3) * x3, S(-1, 2) * x2 + S(2, 3) * x3};
  return embed_one_step({S(0), S(1, 2), S(1, 2), S(1)}, std::move(a), std::move(b), "rk4-embedded");
}

TsrkTableau build_rk3_embedded() {
  const P x = P::x();
  const P x2 = x.pow(2);
  const P x3 = x.pow(3);
  PolyMatrix a(4, PolyRow(4));
  a[1][0] = x;
  a[2][0] = x - S(3) * x2;
  a[2][1] = S(3) * x2;
  a[3][0] = x - S(3, 2) * x2;
  a[3][2] = S(3, 2) * x2;
  const P b23 = S(9, 8) * x2 - S(3, 4) * x3;
  PolyRow b = {x - S(2) * x2 + x3, b23, b23, S(-1, 4) * x2 + S(1, 2) * x3};
  return embed_one_step({S(0), S(1, 3), S(1, 3), S(1)}, std::move(a), std::move(b), "rk3-embedded");
}

TsrkTableau builtin_tableau(const std::string& name) {
  if (name == "order4") return build_order4_family();
  if (name == "order5") return build_order5_method();
  if (name == "rk4-embedded") return build_rk4_embedded();
  if (name == "rk3-embedded") return build_rk3_embedded();
  if (name == "euler-embedded") return build_euler_embedded();
  throw TableauError("unknown built-in method '" + name + "'");
}

std::vector<std::string> builtin_tableau_names() {
  return {"order4", "order5", "rk4-embedded", "rk3-embedded", "euler-embedded"};
}

}  // namespace tsrk
