#include <doctest.h>

#include <random>
#include <vector>

#include "tsrk/errors.hpp"
#include "tsrk/exact_scalar.hpp"
#include "tsrk/polynomial.hpp"

using tsrk::CoeffPolynomial;
using tsrk::CoeffTensor;
using S = tsrk::ExactScalar;

namespace {

const S sqrt41 = S::sqrt_of(41);

S random_scalar(std::mt19937& rng, bool allow_surd = true) {
  std::uniform_int_distribution<long> num(-60, 60), den(1, 25);
  S x(num(rng), den(rng));
  if (allow_surd) x += S(num(rng), den(rng)) * sqrt41;
  return x;
}

CoeffPolynomial random_poly(std::mt19937& rng, int max_degree = 4) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::vector<S> c;
  for (int k = 0, d = deg(rng); k <= d; ++k) c.push_back(random_scalar(rng));
  return CoeffPolynomial(c);
}

}  // namespace

TEST_CASE("difference of squares over Q(sqrt 41)") {
  CHECK((S(1) + sqrt41) * (S(1) - sqrt41) == S(-40));
  CHECK(((S(1) + sqrt41) * (S(1) - sqrt41)).is_rational());
}

TEST_CASE("c2 of the fifth-order method as a double") {
  const S c2 = (S(11) - sqrt41) / S(10);
  CHECK(c2.to_double() == doctest::Approx(0.4596875763).epsilon(1e-10));
}

TEST_CASE("sign of 71 - 11 sqrt 41 is positive (5041 > 4961)") {
  const S x = S(71) - S(11) * sqrt41;
  CHECK(x.sign() == 1);
  CHECK((-x).sign() == -1);
  CHECK(x.to_double() == doctest::Approx(71.0 - 11.0 * std::sqrt(41.0)).epsilon(1e-12));
}

TEST_CASE("division, zero divisor and incompatible radicands") {
  CHECK_THROWS_AS(S(1) / S(0), tsrk::AlgebraError);
  CHECK_THROWS_AS(sqrt41 + S::sqrt_of(2), tsrk::AlgebraError);
  CHECK_NOTHROW(sqrt41 + S(3, 7));
  CHECK_THROWS_AS(S::sqrt_of(49), tsrk::AlgebraError);
  // surd part cancelling leaves a rational that mixes with any field
  const S zero_surd = sqrt41 - sqrt41;
  CHECK(zero_surd.is_rational());
  CHECK_NOTHROW(zero_surd + S::sqrt_of(2));
}

TEST_CASE("parse and print round trip") {
  for (const char* text : {"0/1", "-3/4", "7", "1/2+3/5*sqrt(41)", "11/10-1/10*sqrt(41)", " -2 / 3 + 1 / 1 * sqrt( 41 ) "}) {
    const S x = S::parse(text);
    CHECK(S::parse(x.to_string()) == x);
  }
  CHECK(S::parse("11/10-1/10*sqrt(41)") == (S(11) - sqrt41) / S(10));
  CHECK_THROWS_AS(S::parse("1/0"), tsrk::ParseError);
  CHECK_THROWS_AS(S::parse("abc"), tsrk::ParseError);
  CHECK_THROWS_AS(S::parse("1/2+sqrt(41)"), tsrk::ParseError);
}

TEST_CASE("field axioms on random triples") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 300; ++trial) {
    const S x = random_scalar(rng), y = random_scalar(rng), z = random_scalar(rng);
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x + y == y + x);
    CHECK(x * y == y * x);
    if (!x.is_zero()) {
      CHECK(x * x.inverse() == S(1));
      CHECK((y / x) * x == y);
    }
  }
}

TEST_CASE("exact sign agrees with a 512-bit float evaluation") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-100000, 100000), den(1, 999);
  mpf_class root(41, 512);
  root = sqrt(root);
  int checked = 0;
  while (checked < 1000) {
    const mpq_class a(num(rng), den(rng)), b(num(rng), den(rng));
    const S x(a, b, 41);
    mpf_class value(0, 512);
    value = mpf_class(a, 512) + mpf_class(b, 512) * root;
    const int expect = sgn(value);
    CHECK(x.sign() == expect);
    ++checked;
  }
  // near-cancelling pair: 2049^2 - 41 * 320^2 = 1
  CHECK((S(2049) - S(320) * sqrt41).sign() == 1);
  CHECK((S(-2049) + S(320) * sqrt41).sign() == -1);
  CHECK((S(2049) - S(320) * sqrt41).to_double() == doctest::Approx(1.0 / (2049 + 320 * std::sqrt(41.0))).epsilon(1e-12));
}

TEST_CASE("ordering follows exact sign") {
  const S c2 = (S(11) - sqrt41) / S(10);
  CHECK(S(0) < c2);
  CHECK(c2 < S(1, 2));
  CHECK(S(2) > S(3, 2));
}

TEST_CASE("polynomial products and evaluation") {
  const auto x = CoeffPolynomial::x();
  CHECK(x.pow(2) * (x + CoeffPolynomial::constant(1)) == x.pow(3) + x.pow(2));
  const auto one = CoeffPolynomial::constant(1);
  CHECK((x - one).pow(2) * (x + one).pow(2) == x.pow(4) - S(2) * x.pow(2) + one);
  CHECK(((x - one).pow(2) * (x + one).pow(2))(S(1)) == S(0));
  CHECK(CoeffPolynomial()(S(5)) == S(0));
  CHECK((x.pow(2) * (x + one).pow(2) / S(12))(S(1)) == S(1, 3));
  CHECK(CoeffPolynomial().degree() == -1);
  CHECK((x - x).is_zero());
  CHECK(CoeffPolynomial({S(1), S(0), S(0)}).degree() == 0);
}

TEST_CASE("shift composition") {
  const auto x = CoeffPolynomial::x();
  const auto one = CoeffPolynomial::constant(1);
  CHECK(x.pow(2).shifted(S(1)) == x.pow(2) + S(2) * x + one);
  const auto v = (x - one).pow(2) * (x + one).pow(2);
  CHECK(v.shifted(S(0)) == v);
  CHECK(v.shifted(S(1))(S(0)) == S(0));
}

TEST_CASE("evaluation is a ring homomorphism and shifts invert") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_poly(rng), q = random_poly(rng);
    const S x = random_scalar(rng);
    const S c = random_scalar(rng);
    CHECK((p * q)(x) == p(x) * q(x));
    CHECK((p + q)(x) == p(x) + q(x));
    CHECK(p.shifted(c).shifted(-c) == p);
    CHECK(p.shifted(c)(x) == p(x + c));
  }
}

TEST_CASE("outer products") {
  const auto x = CoeffPolynomial::x();
  const std::vector<CoeffPolynomial> pair{x, x};
  const auto t = CoeffTensor::outer(pair);
  CHECK(t.order() == 2);
  const std::size_t i11[] = {1, 1}, i01[] = {0, 1}, far[] = {7, 9};
  CHECK(t.at(i11) == S(1));
  CHECK(t.at(i01) == S(0));
  CHECK(t.at(far) == S(0));
  CHECK(!t.is_zero());

  const std::vector<CoeffPolynomial> with_zero{x, CoeffPolynomial()};
  CHECK(CoeffTensor::outer(with_zero).is_zero());

  // p(a) q(b) - q(b) p(a) cancels
  const std::vector<std::vector<CoeffPolynomial>> cancel{{x + x.pow(2), x}, {-(x + x.pow(2)), x}};
  CHECK(tsrk::tensor_outer(cancel).is_zero());

  const std::vector<std::vector<CoeffPolynomial>> mixed{{x, x}, {x, x, x}};
  CHECK_THROWS_AS(tsrk::tensor_outer(mixed), tsrk::AlgebraError);
}
