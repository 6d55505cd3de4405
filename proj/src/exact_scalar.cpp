#include "tsrk/exact_scalar.hpp"

#include <cctype>
#include <cmath>
#include <utility>

#include "tsrk/errors.hpp"

namespace tsrk {

namespace {

bool is_perfect_square(unsigned long value) {
  mpz_class z(value);
  return mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

mpq_class parse_rational(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational literal");
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') pos = 1;
  auto digits_end = [&](std::size_t from) {
    std::size_t i = from;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    return i;
  };
  const std::size_t num_end = digits_end(pos);
  if (num_end == pos) throw ParseError("expected integer in '" + std::string(text) + "'");
  std::string num(text.substr(0, num_end));
  if (num[0] == '+') num.erase(0, 1);
  std::string den = "1";
  if (num_end < text.size()) {
    if (text[num_end] != '/') throw ParseError("unexpected character in '" + std::string(text) + "'");
    const std::size_t den_end = digits_end(num_end + 1);
    if (den_end == num_end + 1 || den_end != text.size()) {
      throw ParseError("malformed denominator in '" + std::string(text) + "'");
    }
    den = std::string(text.substr(num_end + 1));
  }
  mpz_class n(num), d(den);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

std::string rational_text(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace

ExactScalar::ExactScalar(long value) : a_(value) {}

ExactScalar::ExactScalar(long num, long den) {
  if (den == 0) throw AlgebraError("zero denominator");
  a_ = mpq_class(num, den);
  a_.canonicalize();
}

ExactScalar::ExactScalar(mpq_class rational) : a_(std::move(rational)) { a_.canonicalize(); }

ExactScalar::ExactScalar(mpq_class rational, mpq_class surd, unsigned long radicand)
    : a_(std::move(rational)), b_(std::move(surd)), d_(radicand) {
  a_.canonicalize();
  b_.canonicalize();
  if (sgn(b_) != 0 && (d_ < 2 || is_perfect_square(d_))) {
    throw AlgebraError("radicand " + std::to_string(d_) + " is not a non-square integer >= 2");
  }
  normalize();
}

ExactScalar ExactScalar::sqrt_of(unsigned long radicand) {
  return ExactScalar(mpq_class(0), mpq_class(1), radicand);
}

void ExactScalar::normalize() {
  if (sgn(b_) == 0) d_ = 0;
}

unsigned long ExactScalar::join(const ExactScalar& x, const ExactScalar& y) {
  if (x.d_ == 0) return y.d_;
  if (y.d_ == 0 || y.d_ == x.d_) return x.d_;
  throw AlgebraError("incompatible radicands " + std::to_string(x.d_) + " and " + std::to_string(y.d_));
}

int ExactScalar::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const mpq_class diff = a_ * a_ - b_ * b_ * d_;
  const int sd = sgn(diff);
  if (sd > 0) return sa;
  if (sd < 0) return sb;
  return 0;
}

ExactScalar ExactScalar::operator-() const {
  ExactScalar r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  d_ = join(*this, o);
  a_ += o.a_;
  b_ += o.b_;
  normalize();
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
  d_ = join(*this, o);
  a_ -= o.a_;
  b_ -= o.b_;
  normalize();
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  const unsigned long d = join(*this, o);
  const mpq_class a = a_ * o.a_ + b_ * o.b_ * d;
  const mpq_class b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  d_ = d;
  normalize();
  return *this;
}

ExactScalar ExactScalar::inverse() const {
  if (is_zero()) throw AlgebraError("division by zero");
  if (d_ == 0) return ExactScalar(mpq_class(1) / a_);
  // (a + b sqrt D)^-1 = (a - b sqrt D) / (a^2 - b^2 D)
  const mpq_class norm = a_ * a_ - b_ * b_ * d_;
  return ExactScalar(a_ / norm, -b_ / norm, d_);
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
  join(*this, o);
  return *this *= o.inverse();
}

ExactScalar ExactScalar::pow(unsigned exponent) const {
  ExactScalar result(1);
  ExactScalar base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent != 0) base *= base;
  }
  return result;
}

std::strong_ordering operator<=>(const ExactScalar& x, const ExactScalar& y) {
  const int s = (x - y).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double ExactScalar::to_double() const {
  if (d_ == 0) return a_.get_d();
  const double root = std::sqrt(static_cast<double>(d_));
  if (sgn(a_) == 0 || sgn(a_) == sgn(b_)) return a_.get_d() + b_.get_d() * root;
  const mpq_class norm = a_ * a_ - b_ * b_ * d_;
  return norm.get_d() / (a_.get_d() - b_.get_d() * root);
}

std::string ExactScalar::to_string() const {
  std::string text = rational_text(a_);
  if (d_ != 0) {
    const mpq_class mag = abs(b_);
    text += sgn(b_) < 0 ? "-" : "+";
    text += rational_text(mag) + "*sqrt(" + std::to_string(d_) + ")";
  }
  return text;
}

ExactScalar ExactScalar::parse(std::string_view raw) {
  std::string text;
  for (char ch : raw) {
    if (!std::isspace(static_cast<unsigned char>(ch))) text.push_back(ch);
  }
  if (text.empty()) throw ParseError("empty scalar literal");
  // The surd term starts at the first sign after position 0.
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < text.size(); ++i) {
    if (text[i] == '+' || text[i] == '-') {
      split = i;
      break;
    }
  }
  std::string_view view(text);
  if (split == std::string::npos) {
    if (view.find("sqrt") != std::string_view::npos) {
      throw ParseError("surd term needs an explicit rational part: '" + text + "'");
    }
    return ExactScalar(parse_rational(view));
  }
  const mpq_class a = parse_rational(view.substr(0, split));
  const bool negative = view[split] == '-';
  std::string_view rest = view.substr(split + 1);
  constexpr std::string_view kSqrt = "*sqrt(";
  const std::size_t star = rest.find(kSqrt);
  if (star == std::string_view::npos || rest.back() != ')') {
    throw ParseError("expected '*sqrt(INT)' in '" + text + "'");
  }
  std::string_view coeff = rest.substr(0, star);
  if (!coeff.empty() && (coeff[0] == '+' || coeff[0] == '-')) {
    throw ParseError("doubled sign in '" + text + "'");
  }
  mpq_class b = parse_rational(coeff);
  if (negative) b = -b;
  std::string_view rad = rest.substr(star + kSqrt.size(), rest.size() - star - kSqrt.size() - 1);
  if (rad.empty()) throw ParseError("empty radicand in '" + text + "'");
  for (char ch : rad) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) throw ParseError("bad radicand in '" + text + "'");
  }
  const unsigned long d = std::stoul(std::string(rad));
  try {
    return ExactScalar(a, b, d);
  } catch (const AlgebraError& e) {
    throw ParseError(e.what());
  }
}

std::string to_string(const ExactScalar& x) { return x.to_string(); }

}  // namespace tsrk
