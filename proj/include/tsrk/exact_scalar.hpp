#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace tsrk {

/// Exact element a + b*sqrt(D) of Q or of a real quadratic field Q(sqrt(D)).
///
/// Rationals are always stored with b = 0 and D = 0, so a scalar with a
/// vanishing surd part compares equal to the plain rational and mixes with
/// any field. Two scalars with nonzero surd parts must share D; anything else
/// throws AlgebraError. D is never a perfect square.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long value);  // NOLINT(google-explicit-constructor)
  ExactScalar(long num, long den);
  explicit ExactScalar(mpq_class rational);
  ExactScalar(mpq_class rational, mpq_class surd, unsigned long radicand);

  /// sqrt(D) itself.
  static ExactScalar sqrt_of(unsigned long radicand);

  /// Parses "INT", "INT/INT" optionally followed by "+INT/INT*sqrt(INT)" or
  /// "-INT/INT*sqrt(INT)". Throws ParseError.
  static ExactScalar parse(std::string_view text);

  const mpq_class& rational_part() const { return a_; }
  const mpq_class& surd_part() const { return b_; }
  /// 0 for rationals.
  unsigned long radicand() const { return d_; }

  bool is_rational() const { return d_ == 0; }
  bool is_zero() const { return d_ == 0 && sgn(a_) == 0; }
  bool is_one() const { return d_ == 0 && a_ == 1; }

  /// Exact sign in {-1, 0, 1}; no floating point involved.
  int sign() const;

  ExactScalar operator-() const;
  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  ExactScalar& operator/=(const ExactScalar& o);

  friend ExactScalar operator+(ExactScalar x, const ExactScalar& y) { return x += y; }
  friend ExactScalar operator-(ExactScalar x, const ExactScalar& y) { return x -= y; }
  friend ExactScalar operator*(ExactScalar x, const ExactScalar& y) { return x *= y; }
  friend ExactScalar operator/(ExactScalar x, const ExactScalar& y) { return x /= y; }

  ExactScalar inverse() const;
  ExactScalar pow(unsigned exponent) const;

  friend bool operator==(const ExactScalar& x, const ExactScalar& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  /// Ordering by exact sign of the difference.
  friend std::strong_ordering operator<=>(const ExactScalar& x, const ExactScalar& y);

  /// Nearest double. Opposite-sign parts go through the conjugate so that
  /// values like 71 - 11*sqrt(41) keep full relative precision.
  double to_double() const;

  /// Canonical text "p/q" or "p/q+r/s*sqrt(D)"; parse(to_string()) == *this.
  std::string to_string() const;

 private:
  void normalize();
  /// Common radicand of a binary operation, or throws.
  static unsigned long join(const ExactScalar& x, const ExactScalar& y);

  mpq_class a_{0};
  mpq_class b_{0};
  unsigned long d_ = 0;
};

std::string to_string(const ExactScalar& x);

}  // namespace tsrk
