#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "tsrk/exact_scalar.hpp"

namespace tsrk {

/// Univariate polynomial with exact coefficients, ascending powers, trailing
/// zeros trimmed. The zero polynomial has no coefficients.
class CoeffPolynomial {
 public:
  CoeffPolynomial() = default;
  explicit CoeffPolynomial(std::vector<ExactScalar> coeffs);
  CoeffPolynomial(std::initializer_list<ExactScalar> coeffs);

  static CoeffPolynomial constant(const ExactScalar& value);
  /// value * x^power
  static CoeffPolynomial monomial(unsigned power, const ExactScalar& value = ExactScalar(1));
  /// The identity polynomial x.
  static CoeffPolynomial x() { return monomial(1); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const ExactScalar> coeffs() const { return coeffs_; }
  /// Coefficient of x^k; zero past the degree.
  ExactScalar coeff(std::size_t k) const;

  /// Horner evaluation.
  ExactScalar operator()(const ExactScalar& x) const;
  /// p(x + shift), expanded exactly.
  CoeffPolynomial shifted(const ExactScalar& shift) const;
  CoeffPolynomial pow(unsigned exponent) const;

  CoeffPolynomial operator-() const;
  CoeffPolynomial& operator+=(const CoeffPolynomial& o);
  CoeffPolynomial& operator-=(const CoeffPolynomial& o);
  CoeffPolynomial& operator*=(const CoeffPolynomial& o);
  CoeffPolynomial& operator*=(const ExactScalar& s);
  CoeffPolynomial& operator/=(const ExactScalar& s);

  friend CoeffPolynomial operator+(CoeffPolynomial p, const CoeffPolynomial& q) { return p += q; }
  friend CoeffPolynomial operator-(CoeffPolynomial p, const CoeffPolynomial& q) { return p -= q; }
  friend CoeffPolynomial operator*(CoeffPolynomial p, const CoeffPolynomial& q) { return p *= q; }
  friend CoeffPolynomial operator*(CoeffPolynomial p, const ExactScalar& s) { return p *= s; }
  friend CoeffPolynomial operator*(const ExactScalar& s, CoeffPolynomial p) { return p *= s; }
  friend CoeffPolynomial operator/(CoeffPolynomial p, const ExactScalar& s) { return p /= s; }

  friend bool operator==(const CoeffPolynomial&, const CoeffPolynomial&) = default;

  /// Coefficients rounded to double, ascending.
  std::vector<double> lowered() const;
  /// Human-readable form such as "1/12*a^2 + 1/6*a^3 + 1/12*a^4".
  std::string to_string(const std::string& var = "a") const;

 private:
  void trim();
  std::vector<ExactScalar> coeffs_;
};

/// Dense coefficient array of a bivariate or trivariate polynomial; entry
/// (k1, k2[, k3]) multiplies x^k1 y^k2 [z^k3].
class CoeffTensor {
 public:
  CoeffTensor() = default;
  /// Zero tensor of the given order (2 or 3).
  explicit CoeffTensor(std::size_t order);

  /// Outer product of the coefficient sequences of `factors` (2 or 3 of them).
  static CoeffTensor outer(std::span<const CoeffPolynomial> factors);

  std::size_t order() const { return shape_.size(); }
  std::span<const std::size_t> shape() const { return shape_; }
  /// Entry at a multi-index; zero outside the stored extent.
  ExactScalar at(std::span<const std::size_t> index) const;
  bool is_zero() const;

  /// Adds another tensor of the same order, growing the extent as needed.
  CoeffTensor& operator+=(const CoeffTensor& o);

 private:
  std::size_t flat_index(std::span<const std::size_t> index) const;
  void grow(std::span<const std::size_t> shape);

  std::vector<std::size_t> shape_;
  std::vector<ExactScalar> data_;
};

/// Sum over tuples of the outer products; all tuples must have the same
/// arity, 2 or 3. Throws AlgebraError otherwise.
CoeffTensor tensor_outer(std::span<const std::vector<CoeffPolynomial>> tuples);

}  // namespace tsrk
