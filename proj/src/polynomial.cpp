#include "tsrk/polynomial.hpp"

#include <algorithm>
#include <utility>

#include "tsrk/errors.hpp"

namespace tsrk {

CoeffPolynomial::CoeffPolynomial(std::vector<ExactScalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

CoeffPolynomial::CoeffPolynomial(std::initializer_list<ExactScalar> coeffs) : coeffs_(coeffs) { trim(); }

CoeffPolynomial CoeffPolynomial::constant(const ExactScalar& value) { return CoeffPolynomial({value}); }

CoeffPolynomial CoeffPolynomial::monomial(unsigned power, const ExactScalar& value) {
  std::vector<ExactScalar> c(power + 1);
  c[power] = value;
  return CoeffPolynomial(std::move(c));
}

void CoeffPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

ExactScalar CoeffPolynomial::coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : ExactScalar(); }

ExactScalar CoeffPolynomial::operator()(const ExactScalar& x) const {
  ExactScalar acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

CoeffPolynomial CoeffPolynomial::shifted(const ExactScalar& shift) const {
  // Horner in polynomial form: p(x + c) = (...(a_n (x+c) + a_{n-1})(x+c) ...)
  const CoeffPolynomial base({shift, ExactScalar(1)});
  CoeffPolynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= base;
    acc += constant(*it);
  }
  return acc;
}

CoeffPolynomial CoeffPolynomial::pow(unsigned exponent) const {
  CoeffPolynomial result = constant(ExactScalar(1));
  for (unsigned i = 0; i < exponent; ++i) result *= *this;
  return result;
}

CoeffPolynomial CoeffPolynomial::operator-() const {
  CoeffPolynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CoeffPolynomial& CoeffPolynomial::operator+=(const CoeffPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

CoeffPolynomial& CoeffPolynomial::operator-=(const CoeffPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

CoeffPolynomial& CoeffPolynomial::operator*=(const CoeffPolynomial& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<ExactScalar> out(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

CoeffPolynomial& CoeffPolynomial::operator*=(const ExactScalar& s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

CoeffPolynomial& CoeffPolynomial::operator/=(const ExactScalar& s) {
  const ExactScalar inv = s.inverse();
  return *this *= inv;
}

std::vector<double> CoeffPolynomial::lowered() const {
  std::vector<double> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.to_double());
  return out;
}

std::string CoeffPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string text;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const ExactScalar& x = coeffs_[k];
    if (x.is_zero()) continue;
    std::string c;
    bool negative = false;
    if (x.is_rational()) {
      mpq_class q = x.rational_part();
      negative = q < 0;
      if (negative) q = -q;
      c = q.get_str();
    } else {
      c = "(" + x.to_string() + ")";
    }
    if (text.empty()) {
      text = negative ? "-" : "";
    } else {
      text += negative ? " - " : " + ";
    }
    if (k == 0) {
      text += c;
      continue;
    }
    if (c != "1") text += c + "*";
    text += var;
    if (k > 1) text += "^" + std::to_string(k);
  }
  return text;
}

CoeffTensor::CoeffTensor(std::size_t order) : shape_(order, 0) {
  if (order != 2 && order != 3) throw AlgebraError("tensor order must be 2 or 3");
}

CoeffTensor CoeffTensor::outer(std::span<const CoeffPolynomial> factors) {
  CoeffTensor t(factors.size());
  for (const auto& f : factors) {
    if (f.is_zero()) return t;
  }
  std::vector<std::size_t> shape;
  for (const auto& f : factors) shape.push_back(f.coeffs().size());
  t.grow(shape);
  std::vector<std::size_t> idx(factors.size(), 0);
  for (std::size_t flat = 0; flat < t.data_.size(); ++flat) {
    ExactScalar v(1);
    for (std::size_t axis = 0; axis < factors.size(); ++axis) v *= factors[axis].coeffs()[idx[axis]];
    t.data_[flat] = v;
    for (std::size_t axis = factors.size(); axis-- > 0;) {
      if (++idx[axis] < shape[axis]) break;
      idx[axis] = 0;
    }
  }
  return t;
}

std::size_t CoeffTensor::flat_index(std::span<const std::size_t> index) const {
  std::size_t flat = 0;
  for (std::size_t axis = 0; axis < shape_.size(); ++axis) flat = flat * shape_[axis] + index[axis];
  return flat;
}

void CoeffTensor::grow(std::span<const std::size_t> shape) {
  std::vector<std::size_t> target(shape_.size());
  bool changed = false;
  for (std::size_t axis = 0; axis < shape_.size(); ++axis) {
    target[axis] = std::max(shape_[axis], shape[axis]);
    changed = changed || target[axis] != shape_[axis];
  }
  if (!changed) return;
  std::size_t total = 1;
  for (auto n : target) total *= n;
  std::vector<ExactScalar> data(total);
  if (!data_.empty()) {
    std::vector<std::size_t> idx(shape_.size(), 0);
    for (std::size_t flat = 0; flat < data_.size(); ++flat) {
      std::size_t dst = 0;
      for (std::size_t axis = 0; axis < shape_.size(); ++axis) dst = dst * target[axis] + idx[axis];
      data[dst] = data_[flat];
      for (std::size_t axis = shape_.size(); axis-- > 0;) {
        if (++idx[axis] < shape_[axis]) break;
        idx[axis] = 0;
      }
    }
  }
  shape_ = std::move(target);
  data_ = std::move(data);
}

ExactScalar CoeffTensor::at(std::span<const std::size_t> index) const {
  if (index.size() != shape_.size()) throw AlgebraError("tensor index arity mismatch");
  for (std::size_t axis = 0; axis < shape_.size(); ++axis) {
    if (index[axis] >= shape_[axis]) return ExactScalar();
  }
  return data_[flat_index(index)];
}

bool CoeffTensor::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const ExactScalar& v) { return v.is_zero(); });
}

CoeffTensor& CoeffTensor::operator+=(const CoeffTensor& o) {
  if (o.order() != order()) throw AlgebraError("tensor order mismatch");
  grow(o.shape_);
  std::vector<std::size_t> idx(o.shape_.size(), 0);
  for (std::size_t flat = 0; flat < o.data_.size(); ++flat) {
    data_[flat_index(idx)] += o.data_[flat];
    for (std::size_t axis = o.shape_.size(); axis-- > 0;) {
      if (++idx[axis] < o.shape_[axis]) break;
      idx[axis] = 0;
    }
  }
  return *this;
}

CoeffTensor tensor_outer(std::span<const std::vector<CoeffPolynomial>> tuples) {
  if (tuples.empty()) return CoeffTensor();
  const std::size_t arity = tuples.front().size();
  CoeffTensor sum(arity);
  for (const auto& tuple : tuples) {
    if (tuple.size() != arity) throw AlgebraError("mixed arity in tensor_outer");
    sum += CoeffTensor::outer(tuple);
  }
  return sum;
}

}  // namespace tsrk
