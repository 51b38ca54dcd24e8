#include "weld/laurent.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace weld {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Laurent coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Laurent coefficient overflow");
  return r;
}

std::int64_t content(const std::vector<std::int64_t>& c) {
  std::int64_t g = 0;
  for (auto v : c) g = std::gcd(g, v);
  return g;
}

// Dense polynomials with exponents starting at 0 for the gcd routine.
using Dense = std::vector<std::int64_t>;

void strip(Dense& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Dense primitive(Dense p) {
  strip(p);
  if (p.empty()) return p;
  std::int64_t g = content(p);
  if (p.back() < 0) g = -g;
  for (auto& v : p) v /= g;
  return p;
}

// Pseudo-remainder of a by b (b nonzero).
Dense pseudo_remainder(Dense a, const Dense& b) {
  strip(a);
  const std::size_t db = b.size() - 1;
  const std::int64_t lb = b.back();
  while (a.size() >= b.size()) {
    const std::int64_t la = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (auto& v : a) v = checked_mul(v, lb);
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] = checked_add(a[i + shift], -checked_mul(la, b[i]));
    strip(a);
    a = primitive(std::move(a));  // keeps coefficients small; gcd is content-free anyway
  }
  return a;
}

}  // namespace

LaurentPolynomial::LaurentPolynomial(std::int64_t constant) {
  if (constant != 0) coeffs_.push_back(constant);
}

LaurentPolynomial::LaurentPolynomial(int low, std::vector<std::int64_t> coefficients)
    : low_(low), coeffs_(std::move(coefficients)) {
  trim();
}

LaurentPolynomial LaurentPolynomial::monomial(int exponent, std::int64_t coefficient) {
  return LaurentPolynomial(exponent, {coefficient});
}

void LaurentPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    low_ += static_cast<int>(lead);
  }
  if (coeffs_.empty()) low_ = 0;
}

std::int64_t LaurentPolynomial::coefficient(int exponent) const noexcept {
  if (exponent < low_ || exponent > high()) return 0;
  return coeffs_[static_cast<std::size_t>(exponent - low_)];
}

LaurentPolynomial LaurentPolynomial::normalized() const {
  if (is_zero()) return {};
  return LaurentPolynomial(0, primitive(coeffs_));
}

LaurentPolynomial LaurentPolynomial::operator-() const {
  LaurentPolynomial r = *this;
  for (auto& v : r.coeffs_) v = checked_mul(v, -1);
  return r;
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const int lo = std::min(low_, o.low_);
  const int hi = std::max(high(), o.high());
  std::vector<std::int64_t> sum(static_cast<std::size_t>(hi - lo + 1), 0);
  for (int e = lo; e <= hi; ++e)
    sum[static_cast<std::size_t>(e - lo)] = checked_add(coefficient(e), o.coefficient(e));
  low_ = lo;
  coeffs_ = std::move(sum);
  trim();
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& o) { return *this += -o; }

LaurentPolynomial& LaurentPolynomial::operator*=(const LaurentPolynomial& o) {
  if (is_zero() || o.is_zero()) return *this = {};
  std::vector<std::int64_t> prod(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      prod[i + j] = checked_add(prod[i + j], checked_mul(coeffs_[i], o.coeffs_[j]));
  low_ += o.low_;
  coeffs_ = std::move(prod);
  trim();
  return *this;
}

std::string LaurentPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int e = high(); e >= low_; --e) {
    std::int64_t c = coefficient(e);
    if (c == 0) continue;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    const std::int64_t mag = c < 0 ? -c : c;
    if (mag != 1 || e == 0) out += std::to_string(mag);
    if (e != 0) {
      out += "t";
      if (e != 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

LaurentPolynomial polynomial_gcd(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  Dense x = primitive(a.coefficients());
  Dense y = primitive(b.coefficients());
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    Dense r = pseudo_remainder(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return LaurentPolynomial(0, primitive(std::move(x)));
}

}  // namespace weld
