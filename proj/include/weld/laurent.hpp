#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace weld {

/// Exact integer Laurent polynomial in one variable t.
///
/// Stored as a lowest exponent plus a dense coefficient vector with no zero
/// at either end; the zero polynomial has no coefficients. Arithmetic is
/// checked and throws std::overflow_error instead of wrapping.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  LaurentPolynomial(std::int64_t constant);  // NOLINT: integers embed naturally
  LaurentPolynomial(int low, std::vector<std::int64_t> coefficients);

  static LaurentPolynomial monomial(int exponent, std::int64_t coefficient = 1);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  int low() const noexcept { return low_; }
  int high() const noexcept { return low_ + static_cast<int>(coeffs_.size()) - 1; }
  std::int64_t coefficient(int exponent) const noexcept;
  const std::vector<std::int64_t>& coefficients() const noexcept { return coeffs_; }
  std::int64_t leading() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }

  /// Lowest exponent 0, coefficients divided by their content, positive
  /// leading coefficient. Zero stays zero.
  LaurentPolynomial normalized() const;

  LaurentPolynomial operator-() const;
  LaurentPolynomial& operator+=(const LaurentPolynomial& o);
  LaurentPolynomial& operator-=(const LaurentPolynomial& o);
  LaurentPolynomial& operator*=(const LaurentPolynomial& o);
  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
  friend LaurentPolynomial operator*(LaurentPolynomial a, const LaurentPolynomial& b) { return a *= b; }
  friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;

  /// Human form, highest power first: "t^2 - t + 1".
  std::string to_string() const;

 private:
  void trim();

  int low_ = 0;
  std::vector<std::int64_t> coeffs_;
};

/// Greatest common divisor over Q[t], returned normalized (primitive integer
/// polynomial, lowest exponent 0, positive leading coefficient).
LaurentPolynomial polynomial_gcd(const LaurentPolynomial& a, const LaurentPolynomial& b);

}  // namespace weld
