#pragma once

#include "zcrit/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace zcrit {

// Polynomial in one variable with rational coefficients; index = power. Trailing zeros trimmed.
class RealPolynomial {
 public:
  RealPolynomial() = default;
  explicit RealPolynomial(std::vector<Rational> coeffs);
  RealPolynomial(std::initializer_list<Rational> coeffs) : RealPolynomial(std::vector<Rational>(coeffs)) {}

  bool is_zero() const { return coeffs_.empty(); }
  // Degree of the zero polynomial is -1.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  Rational coeff(std::size_t power) const;
  std::span<const Rational> coeffs() const { return coeffs_; }
  const Rational& leading() const;
  Rational evaluate(const Rational& k) const;

  friend RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b);
  friend RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b);
  friend RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b);
  friend RealPolynomial operator*(const Rational& t, const RealPolynomial& a);
  friend bool operator==(const RealPolynomial&, const RealPolynomial&) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

// 1 + max|lower| / |leading|: every real root has absolute value below this bound.
// Requires a nonzero polynomial.
Rational cauchy_bound(const RealPolynomial& p);

}  // namespace zcrit
