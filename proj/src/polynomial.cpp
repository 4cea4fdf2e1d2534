#include "zcrit/polynomial.hpp"

#include "zcrit/errors.hpp"

#include <algorithm>

namespace zcrit {

RealPolynomial::RealPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void RealPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RealPolynomial::coeff(std::size_t power) const {
  return power < coeffs_.size() ? coeffs_[power] : Rational(0);
}

const Rational& RealPolynomial::leading() const {
  if (coeffs_.empty()) throw Error("zero polynomial has no leading coefficient");
  return coeffs_.back();
}

Rational RealPolynomial::evaluate(const Rational& k) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * k + *it;
  return acc;
}

RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
  return RealPolynomial(std::move(out));
}

RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b) {
  return a + Rational(-1) * b;
}

RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return RealPolynomial(std::move(out));
}

RealPolynomial operator*(const Rational& t, const RealPolynomial& a) {
  std::vector<Rational> out = a.coeffs_;
  for (auto& c : out) c *= t;
  return RealPolynomial(std::move(out));
}

Rational cauchy_bound(const RealPolynomial& p) {
  const Rational lead = abs(p.leading());
  Rational worst = 0;
  for (long i = 0; i < p.degree(); ++i) worst = std::max(worst, Rational(abs(p.coeff(static_cast<std::size_t>(i)))));
  return 1 + worst / lead;
}

}  // namespace zcrit
