#pragma once

#include "zcrit/cohomology.hpp"
#include "zcrit/polynomial.hpp"
#include "zcrit/rational.hpp"

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zcrit {

// Complex number with rational real and imaginary parts.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(int r) : re(r) {}  // NOLINT(google-explicit-constructor)

  static GaussianRational i() { return {0, 1}; }

  bool is_zero() const { return re == 0 && im == 0; }
  GaussianRational conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
};

// Im(conj(a) * b), the sign kernel used by every verdict.
Rational im_conj_product(const GaussianRational& a, const GaussianRational& b);

// "p/q", "p/q*i", "p/q+r/s*i" or "p/q-r/s*i".
std::string to_string(const GaussianRational& z);
// Inverse of to_string; also accepts "i", "-i" and a bare rational.
GaussianRational parse_gaussian(std::string_view text);

using StabilityVector = std::array<GaussianRational, 3>;

// Polynomial central charge on a surface: weights rho and unitary class 1 + u1 + u2,
// with u2 stored as its integral over the surface.
struct CentralCharge {
  StabilityVector rho;
  CohClass u1;
  Rational u2;
};

struct UnitaryClass {
  CohClass u1;
  Rational u2;
};

UnitaryClass trivial_unitary(const SurfaceData& X);
// exp(lambda * omega).
UnitaryClass exp_kahler_unitary(const Rational& lambda, const SurfaceData& X);
// exp(-B) for a B-field class B.
UnitaryClass b_field_unitary(const CohClass& B, const SurfaceData& X);
// 1 + x*omega + y*omega^2, the parametrisation of the destabiliser scan.
UnitaryClass scan_unitary(const Rational& x, const Rational& y, const SurfaceData& X);

CentralCharge make_charge(const StabilityVector& rho, UnitaryClass u);

namespace vectors {
// (-i, -1, i/2).
StabilityVector dhym();
// (i, i, (s + i)/2) with s = c_k / k^2.
StabilityVector almost_hermite_einstein(const Rational& s);
}  // namespace vectors

enum class ValidationMode { Bayer, LargeVolume, None };

struct ValidationVerdict {
  bool valid = true;
  std::vector<std::string> violations;
  // Im(rho0/rho1) and Im(rho1/rho2); zero when the divisor vanishes.
  Rational im_ratio_01;
  Rational im_ratio_12;
};

ValidationVerdict validate(const CentralCharge& Z, ValidationMode mode);
ValidationVerdict validate(const StabilityVector& rho, ValidationMode mode);

GaussianRational charge_surface(const CentralCharge& Z, const SurfaceData& X, const SheafChern& E);
GaussianRational charge_curve(const CentralCharge& Z, const SurfaceData& X, const CohClass& V,
                              const CurveSheaf& E);
GaussianRational charge_point(const CentralCharge& Z, long rank);

// Im(conj(Z_X(E)) * f). Throws ZeroCharge when Z_X(E) = 0.
Rational pair_im(const CentralCharge& Z, const SurfaceData& X, const SheafChern& E,
                 const GaussianRational& f);

// |Z_X(E)|-scaled coefficients of the critical equation. Signs agree with the unscaled ones.
struct ScaledCoefficients {
  Rational a_hat;
  CohClass b_hat;
  Rational c_hat;
  GaussianRational zE;
};

ScaledCoefficients coefficients(const CentralCharge& Z, const SurfaceData& X, const SheafChern& E);
// b_hat / (2 a_hat). Throws AlphaZero.
CohClass theta_class(const ScaledCoefficients& c);

// Polynomial in k with Gaussian-rational coefficients; index = power. Trailing zeros trimmed.
class KPolynomial {
 public:
  KPolynomial() = default;
  explicit KPolynomial(std::vector<GaussianRational> coeffs);

  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  GaussianRational coeff(std::size_t power) const;
  std::span<const GaussianRational> coeffs() const { return coeffs_; }
  GaussianRational evaluate(const Rational& k) const;

  friend bool operator==(const KPolynomial&, const KPolynomial&) = default;

 private:
  std::vector<GaussianRational> coeffs_;
};

// Im(conj(p(k)) * q(k)) as a real polynomial in k.
RealPolynomial im_pairing(const KPolynomial& p, const KPolynomial& q);

// omega -> k*omega with U held fixed.
KPolynomial charge_poly_k(const CentralCharge& Z, const SurfaceData& X, const SheafChern& E);
KPolynomial charge_poly_k(const CentralCharge& Z, const SurfaceData& X, const CohClass& V,
                          const CurveSheaf& E);
KPolynomial charge_poly_k_point(const CentralCharge& Z, long rank);

// Principal argument, for display only. Throws ZeroCharge.
double phase_angle(const GaussianRational& z);

const char* to_string(ValidationMode m);

}  // namespace zcrit
