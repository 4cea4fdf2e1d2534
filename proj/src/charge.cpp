#include "zcrit/charge.hpp"

#include "zcrit/errors.hpp"

#include <cmath>

namespace zcrit {

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw Error("division by zero Gaussian rational");
  const Rational n = o.norm2();
  *this *= o.conj();
  re /= n;
  im /= n;
  return *this;
}

Rational im_conj_product(const GaussianRational& a, const GaussianRational& b) {
  return a.re * b.im - a.im * b.re;
}

std::string to_string(const GaussianRational& z) {
  if (z.im == 0) return to_string(z.re);
  std::string imag = to_string(Rational(abs(z.im))) + "*i";
  if (z.re == 0) return (z.im < 0 ? "-" : "") + imag;
  return to_string(z.re) + (z.im < 0 ? "-" : "+") + imag;
}

GaussianRational parse_gaussian(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty Gaussian rational");
  if (text.back() != 'i') return {parse_rational(text), 0};

  std::string_view body = text.substr(0, text.size() - 1);
  if (!body.empty() && body.back() == '*') body.remove_suffix(1);
  // Split at the last sign that is not the leading one.
  std::size_t split = std::string_view::npos;
  for (std::size_t pos = body.size(); pos-- > 1;) {
    if (body[pos] == '+' || body[pos] == '-') {
      split = pos;
      break;
    }
  }
  auto imag_of = [](std::string_view s) -> Rational {
    if (s.empty() || s == "+") return 1;
    if (s == "-") return -1;
    return parse_rational(s);
  };
  if (split == std::string_view::npos) return {0, imag_of(body)};
  return {parse_rational(body.substr(0, split)), imag_of(body.substr(split))};
}

UnitaryClass trivial_unitary(const SurfaceData& X) { return {CohClass::zero(X.dim()), 0}; }

UnitaryClass exp_kahler_unitary(const Rational& lambda, const SurfaceData& X) {
  return {lambda * X.kahler(), lambda * lambda * intersect(X.kahler(), X.kahler(), X) / 2};
}

UnitaryClass b_field_unitary(const CohClass& B, const SurfaceData& X) {
  return {-B, intersect(B, B, X) / 2};
}

UnitaryClass scan_unitary(const Rational& x, const Rational& y, const SurfaceData& X) {
  return {x * X.kahler(), y * intersect(X.kahler(), X.kahler(), X)};
}

CentralCharge make_charge(const StabilityVector& rho, UnitaryClass u) {
  return {rho, std::move(u.u1), std::move(u.u2)};
}

namespace vectors {

StabilityVector dhym() { return {GaussianRational(0, -1), GaussianRational(-1), GaussianRational(0, Rational(1, 2))}; }

StabilityVector almost_hermite_einstein(const Rational& s) {
  return {GaussianRational(0, 1), GaussianRational(0, 1), GaussianRational(s / 2, Rational(1, 2))};
}

}  // namespace vectors

ValidationVerdict validate(const StabilityVector& rho, ValidationMode mode) {
  ValidationVerdict v;
  if (!rho[1].is_zero()) v.im_ratio_01 = (rho[0] / rho[1]).im;
  if (!rho[2].is_zero()) v.im_ratio_12 = (rho[1] / rho[2]).im;
  if (mode == ValidationMode::None) return v;

  for (std::size_t j = 0; j < rho.size(); ++j) {
    if (rho[j].is_zero()) v.violations.push_back("rho" + std::to_string(j) + " = 0");
  }
  if (mode == ValidationMode::Bayer && !rho[1].is_zero() && v.im_ratio_01 <= 0) {
    v.violations.push_back("Im(rho0/rho1) = " + to_string(v.im_ratio_01) + " is not positive");
  }
  if (!rho[2].is_zero() && v.im_ratio_12 <= 0) {
    v.violations.push_back("Im(rho1/rho2) = " + to_string(v.im_ratio_12) + " is not positive");
  }
  v.valid = v.violations.empty();
  return v;
}

ValidationVerdict validate(const CentralCharge& Z, ValidationMode mode) { return validate(Z.rho, mode); }

namespace {

// Real weights P0, P1, P2 with Z = rho0*P0 + rho1*P1 + rho2*P2, split by power of omega.
struct SurfaceWeights {
  Rational p0;      // u2*rk + U1.ch1 + ch2
  Rational p1;      // (U1.omega)*rk + omega.ch1
  Rational p2;      // (omega.omega)*rk
};

SurfaceWeights surface_weights(const CentralCharge& Z, const SurfaceData& X, const SheafChern& E) {
  const Rational r(E.rank());
  const CohClass& w = X.kahler();
  return {Z.u2 * r + intersect(Z.u1, E.ch1(), X) + E.ch2(),
          intersect(Z.u1, w, X) * r + intersect(w, E.ch1(), X),
          intersect(w, w, X) * r};
}

}  // namespace

GaussianRational charge_surface(const CentralCharge& Z, const SurfaceData& X, const SheafChern& E) {
  const SurfaceWeights p = surface_weights(Z, X, E);
  return Z.rho[0] * p.p0 + Z.rho[1] * p.p1 + Z.rho[2] * p.p2;
}

GaussianRational charge_curve(const CentralCharge& Z, const SurfaceData& X, const CohClass& V,
                              const CurveSheaf& E) {
  const Rational r(E.rank());
  return Z.rho[1] * (intersect(X.kahler(), V, X) * r) + Z.rho[0] * (intersect(Z.u1, V, X) * r + E.degree());
}

GaussianRational charge_point(const CentralCharge& Z, long rank) {
  if (rank < 1) throw RankViolation("point charge needs rank at least 1");
  return Z.rho[0] * Rational(rank);
}

Rational pair_im(const CentralCharge& Z, const SurfaceData& X, const SheafChern& E,
                 const GaussianRational& f) {
  const GaussianRational zE = charge_surface(Z, X, E);
  if (zE.is_zero()) throw ZeroCharge("Z_X(E) = 0");
  return im_conj_product(zE, f);
}

ScaledCoefficients coefficients(const CentralCharge& Z, const SurfaceData& X, const SheafChern& E) {
  const GaussianRational zE = charge_surface(Z, X, E);
  if (zE.is_zero()) throw ZeroCharge("Z_X(E) = 0");
  const CohClass& w = X.kahler();
  const Rational im0 = im_conj_product(zE, Z.rho[0]);
  const Rational im1 = im_conj_product(zE, Z.rho[1]);
  const GaussianRational constant =
      Z.rho[0] * Z.u2 + Z.rho[1] * intersect(Z.u1, w, X) + Z.rho[2] * intersect(w, w, X);
  return {im0 / 2, im0 * Z.u1 + im1 * w, im_conj_product(zE, constant), zE};
}

CohClass theta_class(const ScaledCoefficients& c) {
  if (c.a_hat == 0) throw AlphaZero("a_hat = 0: twist class undefined");
  return c.b_hat * (1 / (2 * c.a_hat));
}

KPolynomial::KPolynomial(std::vector<GaussianRational> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

GaussianRational KPolynomial::coeff(std::size_t power) const {
  return power < coeffs_.size() ? coeffs_[power] : GaussianRational();
}

GaussianRational KPolynomial::evaluate(const Rational& k) const {
  GaussianRational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * k + *it;
  return acc;
}

RealPolynomial im_pairing(const KPolynomial& p, const KPolynomial& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<Rational> out(static_cast<std::size_t>(p.degree() + q.degree() + 1));
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    for (std::size_t j = 0; j < q.coeffs().size(); ++j) {
      out[i + j] += im_conj_product(p.coeffs()[i], q.coeffs()[j]);
    }
  }
  return RealPolynomial(std::move(out));
}

KPolynomial charge_poly_k(const CentralCharge& Z, const SurfaceData& X, const SheafChern& E) {
  const SurfaceWeights p = surface_weights(Z, X, E);
  return KPolynomial({Z.rho[0] * p.p0, Z.rho[1] * p.p1, Z.rho[2] * p.p2});
}

KPolynomial charge_poly_k(const CentralCharge& Z, const SurfaceData& X, const CohClass& V,
                          const CurveSheaf& E) {
  const Rational r(E.rank());
  return KPolynomial({Z.rho[0] * (intersect(Z.u1, V, X) * r + E.degree()),
                      Z.rho[1] * (intersect(X.kahler(), V, X) * r)});
}

KPolynomial charge_poly_k_point(const CentralCharge& Z, long rank) {
  return KPolynomial({charge_point(Z, rank)});
}

double phase_angle(const GaussianRational& z) {
  if (z.is_zero()) throw ZeroCharge("phase of zero is undefined");
  return std::atan2(to_double(z.im), to_double(z.re));
}

const char* to_string(ValidationMode m) {
  switch (m) {
    case ValidationMode::Bayer: return "Bayer";
    case ValidationMode::LargeVolume: return "LargeVolume";
    case ValidationMode::None: return "None";
  }
  return "?";
}

}  // namespace zcrit
