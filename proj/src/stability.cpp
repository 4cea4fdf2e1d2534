#include "zcrit/stability.hpp"

#include "zcrit/errors.hpp"

#include <algorithm>
#include <array>

namespace zcrit {
namespace {

void require_proper(const SheafChern& E, long sub_rank, const std::string& label) {
  if (sub_rank <= 0 || sub_rank >= E.rank()) {
    throw RankViolation("candidate " + label + " has rank " + std::to_string(sub_rank) +
                        ", need 0 < rank < " + std::to_string(E.rank()));
  }
}

CurveSheaf restrict_to(const SheafChern& E, const CohClass& V, const SurfaceData& X) {
  return CurveSheaf(E.rank(), intersect(E.ch1(), V, X));
}

}  // namespace

Sign sign_of(const Rational& q) {
  return q > 0 ? Sign::Positive : (q < 0 ? Sign::Negative : Sign::Zero);
}

Rational mumford_slope(const SheafChern& E, const SurfaceData& X) {
  return intersect(E.ch1(), X.kahler(), X) / E.rank();
}

Rational ma_slope(const SheafChern& E, const CohClass& theta, const SurfaceData& X) {
  return (E.ch2() + intersect(E.ch1(), theta, X)) / E.rank();
}

Verdict classify(const std::vector<Rational>& oriented_margins) {
  bool zero_seen = false;
  for (const auto& m : oriented_margins) {
    if (m > 0) return Verdict::Unstable;
    zero_seen = zero_seen || m == 0;
  }
  return zero_seen ? Verdict::StrictlySemistable : Verdict::Stable;
}

StabilityReport z_stability(const CentralCharge& Z, const SurfaceData& X, const SheafChern& E,
                            const std::vector<Candidate>& candidates) {
  const GaussianRational zE = charge_surface(Z, X, E);
  if (zE.is_zero()) throw ZeroCharge("Z_X(E) = 0");
  StabilityReport report;
  report.convention =
      "margin = Im(conj Z(E) Z(candidate)); subobjects need margin < 0, quotients need margin > 0";
  std::vector<Rational> oriented;
  for (const auto& cand : candidates) {
    require_proper(E, cand.sheaf.rank(), cand.label);
    Rational m = im_conj_product(zE, charge_surface(Z, X, cand.sheaf));
    Rational o = cand.kind == CandidateKind::Quotient ? Rational(-m) : m;
    oriented.push_back(o);
    report.witnesses.push_back({cand.label, cand.kind, std::move(m), std::move(o)});
  }
  report.verdict = classify(oriented);
  return report;
}

ComparisonIdentity comparison_identity(const CentralCharge& Z, const SurfaceData& X, const SheafChern& E,
                                       const SheafChern& S) {
  const ScaledCoefficients c = coefficients(Z, X, E);
  const CohClass theta = theta_class(c);
  Rational lhs = im_conj_product(c.zE, charge_surface(Z, X, S));
  Rational rhs = 2 * Rational(S.rank()) * c.a_hat * (ma_slope(S, theta, X) - ma_slope(E, theta, X));
  return {std::move(lhs), std::move(rhs)};
}

Sign alpha_sign(const CentralCharge& Z, const SurfaceData& X, const SheafChern& E) {
  return sign_of(coefficients(Z, X, E).a_hat);
}

BundlePositivityReport z_positive_bundle(const CentralCharge& Z, const SurfaceData& X, const SheafChern& E,
                                         NakaiOptions options) {
  const ScaledCoefficients c = coefficients(Z, X, E);
  BundlePositivityReport report;
  report.positivity_class = (2 * c.a_hat) * E.ch1() + Rational(E.rank()) * c.b_hat;
  report.class_route = nakai_positive(report.positivity_class, X, options);

  bool all_positive = true;
  for (const auto& curve : X.test_curves()) {
    const GaussianRational zV = charge_curve(Z, X, curve.cls, restrict_to(E, curve.cls, X));
    CurveRoutes row{curve.label, im_conj_product(c.zE, zV), intersect(report.positivity_class, curve.cls, X)};
    row.agree = sign_of(row.charge_margin) == sign_of(row.class_pairing);
    all_positive = all_positive && row.charge_margin > 0;
    report.routes_agree = report.routes_agree && row.agree;
    report.curves.push_back(std::move(row));
  }
  report.verdict = all_positive ? Positivity::Positive : Positivity::NotPositive;
  if (X.test_curves().empty()) report.notes.push_back("no test curves supplied; curve route is vacuous");
  if (!X.curves_exhaustive()) report.notes.push_back("curve list not marked exhaustive");
  if (report.verdict == Positivity::Positive && report.class_route.verdict == Positivity::NotPositive) {
    report.notes.push_back("positive on every curve but the class fails the self-intersection or Kähler test");
  }
  return report;
}

QuotientPositivityReport quotient_positive(const CentralCharge& Z, const SurfaceData& X, const SheafChern& E,
                                           const CohClass& V, const CurveSheaf& Q) {
  const ScaledCoefficients c = coefficients(Z, X, E);
  QuotientPositivityReport report;
  report.value = 2 * c.a_hat * Q.degree() + Rational(Q.rank()) * intersect(c.b_hat, V, X);
  report.charge_margin = im_conj_product(c.zE, charge_curve(Z, X, V, Q));
  report.verdict = report.value > 0 ? Positivity::Positive : Positivity::NotPositive;
  if (c.a_hat < 0) {
    report.subsheaf_reading = true;
    report.notes.push_back("a_hat < 0: the inequality constrains subsheaves rather than quotients");
  } else if (c.a_hat == 0) {
    report.notes.push_back("a_hat = 0: only the b_hat term contributes");
  }
  return report;
}

Rational volume_form_proxy(const ScaledCoefficients& c, const SurfaceData& X) {
  return intersect(c.b_hat, c.b_hat, X) - 4 * c.a_hat * c.c_hat;
}

Rational bogomolov_margin(const SheafChern& E, const SurfaceData& X) {
  if (E.rank() != 2) throw RankViolation("Bogomolov margin is defined here for rank 2 only");
  const Rational c1sq = intersect(E.ch1(), E.ch1(), X);
  const Rational c2 = (c1sq - 2 * E.ch2()) / 2;
  return 4 * c2 - c1sq;
}

PolystabilityReport polystability_rank2(const CentralCharge& Z, const SurfaceData& X, const SheafChern& L1,
                                        const SheafChern& L2) {
  if (L1.rank() != 1 || L2.rank() != 1) throw RankViolation("polystability check needs two rank 1 summands");
  const SheafChern E = sum(L1, L2);
  const ScaledCoefficients c = coefficients(Z, X, E);
  const GaussianRational z1 = charge_surface(Z, X, L1);
  const GaussianRational z2 = charge_surface(Z, X, L2);

  PolystabilityReport r;
  r.margin_first = im_conj_product(c.zE, z1);
  r.margin_second = im_conj_product(c.zE, z2);
  r.margins_nonpositive = r.margin_first <= 0 && r.margin_second <= 0;

  r.summand_pairing = im_conj_product(z2, z1);
  r.summands_aligned = r.summand_pairing == 0;

  const Rational bb = intersect(c.b_hat, c.b_hat, X);
  auto square = [&](const SheafChern& L) {
    return 4 * c.a_hat * c.a_hat * (2 * L.ch2()) + 4 * c.a_hat * intersect(c.b_hat, L.ch1(), X) + bb;
  };
  r.square_first = square(L1);
  r.square_second = square(L2);
  r.discriminant = bb - 4 * c.a_hat * c.c_hat;
  r.squares_match = r.square_first == r.discriminant && r.square_second == r.discriminant;

  if (c.a_hat == 0) {
    r.equivalent = r.margins_nonpositive == r.summands_aligned;
    r.notes.push_back("a_hat = 0: the squared-class condition is vacuous");
  } else {
    r.equivalent = r.margins_nonpositive == r.summands_aligned && r.summands_aligned == r.squares_match;
  }

  r.existence_first = nakai_positive((2 * c.a_hat) * L1.ch1() + c.b_hat, X);
  r.existence_second = nakai_positive((2 * c.a_hat) * L2.ch1() + c.b_hat, X);

  auto own_alpha = [&](const GaussianRational& z) {
    return z.is_zero() ? Sign::Zero : sign_of(im_conj_product(z, Z.rho[0]));
  };
  r.alpha_first = own_alpha(z1);
  r.alpha_second = own_alpha(z2);
  r.mixed_alpha_signs = r.alpha_first != r.alpha_second;
  if (r.mixed_alpha_signs) {
    r.notes.push_back("summand a_hat signs differ; semistability of such sums is open beyond rank 1 summands");
  }
  for (const auto* L : {&L1, &L2}) {
    if (2 * L->ch2() != intersect(L->ch1(), L->ch1(), X)) {
      r.notes.push_back("summand is not a line bundle (ch2 != ch1^2/2); squares use 2 ch2");
      break;
    }
  }
  return r;
}

CurveMumfordReport curve_restriction_mumford(const CurveSheaf& E, const CurveSheaf& S) {
  if (S.rank() <= 0 || S.rank() >= E.rank()) {
    throw RankViolation("curve candidate needs 0 < rank < " + std::to_string(E.rank()));
  }
  CurveMumfordReport r{Verdict::Stable, S.degree() / S.rank(), E.degree() / E.rank()};
  r.verdict = classify({r.sub_slope - r.slope});
  return r;
}

Rational curve_charge_margin(const CentralCharge& Z, const SurfaceData& X, const CohClass& V,
                             const CurveSheaf& E, const CurveSheaf& S) {
  return im_conj_product(charge_curve(Z, X, V, E), charge_curve(Z, X, V, S));
}

AsymptoticSign asymptotic_sign(const RealPolynomial& r) {
  AsymptoticSign out;
  out.pairing = r;
  if (r.is_zero()) return out;
  out.sign = sign_of(r.leading());
  out.threshold = cauchy_bound(r);
  return out;
}

AsymptoticSign asymptotic_sign(const KPolynomial& p, const KPolynomial& q) {
  return asymptotic_sign(im_pairing(p, q));
}

RealPolynomial hilbert_polynomial(const SheafChern& E, const CohClass& L, const SurfaceData& X) {
  const Rational r(E.rank());
  return RealPolynomial({euler_characteristic(E, X),
                         r * intersect(L, X.canonical_c1(), X) / 2 + intersect(L, E.ch1(), X),
                         r * intersect(L, L, X) / 2});
}

GiesekerReport gieseker_compare(const SheafChern& E, const SheafChern& S, const SurfaceData& X,
                                const CohClass& L) {
  GiesekerReport g;
  g.hilbert_sub = hilbert_polynomial(S, L, X);
  g.hilbert_ambient = hilbert_polynomial(E, L, X);
  const Rational rk_ratio = Rational(S.rank()) / E.rank();
  g.reduced_gap = Rational(1, S.rank()) * g.hilbert_sub - Rational(1, E.rank()) * g.hilbert_ambient;
  g.verdict = g.reduced_gap.is_zero() ? Verdict::StrictlySemistable
                                      : classify({g.reduced_gap.leading()});
  g.ahe_margin = g.hilbert_ambient * (g.hilbert_sub - rk_ratio * g.hilbert_ambient);

  // Z(F) = chi_E(k) rk(F)/rk(E) + i chi_F(k), evaluated on E and on S.
  std::vector<GaussianRational> ze, zs;
  for (std::size_t i = 0; i < 3; ++i) {
    ze.emplace_back(g.hilbert_ambient.coeff(i), g.hilbert_ambient.coeff(i));
    zs.emplace_back(rk_ratio * g.hilbert_ambient.coeff(i), g.hilbert_sub.coeff(i));
  }
  g.ahe_pairing = im_pairing(KPolynomial(ze), KPolynomial(zs));
  g.ahe_sign = asymptotic_sign(g.ahe_margin);

  const Sign expected = g.reduced_gap.is_zero() ? Sign::Zero : sign_of(g.reduced_gap.leading());
  bool agree = g.ahe_pairing == g.ahe_margin && g.ahe_sign.sign == expected;
  if (g.ahe_sign.threshold) {
    // Spot-check the certified region with exact evaluation.
    const Rational k0 = *g.ahe_sign.threshold;
    for (const Rational& k : {k0, k0 + 1, 2 * k0 + 7}) {
      agree = agree && sign_of(g.ahe_margin.evaluate(k)) == g.ahe_sign.sign;
    }
  }
  g.signs_agree = agree;
  return g;
}

ScanResult destabilizer_scan(const StabilityVector& rho, const SurfaceData& X, const SheafChern& E,
                             const SheafChern& S) {
  const Rational vol = intersect(X.kahler(), X.kahler(), X);
  const Rational mu_e = mumford_slope(E, X);
  const Rational mu_s = mumford_slope(S, X);
  const Rational m_e = E.ch2() / E.rank();
  const Rational m_s = S.ch2() / S.rank();
  const Rational i01 = im_conj_product(rho[1], rho[0]);  // Im(rho0 conj rho1)
  const Rational i02 = im_conj_product(rho[2], rho[0]);  // Im(rho0 conj rho2)
  const Rational i12 = im_conj_product(rho[2], rho[1]);  // Im(rho1 conj rho2)

  ScanResult out;
  ScanPolynomial& p = out.poly;
  p.a = i01 * (mu_e - mu_s);
  p.b = i01 * (m_s - m_e) + i02 * (mu_s - mu_e);
  p.c = i01 * (m_s * mu_e - mu_s * m_e) / vol + i02 * (m_s - m_e) + i12 * (mu_s - mu_e);

  if (p.a != 0) {
    out.witness = ScanPoint{0, (1 - p.c) / p.a};
    out.note = "x = 0 and y chosen so that the margin polynomial equals 1";
  } else if (p.b != 0) {
    out.witness = ScanPoint{(1 - p.c) / p.b, 0};
    out.note = "a = 0: x chosen so that the margin polynomial equals 1";
  } else if (p.c > 0) {
    out.witness = ScanPoint{0, 0};
    out.note = "margin is the positive constant c for every (x, y)";
  } else if (p.c == 0) {
    out.identically_zero = true;
    out.z_unstable = true;
    out.note = "margin vanishes identically: E is Z-unstable for every (x, y)";
  } else {
    out.note = "margin is the negative constant c for every (x, y); no destabilising choice";
  }
  return out;
}

AlphaZeroReport alpha_zero_analysis(const CentralCharge& Z, const SurfaceData& X, const SheafChern& E,
                                    const std::vector<Candidate>& candidates) {
  AlphaZeroReport r;
  const GaussianRational zE = charge_surface(Z, X, E);
  const CohClass& w = X.kahler();
  const Rational vol = intersect(w, w, X);
  const Rational rk(E.rank());
  const Rational i10 = im_conj_product(Z.rho[1], Z.rho[0]);
  const Rational i20 = im_conj_product(Z.rho[2], Z.rho[0]);
  // U1.w + (i20/i10) w.w = -ch1.w/rk, cleared of denominators.
  r.condition_holds = i10 * (intersect(Z.u1, w, X) + intersect(E.ch1(), w, X) / rk) + i20 * vol == 0;
  r.beta_form_lhs = im_conj_product(Z.rho[2], Z.rho[1]) * rk * vol;
  r.beta_form_rhs = i10 * (rk * Z.u2 + intersect(Z.u1, E.ch1(), X) + E.ch2());

  if (zE.is_zero()) {
    r.notes.push_back("Z_X(E) = 0: phase undefined");
    return r;
  }
  r.a_hat = im_conj_product(zE, Z.rho[0]) / 2;
  r.beta_weight = im_conj_product(zE, Z.rho[1]);
  r.beta_sign = sign_of(r.beta_weight);
  r.in_regime = r.a_hat == 0;
  if (r.in_regime != r.condition_holds) r.notes.push_back("linear condition and a_hat disagree");
  if (!r.in_regime) {
    r.notes.push_back("not in the alpha=0 regime");
    return r;
  }
  const Rational mu_e = mumford_slope(E, X);
  for (const auto& cand : candidates) {
    AlphaZeroRow row{cand.label, im_conj_product(zE, charge_surface(Z, X, cand.sheaf)),
                     Rational(cand.sheaf.rank()) * r.beta_weight * (mumford_slope(cand.sheaf, X) - mu_e)};
    row.agree = row.margin == row.predicted;
    r.all_agree = r.all_agree && row.agree;
    r.rows.push_back(std::move(row));
  }
  return r;
}

TopExpansion ahe_top_expansion(const Rational& k) {
  // Polynomials in commuting symbols F, w; index [i][j] = coefficient of F^i w^j, i + j <= 2.
  using Poly = std::array<std::array<Rational, 3>, 3>;
  auto mul = [](const Poly& a, const Poly& b) {
    Poly out{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; i + j < 3; ++j)
        for (int p = 0; i + p < 3; ++p)
          for (int q = 0; i + j + p + q < 3; ++q) out[i + p][j + q] += a[i][j] * b[p][q];
    return out;
  };
  Poly x{}, expo{}, todd{};
  x[1][0] = 1;
  x[0][1] = k;
  expo[0][0] = 1;
  const Poly x2 = mul(x, x);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; i + j < 3; ++j) expo[i][j] += x[i][j] + x2[i][j] / 2;
  todd[0][0] = 1;
  todd[0][1] = Rational(1, 2);
  const Poly top = mul(expo, todd);
  return {2 * top[2][0], 2 * top[1][1]};
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Stable: return "Stable";
    case Verdict::StrictlySemistable: return "StrictlySemistable";
    case Verdict::Unstable: return "Unstable";
  }
  return "?";
}

const char* to_string(Sign s) {
  switch (s) {
    case Sign::Negative: return "Negative";
    case Sign::Zero: return "Zero";
    case Sign::Positive: return "Positive";
  }
  return "?";
}

const char* to_string(CandidateKind k) {
  return k == CandidateKind::Subobject ? "Subobject" : "Quotient";
}

}  // namespace zcrit
