#pragma once

#include "zcrit/charge.hpp"
#include "zcrit/cohomology.hpp"
#include "zcrit/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace zcrit {

enum class Verdict { Stable, StrictlySemistable, Unstable };
enum class Sign { Negative = -1, Zero = 0, Positive = 1 };
enum class CandidateKind { Subobject, Quotient };

Sign sign_of(const Rational& q);

Rational mumford_slope(const SheafChern& E, const SurfaceData& X);
Rational ma_slope(const SheafChern& E, const CohClass& theta, const SurfaceData& X);

struct Candidate {
  std::string label;
  SheafChern sheaf;
  CandidateKind kind = CandidateKind::Subobject;
};

struct Witness {
  std::string label;
  CandidateKind kind;
  // Im(conj Z(E) * Z(candidate)).
  Rational margin;
  // Margin in the subobject convention: quotient margins are negated, so < 0 is stable.
  Rational oriented_margin;
};

struct StabilityReport {
  Verdict verdict = Verdict::Stable;
  std::vector<Witness> witnesses;
  std::string convention;
};

// Classifies oriented margins: all < 0 stable, any > 0 unstable, otherwise strictly semistable.
Verdict classify(const std::vector<Rational>& oriented_margins);

StabilityReport z_stability(const CentralCharge& Z, const SurfaceData& X, const SheafChern& E,
                            const std::vector<Candidate>& candidates);

struct ComparisonIdentity {
  Rational lhs;
  Rational rhs;
  bool holds() const { return lhs == rhs; }
};

// lhs = Im(conj Z(E) Z(S)); rhs = 2 rk(S) a_hat (mu_MA(S) - mu_MA(E)) at the twist class. Throws AlphaZero.
ComparisonIdentity comparison_identity(const CentralCharge& Z, const SurfaceData& X, const SheafChern& E,
                                       const SheafChern& S);

Sign alpha_sign(const CentralCharge& Z, const SurfaceData& X, const SheafChern& E);

struct CurveRoutes {
  std::string label;
  // Route A: Im(conj Z_X(E) Z_V(E|V)).
  Rational charge_margin;
  // Route B: (2 a_hat ch1 + rk b_hat) . V.
  Rational class_pairing;
  bool agree = false;
};

struct BundlePositivityReport {
  Positivity verdict = Positivity::Positive;  // route A over the supplied curves
  CohClass positivity_class;                  // 2 a_hat ch1(E) + rk(E) b_hat
  NakaiVerdict class_route;                   // route B
  std::vector<CurveRoutes> curves;
  bool routes_agree = true;
  std::vector<std::string> notes;
};

BundlePositivityReport z_positive_bundle(const CentralCharge& Z, const SurfaceData& X, const SheafChern& E,
                                         NakaiOptions options = {});

struct QuotientPositivityReport {
  Positivity verdict = Positivity::NotPositive;
  // 2 a_hat deg(Q) + rk(Q) (b_hat . V).
  Rational value;
  // Im(conj Z_X(E) Z_V(Q)), equal to value by construction.
  Rational charge_margin;
  bool subsheaf_reading = false;
  std::vector<std::string> notes;
};

QuotientPositivityReport quotient_positive(const CentralCharge& Z, const SurfaceData& X, const SheafChern& E,
                                           const CohClass& V, const CurveSheaf& Q);

// b_hat.b_hat - 4 a_hat c_hat.
Rational volume_form_proxy(const ScaledCoefficients& c, const SurfaceData& X);

// 4 c2 - c1^2 for a rank 2 sheaf. Throws RankViolation.
Rational bogomolov_margin(const SheafChern& E, const SurfaceData& X);

struct PolystabilityReport {
  Rational margin_first;   // Im(conj Z(E) Z(L1))
  Rational margin_second;  // Im(conj Z(E) Z(L2))
  bool margins_nonpositive = false;
  Rational summand_pairing;  // Im(Z(L1) conj Z(L2))
  bool summands_aligned = false;
  // (2 a_hat L_i + b_hat)^2, with L_i^2 read as 2 ch2(L_i), against b_hat^2 - 4 a_hat c_hat.
  Rational square_first;
  Rational square_second;
  Rational discriminant;
  bool squares_match = false;
  bool equivalent = false;
  NakaiVerdict existence_first;
  NakaiVerdict existence_second;
  Sign alpha_first = Sign::Zero;
  Sign alpha_second = Sign::Zero;
  bool mixed_alpha_signs = false;
  std::vector<std::string> notes;
};

PolystabilityReport polystability_rank2(const CentralCharge& Z, const SurfaceData& X, const SheafChern& L1,
                                        const SheafChern& L2);

struct CurveMumfordReport {
  Verdict verdict;
  Rational sub_slope;
  Rational slope;
};

CurveMumfordReport curve_restriction_mumford(const CurveSheaf& E, const CurveSheaf& S);

// Im(conj Z_V(E|V) Z_V(S|V)); for Bayer-valid charges its sign is that of the Mumford slope gap.
Rational curve_charge_margin(const CentralCharge& Z, const SurfaceData& X, const CohClass& V,
                             const CurveSheaf& E, const CurveSheaf& S);

struct AsymptoticSign {
  Sign sign = Sign::Zero;
  // Sign is constant for k above this bound; absent for the zero polynomial.
  std::optional<Rational> threshold;
  RealPolynomial pairing;
};

AsymptoticSign asymptotic_sign(const KPolynomial& p, const KPolynomial& q);
AsymptoticSign asymptotic_sign(const RealPolynomial& r);

struct GiesekerReport {
  Verdict verdict;
  RealPolynomial hilbert_sub;      // chi(S (x) L^k)
  RealPolynomial hilbert_ambient;  // chi(E (x) L^k)
  // Reduced Hilbert polynomial gap P_S/rk(S) - P_E/rk(E).
  RealPolynomial reduced_gap;
  // chi_E(k) (chi_S(k) - chi_E(k) rk(S)/rk(E)).
  RealPolynomial ahe_margin;
  // The same margin from the aHE charge pairing.
  RealPolynomial ahe_pairing;
  AsymptoticSign ahe_sign;
  bool signs_agree = false;
};

// chi(E (x) L^k) as a polynomial in k.
RealPolynomial hilbert_polynomial(const SheafChern& E, const CohClass& L, const SurfaceData& X);

GiesekerReport gieseker_compare(const SheafChern& E, const SheafChern& S, const SurfaceData& X,
                                const CohClass& L);

struct ScanPolynomial {
  Rational a;
  Rational b;
  Rational c;
  Rational evaluate(const Rational& x, const Rational& y) const { return a * y - a * x * x + b * x + c; }
};

struct ScanPoint {
  Rational x;
  Rational y;
};

struct ScanResult {
  ScanPolynomial poly;
  std::optional<ScanPoint> witness;
  bool identically_zero = false;
  // Margin is never negative on the whole (x, y) plane, so E is not Z-stable for any such U.
  bool z_unstable = false;
  std::string note;
};

// U = 1 + x omega + y omega^2; poly is the subobject margin divided by rk(E) rk(S) (omega.omega).
ScanResult destabilizer_scan(const StabilityVector& rho, const SurfaceData& X, const SheafChern& E,
                             const SheafChern& S);

struct AlphaZeroRow {
  std::string label;
  Rational margin;
  Rational predicted;  // rk(S) Im(conj Z rho1) (mu(S) - mu(E))
  bool agree = false;
};

struct AlphaZeroReport {
  bool in_regime = false;
  // The linear condition on U1 computed from rho directly.
  bool condition_holds = false;
  Rational a_hat;
  Rational beta_weight;  // Im(conj Z rho1)
  Sign beta_sign = Sign::Zero;
  Rational beta_form_lhs;  // Im(rho1 conj rho2) rk (omega.omega)
  Rational beta_form_rhs;  // Im(rho0 conj rho1) (rk u2 + U1.ch1 + ch2)
  std::vector<AlphaZeroRow> rows;
  bool all_agree = true;
  std::vector<std::string> notes;
};

AlphaZeroReport alpha_zero_analysis(const CentralCharge& Z, const SurfaceData& X, const SheafChern& E,
                                    const std::vector<Candidate>& candidates);

// Coefficients (F^2, omega^F) of twice the top-degree part of exp(F + k omega) Td_X
// when Td_1 = omega / 2, i.e. [omega] = c1(X).
struct TopExpansion {
  Rational curvature_square;
  Rational omega_curvature;
};
TopExpansion ahe_top_expansion(const Rational& k);

const char* to_string(Verdict v);
const char* to_string(Sign s);
const char* to_string(CandidateKind k);

}  // namespace zcrit
