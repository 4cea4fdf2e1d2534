#include "tasks.hpp"

#include "zcrit/pointform.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>

namespace zcrit::cli {
namespace {

struct TaskContext {
  std::vector<std::string> warnings;
  // A verification that ran but did not hold; the task is reported as failed.
  std::optional<std::string> failure;
  std::uint64_t seed = 0;
};

enum class Ref { Sheaf, CurveSheaf, Curve, Charge, Candidates };

struct FieldRef {
  const char* key;
  Ref table;
  bool required = true;
};

using Runner = std::function<Json(const Config&, const TaskSpec&, TaskContext&)>;

struct TaskKind {
  const char* name;
  Group group;
  std::vector<FieldRef> refs;
  Runner run;
};

// ---- parameter helpers ----

const YAML::Node param(const TaskSpec& t, const char* key) { return t.params[key]; }

Rational rational_param(const TaskSpec& t, const char* key, std::optional<Rational> fallback = std::nullopt) {
  const YAML::Node n = param(t, key);
  if (!n) {
    if (fallback) return *fallback;
    throw ConfigError("task '" + t.id + "': missing parameter '" + key + "'");
  }
  return parse_rational_node(n);
}

std::vector<Rational> rational_list(const TaskSpec& t, const char* key, std::vector<Rational> fallback) {
  const YAML::Node n = param(t, key);
  if (!n) return fallback;
  std::vector<Rational> out;
  for (const auto& x : n) out.push_back(parse_rational_node(x));
  return out;
}

double double_param(const TaskSpec& t, const char* key, double fallback) {
  const YAML::Node n = param(t, key);
  if (!n) return fallback;
  try {
    return n.as<double>();
  } catch (const YAML::Exception&) {
    return to_double(parse_rational_node(n));
  }
}

std::uint64_t uint_param(const TaskSpec& t, const char* key, std::uint64_t fallback) {
  const YAML::Node n = param(t, key);
  return n ? n.as<std::uint64_t>() : fallback;
}

bool bool_param(const TaskSpec& t, const char* key, bool fallback) {
  const YAML::Node n = param(t, key);
  return n ? n.as<bool>() : fallback;
}

const CentralCharge& charge_of(const Config& c, const TaskSpec& t, TaskContext& ctx, const char* key = "charge") {
  const NamedCharge& nc = charge_ref(c, t, key);
  if (!nc.validation.valid) {
    std::string msg = "charge '" + param(t, key).Scalar() + "' fails " + to_string(nc.mode) + " validation:";
    for (const auto& v : nc.validation.violations) msg += " " + v + ";";
    ctx.warnings.push_back(msg);
  }
  return nc.charge;
}

std::vector<Candidate> candidates_of(const Config& c, const TaskSpec& t) {
  std::vector<Candidate> out;
  const YAML::Node list = param(t, "candidates");
  if (!list) return out;
  if (!list.IsSequence()) throw ConfigError("task '" + t.id + "': candidates must be a list");
  for (const auto& entry : list) {
    std::string name;
    CandidateKind kind = CandidateKind::Subobject;
    if (entry.IsScalar()) {
      name = entry.Scalar();
    } else {
      name = entry["sheaf"] ? entry["sheaf"].Scalar() : "";
      if (entry["kind"]) {
        const std::string k = entry["kind"].Scalar();
        if (k == "quotient") kind = CandidateKind::Quotient;
        else if (k != "sub" && k != "subobject") throw ConfigError("task '" + t.id + "': unknown candidate kind \"" + k + "\"");
      }
    }
    const auto it = c.sheaves.find(name);
    if (it == c.sheaves.end()) throw ReferenceError("task '" + t.id + "': undefined sheaf '" + name + "' in candidates");
    out.push_back({name, it->second, kind});
  }
  return out;
}

StabilityVector rho_of(const Config& c, const TaskSpec& t, TaskContext& ctx) {
  if (param(t, "rho")) return parse_rho(param(t, "rho"));
  return charge_of(c, t, ctx).rho;
}

void note_curve_list(const Config& c, TaskContext& ctx) {
  if (!c.X().curves_exhaustive())
    ctx.warnings.push_back("curve list is not known to be exhaustive; curve checks are partial");
}

Json witnesses_json(const std::vector<Witness>& ws) {
  Json out = Json::array();
  for (const auto& w : ws)
    out.push_back({{"label", w.label},
                   {"kind", to_string(w.kind)},
                   {"margin", encode(w.margin)},
                   {"oriented_margin", encode(w.oriented_margin)}});
  return out;
}

// ---- eval ----

Json run_charge(const Config& c, const TaskSpec& t, TaskContext& ctx) {
  const CentralCharge& Z = charge_of(c, t, ctx);
  const GaussianRational z = charge_surface(Z, c.X(), sheaf_ref(c, t, "sheaf"));
  Json r{{"value", encode(z)}};
  r["phase"] = z.is_zero() ? Json(nullptr) : Json(phase_angle(z));
  return r;
}

Json run_curve_charge(const Config& c, const TaskSpec& t, TaskContext& ctx) {
  const CentralCharge& Z = charge_of(c, t, ctx);
  return {{"value", encode(charge_curve(Z, c.X(), curve_ref(c, t, "curve"), curve_sheaf_ref(c, t, "curve_sheaf")))}};
}

Json run_point_charge(const Config& c, const TaskSpec& t, TaskContext& ctx) {
  const CentralCharge& Z = charge_of(c, t, ctx);
  const Rational rank = rational_param(t, "rank", Rational(1));
  if (denominator(rank) != 1) throw ConfigError("task '" + t.id + "': rank must be an integer");
  return {{"value", encode(charge_point(Z, numerator(rank).convert_to<long>()))}};
}

Json run_coefficients(const Config& c, const TaskSpec& t, TaskContext& ctx) {
  const CentralCharge& Z = charge_of(c, t, ctx);
  const ScaledCoefficients k = coefficients(Z, c.X(), sheaf_ref(c, t, "sheaf"));
  Json r{{"a_hat", encode(k.a_hat)},
         {"b_hat", encode(k.b_hat, c.X())},
         {"c_hat", encode(k.c_hat)},
         {"charge", encode(k.zE)},
         {"alpha_sign", to_string(sign_of(k.a_hat))}};
  if (k.a_hat != 0) {
    r["theta"] = encode(theta_class(k), c.X());
  } else {
    r["theta"] = nullptr;
    ctx.warnings.push_back("a_hat = 0: twist class undefined");
  }
  return r;
}

Json run_validate(const Config& c, const TaskSpec& t, TaskContext&) {
  const NamedCharge& nc = charge_ref(c, t, "charge");
  Json r = encode(nc.validation);
  r["mode"] = to_string(nc.mode);
  if (param(t, "mode")) {
    const std::string m = param(t, "mode").Scalar();
    const ValidationMode mode = m == "LargeVolume" ? ValidationMode::LargeVolume
                                : m == "None"      ? ValidationMode::None
                                                   : ValidationMode::Bayer;
    r = encode(validate(nc.charge, mode));
    r["mode"] = to_string(mode);
  }
  return r;
}

Json run_charge_poly(const Config& c, const TaskSpec& t, TaskContext& ctx) {
  const CentralCharge& Z = charge_of(c, t, ctx);
  if (param(t, "curve")) {
    return {{"coefficients", encode(charge_poly_k(Z, c.X(), curve_ref(c, t, "curve"), curve_sheaf_ref(c, t, "curve_sheaf")))}};
  }
  return {{"coefficients", encode(charge_poly_k(Z, c.X(), sheaf_ref(c, t, "sheaf")))}};
}

// ---- stability ----

Json run_z_stability(const Config& c, const TaskSpec& t, TaskContext& ctx) {
  const CentralCharge& Z = charge_of(c, t, ctx);
  const StabilityReport rep = z_stability(Z, c.X(), sheaf_ref(c, t, "sheaf"), candidates_of(c, t));
  if (rep.witnesses.empty()) ctx.warnings.push_back("no candidates: verdict is vacuous");
  return {{"verdict", to_string(rep.verdict)}, {"convention", rep.convention}, {"witnesses", witnesses_json(rep.witnesses)}};
}

Json run_comparison(const Config& c, const TaskSpec& t, TaskContext& ctx) {
  const CentralCharge& Z = charge_of(c, t, ctx);
  const ComparisonIdentity id = comparison_identity(Z, c.X(), sheaf_ref(c, t, "sheaf"), sheaf_ref(c, t, "sub"));
  if (!id.holds()) ctx.failure = "comparison identity does not hold";
  return {{"lhs", encode(id.lhs)}, {"rhs", encode(id.rhs)}, {"holds", id.holds()}};
}

Json run_gieseker(const Config& c, const TaskSpec& t, TaskContext&) {
  const CohClass L = param(t, "polarization") ? parse_class(param(t, "polarization"), c.X()) : c.X().kahler();
  const GiesekerReport g = gieseker_compare(sheaf_ref(c, t, "sheaf"), sheaf_ref(c, t, "sub"), c.X(), L);
  return {{"verdict", to_string(g.verdict)},
          {"hilbert_sub", encode(g.hilbert_sub)},
          {"hilbert_ambient", encode(g.hilbert_ambient)},
          {"reduced_gap", encode(g.reduced_gap)},
          {"ahe_margin", encode(g.ahe_margin)},
          {"ahe_pairing", encode(g.ahe_pairing)},
          {"ahe_sign", encode(g.ahe_sign)},
          {"signs_agree", g.signs_agree}};
}

Json run_polystability(const Config& c, const TaskSpec& t, TaskContext& ctx) {
  const CentralCharge& Z = charge_of(c, t, ctx);
  const PolystabilityReport p = polystability_rank2(Z, c.X(), sheaf_ref(c, t, "first"), sheaf_ref(c, t, "second"));
  for (const auto& n : p.notes) ctx.warnings.push_back(n);
  return {{"margin_first", encode(p.margin_first)},
          {"margin_second", encode(p.margin_second)},
          {"margins_nonpositive", p.margins_nonpositive},
          {"summand_pairing", encode(p.summand_pairing)},
          {"summands_aligned", p.summands_aligned},
          {"square_first", encode(p.square_first)},
          {"square_second", encode(p.square_second)},
          {"discriminant", encode(p.discriminant)},
          {"squares_match", p.squares_match},
          {"equivalent", p.equivalent},
          {"existence_first", encode(p.existence_first)},
          {"existence_second", encode(p.existence_second)},
          {"alpha_first", to_string(p.alpha_first)},
          {"alpha_second", to_string(p.alpha_second)},
          {"mixed_alpha_signs", p.mixed_alpha_signs}};
}

Json run_curve_mumford(const Config& c, const TaskSpec& t, TaskContext& ctx) {
  const CurveSheaf& E = curve_sheaf_ref(c, t, "curve_sheaf");
  const CurveSheaf& S = curve_sheaf_ref(c, t, "sub");
  const CurveMumfordReport m = curve_restriction_mumford(E, S);
  Json r{{"verdict", to_string(m.verdict)}, {"sub_slope", encode(m.sub_slope)}, {"slope", encode(m.slope)}};
  if (param(t, "charge") && param(t, "curve")) {
    const CentralCharge& Z = charge_of(c, t, ctx);
    r["charge_margin"] = encode(curve_charge_margin(Z, c.X(), curve_ref(c, t, "curve"), E, S));
  }
  return r;
}

Json run_alpha_zero(const Config& c, const TaskSpec& t, TaskContext& ctx) {
  const CentralCharge& Z = charge_of(c, t, ctx);
  const AlphaZeroReport a = alpha_zero_analysis(Z, c.X(), sheaf_ref(c, t, "sheaf"), candidates_of(c, t));
  Json rows = Json::array();
  for (const auto& row : a.rows)
    rows.push_back({{"label", row.label}, {"margin", encode(row.margin)}, {"predicted", encode(row.predicted)}, {"agree", row.agree}});
  for (const auto& n : a.notes) ctx.warnings.push_back(n);
  if (a.in_regime && !a.all_agree) ctx.failure = "alpha=0 margins disagree with the prediction";
  return {{"in_regime", a.in_regime},
          {"condition_holds", a.condition_holds},
          {"a_hat", encode(a.a_hat)},
          {"beta_weight", encode(a.beta_weight)},
          {"beta_sign", to_string(a.beta_sign)},
          {"beta_form_lhs", encode(a.beta_form_lhs)},
          {"beta_form_rhs", encode(a.beta_form_rhs)},
          {"rows", rows},
          {"all_agree", a.all_agree}};
}

// ---- positivity ----

Json run_bundle_positivity(const Config& c, const TaskSpec& t, TaskContext& ctx) {
  const CentralCharge& Z = charge_of(c, t, ctx);
  const BundlePositivityReport b =
      z_positive_bundle(Z, c.X(), sheaf_ref(c, t, "sheaf"), {.strict = bool_param(t, "strict", false)});
  note_curve_list(c, ctx);
  for (const auto& n : b.notes) ctx.warnings.push_back(n);
  if (b.verdict == Positivity::Unknown) ctx.warnings.push_back("positivity Unknown");
  Json curves = Json::array();
  for (const auto& r : b.curves)
    curves.push_back({{"curve", r.label},
                      {"charge_margin", encode(r.charge_margin)},
                      {"class_pairing", encode(r.class_pairing)},
                      {"agree", r.agree}});
  if (!b.routes_agree) ctx.failure = "curve routes disagree";
  return {{"verdict", to_string(b.verdict)},
          {"positivity_class", encode(b.positivity_class, c.X())},
          {"class_route", encode(b.class_route)},
          {"curves", curves},
          {"routes_agree", b.routes_agree}};
}

Json run_quotient_positivity(const Config& c, const TaskSpec& t, TaskContext& ctx) {
  const CentralCharge& Z = charge_of(c, t, ctx);
  const QuotientPositivityReport q = quotient_positive(Z, c.X(), sheaf_ref(c, t, "sheaf"), curve_ref(c, t, "curve"),
                                                       curve_sheaf_ref(c, t, "quotient"));
  for (const auto& n : q.notes) ctx.warnings.push_back(n);
  return {{"verdict", to_string(q.verdict)},
          {"value", encode(q.value)},
          {"charge_margin", encode(q.charge_margin)},
          {"subsheaf_reading", q.subsheaf_reading}};
}

Json run_alpha_sign(const Config& c, const TaskSpec& t, TaskContext& ctx) {
  return {{"sign", to_string(alpha_sign(charge_of(c, t, ctx), c.X(), sheaf_ref(c, t, "sheaf")))}};
}

Json run_volume_proxy(const Config& c, const TaskSpec& t, TaskContext& ctx) {
  const ScaledCoefficients k = coefficients(charge_of(c, t, ctx), c.X(), sheaf_ref(c, t, "sheaf"));
  const Rational v = volume_form_proxy(k, c.X());
  return {{"proxy", encode(v)}, {"sign", to_string(sign_of(v))}};
}

Json run_bogomolov(const Config& c, const TaskSpec& t, TaskContext&) {
  const Rational m = bogomolov_margin(sheaf_ref(c, t, "sheaf"), c.X());
  return {{"margin", encode(m)}, {"sign", to_string(sign_of(m))}};
}

Json run_lambda_window(const Config& c, const TaskSpec& t, TaskContext& ctx) {
  const StabilityVector rho = parse_rho(param(t, "rho"));
  const SheafChern& E = sheaf_ref(c, t, "sheaf");
  const CohClass& V = curve_ref(c, t, "curve");
  const CurveSheaf& EV = curve_sheaf_ref(c, t, "curve_sheaf");
  const Rational from = rational_param(t, "from"), to = rational_param(t, "to"), step = rational_param(t, "step");
  if (step <= 0 || to < from) throw ConfigError("task '" + t.id + "': need step > 0 and from <= to");

  Json rows = Json::array();
  std::optional<Rational> lo, hi;
  for (Rational lambda = from; lambda <= to; lambda += step) {
    const CentralCharge Z = make_charge(rho, exp_kahler_unitary(lambda, c.X()));
    const Rational value = pair_im(Z, c.X(), E, charge_curve(Z, c.X(), V, EV));
    if (value < 0) {
      if (!lo) lo = lambda;
      hi = lambda;
    }
    rows.push_back({{"lambda", encode(lambda)}, {"value", encode(value)}, {"sign", to_string(sign_of(value))}});
  }
  if (!validate(rho, ValidationMode::Bayer).valid) ctx.warnings.push_back("rho fails Bayer validation");
  Json r{{"rows", rows}};
  r["negative_from"] = lo ? encode(*lo) : Json(nullptr);
  r["negative_to"] = hi ? encode(*hi) : Json(nullptr);
  return r;
}

// ---- scan ----

Json run_destabilizer_scan(const Config& c, const TaskSpec& t, TaskContext& ctx) {
  const StabilityVector rho = rho_of(c, t, ctx);
  const SheafChern& E = sheaf_ref(c, t, "sheaf");
  const SheafChern& S = sheaf_ref(c, t, "sub");
  const ScanResult s = destabilizer_scan(rho, c.X(), E, S);
  Json r{{"a", encode(s.poly.a)},
         {"b", encode(s.poly.b)},
         {"c", encode(s.poly.c)},
         {"identically_zero", s.identically_zero},
         {"z_unstable", s.z_unstable},
         {"note", s.note}};
  if (!s.witness) {
    r["witness"] = nullptr;
    return r;
  }
  r["witness"] = {{"x", encode(s.witness->x)}, {"y", encode(s.witness->y)}};
  // Feed the witness back through the stability check.
  const CentralCharge Z = make_charge(rho, scan_unitary(s.witness->x, s.witness->y, c.X()));
  if (charge_surface(Z, c.X(), E).is_zero()) {
    ctx.warnings.push_back("Z(E) = 0 at the witness; re-evaluation skipped");
    return r;
  }
  const StabilityReport rep = z_stability(Z, c.X(), E, {{"sub", S, CandidateKind::Subobject}});
  r["witness_margin"] = encode(rep.witnesses.front().margin);
  r["witness_verdict"] = to_string(rep.verdict);
  return r;
}

Json run_k_sweep(const Config& c, const TaskSpec& t, TaskContext& ctx) {
  const CentralCharge& Z = charge_of(c, t, ctx);
  KPolynomial ambient, sub;
  if (param(t, "curve")) {
    const CohClass& V = curve_ref(c, t, "curve");
    ambient = charge_poly_k(Z, c.X(), V, curve_sheaf_ref(c, t, "curve_sheaf"));
    sub = charge_poly_k(Z, c.X(), V, curve_sheaf_ref(c, t, "sub"));
  } else {
    ambient = charge_poly_k(Z, c.X(), sheaf_ref(c, t, "sheaf"));
    sub = charge_poly_k(Z, c.X(), sheaf_ref(c, t, "sub"));
  }
  const AsymptoticSign a = asymptotic_sign(ambient, sub);
  Json values = Json::array();
  for (const Rational& k : rational_list(t, "ks", {})) {
    const Rational v = a.pairing.evaluate(k);
    values.push_back({{"k", encode(k)}, {"pairing", encode(v)}, {"sign", to_string(sign_of(v))}});
  }
  return {{"ambient", encode(ambient)}, {"sub", encode(sub)}, {"asymptotic", encode(a)}, {"values", values}};
}

Json run_top_expansion(const Config&, const TaskSpec& t, TaskContext&) {
  Json rows = Json::array();
  for (const Rational& k : rational_list(t, "ks", {Rational(1), Rational(2), Rational(3)})) {
    const TopExpansion e = ahe_top_expansion(k);
    rows.push_back({{"k", encode(k)}, {"curvature_square", encode(e.curvature_square)}, {"omega_curvature", encode(e.omega_curvature)}});
  }
  return {{"rows", rows}};
}

// ---- verify ----

Json suite_json(const pointform::SuiteResult& s) {
  return {{"trials", s.trials}, {"failures", s.failures}, {"worst", s.worst}};
}

Json run_identity_suites(const Config&, const TaskSpec& t, TaskContext& ctx) {
  const std::uint64_t trials = uint_param(t, "trials", 10000);
  const double tol = double_param(t, "tolerance", 1e-10);
  const std::uint64_t seed = uint_param(t, "seed", ctx.seed);
  const pointform::IdentitySuites s = pointform::run_identity_suites(seed, trials, tol);
  const std::uint64_t failures = s.trace_quartic.failures + s.trace_swap.failures + s.subsol1.failures +
                                 s.cayley_hamilton.failures + s.corank1.failures;
  if (failures > 0) ctx.failure = std::to_string(failures) + " identity checks exceeded the tolerance";
  return {{"seed", seed},
          {"tolerance", tol},
          {"trace_quartic", suite_json(s.trace_quartic)},
          {"trace_swap", suite_json(s.trace_swap)},
          {"subsol1", suite_json(s.subsol1)},
          {"cayley_hamilton", suite_json(s.cayley_hamilton)},
          {"corank1", suite_json(s.corank1)},
          {"corank1_claimed_identity_worst_gap", s.corank1_claimed_identity_worst_gap}};
}

Json run_flatness(const Config&, const TaskSpec& t, TaskContext& ctx) {
  std::vector<double> xs;
  for (const Rational& x : rational_list(t, "xs", {Rational(-2), Rational(-1), Rational(0), Rational(1), Rational(2)}))
    xs.push_back(to_double(x));
  const pointform::FlatnessReport f = pointform::extension_flatness_check(xs);
  const double tol = double_param(t, "tolerance", 1e-10);
  Json dhym = Json::array();
  double worst = std::max({f.fs_shift_residual, f.sub_block_residual, f.quotient_block_residual, f.full_residual, f.a_star_a_residual});
  for (const auto& [x, res] : f.dhym_residuals) {
    dhym.push_back({{"x", x}, {"residual", res}});
    worst = std::max(worst, res);
  }
  if (worst > tol) ctx.failure = "flatness residual above tolerance";
  if (f.holomorphic_residual > 1e-6) ctx.failure = "second fundamental form is not holomorphic to 1e-6";
  return {{"fs_shift_residual", f.fs_shift_residual},
          {"sub_block_residual", f.sub_block_residual},
          {"quotient_block_residual", f.quotient_block_residual},
          {"full_residual", f.full_residual},
          {"a_star_a_residual", f.a_star_a_residual},
          {"holomorphic_residual", f.holomorphic_residual},
          {"dhym_residuals", dhym}};
}

Json run_fs_identities(const Config&, const TaskSpec& t, TaskContext& ctx) {
  using namespace pointform;
  const MatrixForm F = fs_curvature_tp2();
  const MatrixForm w = kahler_form(2);
  const MatrixForm target = Complex(1.5) * wedge(w, w);
  const double f_omega = (wedge(F, w) - target).max_abs();
  const double f_square = (wedge(F, F) - target).max_abs();
  const double trace_res = (trace(F) - Complex(3.0) * kahler_form(1)).max_abs();
  const double self_adjoint = (F - adjoint(F)).max_abs();
  const double tol = double_param(t, "tolerance", 1e-12);
  if (std::max({f_omega, f_square, trace_res, self_adjoint}) > tol) ctx.failure = "Fubini-Study identity above tolerance";
  return {{"curvature_wedge_omega", f_omega},
          {"curvature_square", f_square},
          {"trace_minus_3_omega", trace_res},
          {"self_adjoint", self_adjoint}};
}

Json run_positivity_gram(const Config&, const TaskSpec& t, TaskContext&) {
  using namespace pointform;
  const std::string form = param(t, "form") ? param(t, "form").Scalar() : "dhym_tp2";
  const double scale = double_param(t, "scale", 1.0);
  MatrixForm R(2);
  if (form == "dhym_tp2") {
    // 2 a_hat F + b_hat with a_hat = 3/2 and b_hat = -omega/2.
    R = Complex(3.0) * fs_curvature_tp2() - Complex(0.5) * kahler_form(2);
  } else if (form == "fs") {
    R = fs_curvature_tp2();
  } else if (form == "omega") {
    R = kahler_form(static_cast<int>(uint_param(t, "rank", 2)));
  } else if (form != "zero") {
    throw ConfigError("task '" + t.id + "': unknown form \"" + form + "\"");
  }
  R *= Complex(scale);
  const PositivityGram g = positivity_gram(R);
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Matrix>(g.gram).eigenvalues();
  return {{"form", form},
          {"min_eigenvalue", g.min_eigenvalue},
          {"eigenvalues", std::vector<double>(ev.data(), ev.data() + ev.size())},
          {"hermitian_defect", g.hermitian_defect},
          {"positive", g.min_eigenvalue > 0}};
}

const std::vector<TaskKind>& registry() {
  static const std::vector<TaskKind> kinds{
      {"charge", Group::Eval, {{"charge", Ref::Charge}, {"sheaf", Ref::Sheaf}}, run_charge},
      {"curve_charge", Group::Eval, {{"charge", Ref::Charge}, {"curve", Ref::Curve}, {"curve_sheaf", Ref::CurveSheaf}}, run_curve_charge},
      {"point_charge", Group::Eval, {{"charge", Ref::Charge}}, run_point_charge},
      {"coefficients", Group::Eval, {{"charge", Ref::Charge}, {"sheaf", Ref::Sheaf}}, run_coefficients},
      {"validate", Group::Eval, {{"charge", Ref::Charge}}, run_validate},
      {"charge_poly", Group::Eval,
       {{"charge", Ref::Charge}, {"sheaf", Ref::Sheaf, false}, {"curve", Ref::Curve, false}, {"curve_sheaf", Ref::CurveSheaf, false}},
       run_charge_poly},
      {"z_stability", Group::Stability, {{"charge", Ref::Charge}, {"sheaf", Ref::Sheaf}, {"candidates", Ref::Candidates, false}}, run_z_stability},
      {"comparison_identity", Group::Stability, {{"charge", Ref::Charge}, {"sheaf", Ref::Sheaf}, {"sub", Ref::Sheaf}}, run_comparison},
      {"gieseker", Group::Stability, {{"sheaf", Ref::Sheaf}, {"sub", Ref::Sheaf}}, run_gieseker},
      {"polystability", Group::Stability, {{"charge", Ref::Charge}, {"first", Ref::Sheaf}, {"second", Ref::Sheaf}}, run_polystability},
      {"curve_mumford", Group::Stability,
       {{"curve_sheaf", Ref::CurveSheaf}, {"sub", Ref::CurveSheaf}, {"charge", Ref::Charge, false}, {"curve", Ref::Curve, false}},
       run_curve_mumford},
      {"alpha_zero", Group::Stability, {{"charge", Ref::Charge}, {"sheaf", Ref::Sheaf}, {"candidates", Ref::Candidates, false}}, run_alpha_zero},
      {"bundle_positivity", Group::Positivity, {{"charge", Ref::Charge}, {"sheaf", Ref::Sheaf}}, run_bundle_positivity},
      {"quotient_positivity", Group::Positivity,
       {{"charge", Ref::Charge}, {"sheaf", Ref::Sheaf}, {"curve", Ref::Curve}, {"quotient", Ref::CurveSheaf}},
       run_quotient_positivity},
      {"alpha_sign", Group::Positivity, {{"charge", Ref::Charge}, {"sheaf", Ref::Sheaf}}, run_alpha_sign},
      {"volume_proxy", Group::Positivity, {{"charge", Ref::Charge}, {"sheaf", Ref::Sheaf}}, run_volume_proxy},
      {"bogomolov", Group::Positivity, {{"sheaf", Ref::Sheaf}}, run_bogomolov},
      {"lambda_window", Group::Positivity, {{"sheaf", Ref::Sheaf}, {"curve", Ref::Curve}, {"curve_sheaf", Ref::CurveSheaf}}, run_lambda_window},
      {"destabilizer_scan", Group::Scan, {{"charge", Ref::Charge, false}, {"sheaf", Ref::Sheaf}, {"sub", Ref::Sheaf}}, run_destabilizer_scan},
      {"k_sweep", Group::Scan,
       {{"charge", Ref::Charge}, {"sheaf", Ref::Sheaf, false}, {"sub", Ref::Sheaf, false}, {"curve", Ref::Curve, false},
        {"curve_sheaf", Ref::CurveSheaf, false}},
       run_k_sweep},
      {"top_expansion", Group::Scan, {}, run_top_expansion},
      {"identity_suites", Group::Verify, {}, run_identity_suites},
      {"flatness", Group::Verify, {}, run_flatness},
      {"fs_identities", Group::Verify, {}, run_fs_identities},
      {"positivity_gram", Group::Verify, {}, run_positivity_gram},
  };
  return kinds;
}

const TaskKind* find_kind(std::string_view name) {
  for (const auto& k : registry())
    if (name == k.name) return &k;
  return nullptr;
}

void check_task(const Config& c, const TaskSpec& t) {
  const TaskKind* kind = find_kind(t.kind);
  if (!kind) throw ConfigError("task '" + t.id + "': unknown kind \"" + t.kind + "\"");
  for (const FieldRef& f : kind->refs) {
    if (!t.params[f.key]) {
      if (f.required) throw ReferenceError("task '" + t.id + "': missing field '" + f.key + "'");
      continue;
    }
    switch (f.table) {
      case Ref::Sheaf: sheaf_ref(c, t, f.key); break;
      case Ref::CurveSheaf: curve_sheaf_ref(c, t, f.key); break;
      case Ref::Curve: curve_ref(c, t, f.key); break;
      case Ref::Charge: charge_ref(c, t, f.key); break;
      case Ref::Candidates: candidates_of(c, t); break;
    }
  }
  // Kinds whose shape depends on optional fields.
  if (t.kind == "destabilizer_scan" && !t.params["charge"] && !t.params["rho"])
    throw ReferenceError("task '" + t.id + "': needs 'rho' or 'charge'");
  if ((t.kind == "k_sweep" || t.kind == "charge_poly") && !t.params["sheaf"] && !t.params["curve"])
    throw ReferenceError("task '" + t.id + "': needs 'sheaf' or 'curve'");
}

Json charges_json(const Config& c) {
  Json out = Json::object();
  for (const auto& [name, nc] : c.charges) {
    Json rho = Json::array();
    for (const auto& z : nc.charge.rho) rho.push_back(encode(z));
    out[name] = {{"rho", rho},
                 {"u1", encode(nc.charge.u1, c.X())},
                 {"u2", encode(nc.charge.u2)},
                 {"mode", to_string(nc.mode)},
                 {"validation", encode(nc.validation)}};
  }
  return out;
}

}  // namespace

const char* to_string(Group g) {
  switch (g) {
    case Group::Eval: return "eval";
    case Group::Stability: return "stability";
    case Group::Positivity: return "positivity";
    case Group::Scan: return "scan";
    case Group::Verify: return "verify";
  }
  return "?";
}

std::optional<Group> group_of(std::string_view kind) {
  if (const TaskKind* k = find_kind(kind)) return k->group;
  return std::nullopt;
}

std::vector<std::string> task_kinds() {
  std::vector<std::string> out;
  for (const auto& k : registry()) out.emplace_back(k.name);
  return out;
}

void check_references(const Config& c) {
  for (const auto& t : c.tasks) check_task(c, t);
}

RunOutcome run(const Config& c, const RunOptions& options) {
  check_references(c);
  const std::size_t n = c.tasks.size();
  std::vector<Json> records(n);

  auto execute = [&](std::size_t i) {
    const TaskSpec& t = c.tasks[i];
    const TaskKind& kind = *find_kind(t.kind);
    Json rec{{"id", t.id}, {"kind", t.kind}, {"group", to_string(kind.group)}};
    rec["inputs"] = yaml_to_json(t.params);
    rec["inputs"].erase("id");
    rec["inputs"].erase("kind");
    if (options.only && *options.only != kind.group) {
      rec["status"] = "skipped";
      rec["warnings"] = Json::array();
      records[i] = std::move(rec);
      return;
    }
    TaskContext ctx;
    ctx.seed = c.seed;
    spdlog::debug("task {} ({}) started", t.id, t.kind);
    try {
      rec["result"] = kind.run(c, t, ctx);
      rec["status"] = ctx.failure ? "failed" : "ok";
      if (ctx.failure) rec["error"] = *ctx.failure;
    } catch (const std::exception& e) {
      rec["status"] = "error";
      rec["error"] = e.what();
      spdlog::warn("task {} failed: {}", t.id, e.what());
    }
    rec["warnings"] = ctx.warnings;
    records[i] = std::move(rec);
    spdlog::debug("task {} finished", t.id);
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) execute(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) execute(i);
      });
  }

  RunOutcome out;
  int ok = 0, failed = 0, skipped = 0;
  Json tasks = Json::array();
  for (auto& r : records) {
    const std::string status = r["status"];
    if (status == "ok") ++ok;
    else if (status == "skipped") ++skipped;
    else ++failed;
    tasks.push_back(std::move(r));
  }
  out.report = {{"tool", "zcrit"},
                {"seed", c.seed},
                {"surface", c.surface_name},
                {"basis", c.X().basis_labels()},
                {"kahler", encode(c.X().kahler(), c.X())},
                {"curves_exhaustive", c.X().curves_exhaustive()},
                {"charges", charges_json(c)},
                {"tasks", tasks},
                {"summary", {{"ok", ok}, {"failed", failed}, {"skipped", skipped}}}};
  out.exit_code = failed > 0 ? 1 : 0;
  return out;
}

std::string builtin_verify_yaml() {
  return R"(surface: P2
tasks:
  - {id: fs, kind: fs_identities}
  - {id: flatness, kind: flatness, xs: [-2, -1, 0, 1/2, 1, 3]}
  - {id: gram_dhym, kind: positivity_gram, form: dhym_tp2}
  - {id: gram_zero, kind: positivity_gram, form: zero}
  - {id: suites, kind: identity_suites, trials: 10000, tolerance: 1e-10}
)";
}

}  // namespace zcrit::cli
