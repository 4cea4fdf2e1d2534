#include "config.hpp"
#include "examples.hpp"
#include "tasks.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <string>

namespace zcrit::cli {
namespace {

constexpr const char* kTangentBundle = R"(
surface: P2
seed: 3
sheaves:
  TP2: {rank: 2, ch1: 3H, ch2: 3/2}
  O1: {line: H}
charges:
  dHYM: {rho: dhym, b_field: "0"}
tasks:
  - {id: z, kind: charge, charge: dHYM, sheaf: TP2}
  - {id: coeff, kind: coefficients, charge: dHYM, sheaf: TP2}
  - {id: cmp, kind: comparison_identity, charge: dHYM, sheaf: TP2, sub: O1}
  - {id: pos, kind: bundle_positivity, charge: dHYM, sheaf: TP2}
  - {id: scan, kind: destabilizer_scan, rho: ["1", "-1/3*i", "-1+i"], sheaf: TP2, sub: O1}
  - {id: suites, kind: identity_suites, trials: 200}
)";

RunOutcome run_text(const std::string& yaml, RunOptions options = {}) { return run(load_config(yaml), options); }

void for_each_string(const Json& j, const std::function<void(const std::string&)>& f) {
  if (j.is_string()) f(j.get<std::string>());
  if (j.is_structured())
    for (const auto& x : j) for_each_string(x, f);
}

TEST(Cli, ChargeReportContainsExactValue) {
  const RunOutcome out = run_text(kTangentBundle);
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_NE(out.report.dump().find("\"-3-1/2*i\""), std::string::npos);
  const Json& value = out.report["tasks"][0]["result"]["value"];
  EXPECT_EQ(value["re"], "-3");
  EXPECT_EQ(value["im"], "-1/2");
}

TEST(Cli, EmptyTaskListIsEmptyReport) {
  const RunOutcome out = run_text("surface: P2\ntasks: []\n");
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_TRUE(out.report["tasks"].empty());
  EXPECT_EQ(run_text("surface: P2\n").exit_code, 0);
}

TEST(Cli, DanglingSheafNamesTheTask) {
  const std::string yaml = "surface: P2\ncharges:\n  Z: {rho: dhym}\ntasks:\n  - {id: broken, kind: charge, charge: Z, sheaf: nope}\n";
  try {
    run_text(yaml);
    FAIL() << "expected ReferenceError";
  } catch (const ReferenceError& e) {
    EXPECT_NE(std::string(e.what()).find("broken"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("nope"), std::string::npos);
  }
}

TEST(Cli, DanglingReferenceInsideDefinitions) {
  EXPECT_THROW(load_config("surface: P2\nsheaves:\n  E: {sum: [A, B]}\n"), ReferenceError);
}

TEST(Cli, StructureSheafShorthandInReferences) {
  const Config cfg = load_config("surface: P2\nsheaves:\n  TP2: {rank: 2, ch1: 3H, ch2: 3/2}\n  E: {sum: [TP2, O]}\n");
  EXPECT_EQ(cfg.sheaves.at("E"), SheafChern(3, CohClass{3}, Rational(3, 2)));
  const Config shadowed = load_config("surface: P2\nsheaves:\n  O: {line: H}\n  E: {sum: [O, O]}\n");
  EXPECT_EQ(shadowed.sheaves.at("E").ch1(), CohClass{2});
}

TEST(Cli, ConfigErrors) {
  EXPECT_THROW(load_config(""), ConfigError);
  EXPECT_THROW(load_config("surface: [unclosed"), ConfigError);
  EXPECT_THROW(load_config("surface: K3\n"), ConfigError);
  EXPECT_THROW(load_config("surface: P2\nsheaves:\n  E: {line: 2Q}\n"), ConfigError);
  EXPECT_THROW(load_config("surface: P2\ncharges:\n  Z: {rho: [1, 2]}\n"), ConfigError);
  EXPECT_THROW(load_config("surface: P2\ncharges:\n  Z: {rho: dhym, exp_lambda: 1, b_field: H}\n"), ConfigError);
  EXPECT_THROW(load_config("surface: {preset: BlowupP2, kahler: H}\n"), ConfigError);
  EXPECT_THROW(run_text("surface: P2\ntasks:\n  - {kind: teleport}\n"), ConfigError);
  EXPECT_THROW(load_config("surface: P2\ntasks:\n  - {id: a, kind: bogomolov}\n  - {id: a, kind: bogomolov}\n"), ConfigError);
}

TEST(Cli, TaskFailuresAreIsolated) {
  const std::string yaml = R"(
surface: P2
sheaves:
  L: {line: H}
  TP2: {rank: 2, ch1: 3H, ch2: 3/2}
tasks:
  - {id: bad, kind: bogomolov, sheaf: L}
  - {id: good, kind: bogomolov, sheaf: TP2}
)";
  const RunOutcome out = run_text(yaml);
  EXPECT_EQ(out.exit_code, 1);
  EXPECT_EQ(out.report["tasks"][0]["status"], "error");
  EXPECT_EQ(out.report["tasks"][1]["status"], "ok");
  EXPECT_EQ(out.report["tasks"][1]["result"]["margin"], "3");
}

TEST(Cli, ByteIdenticalAcrossRunsAndJobCounts) {
  const std::string a = run_text(kTangentBundle, {.jobs = 1}).report.dump();
  const std::string b = run_text(kTangentBundle, {.jobs = 1}).report.dump();
  const std::string c = run_text(kTangentBundle, {.jobs = 4}).report.dump();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
}

TEST(Cli, SeedChangesOnlySeededTasks) {
  Config cfg = load_config(kTangentBundle);
  const Json first = run(cfg, {}).report;
  cfg.seed = 99;
  const Json second = run(cfg, {}).report;
  EXPECT_EQ(first["tasks"][0], second["tasks"][0]);
  EXPECT_NE(first["tasks"][5]["result"]["seed"], second["tasks"][5]["result"]["seed"]);
}

TEST(Cli, ExactStringsRoundTrip) {
  int checked = 0;
  for (const auto& [name, text] : embedded_examples()) {
    const Json report = run_text(std::string(text)).report;
    for_each_string(report, [&](const std::string& s) {
      Rational q;
      try {
        q = parse_rational(s);
      } catch (const ParseError&) {
        return;
      }
      EXPECT_EQ(zcrit::to_string(q), s) << name;
      ++checked;
    });
  }
  EXPECT_GT(checked, 100);
}

TEST(Cli, GroupFilterSkipsOtherTasks) {
  const RunOutcome out = run_text(kTangentBundle, {.only = Group::Eval});
  EXPECT_EQ(out.report["tasks"][0]["status"], "ok");
  EXPECT_EQ(out.report["tasks"][2]["status"], "skipped");
  EXPECT_EQ(out.report["summary"]["skipped"], 4);
}

TEST(Cli, WarningsForUnknownPositivityInputs) {
  const std::string yaml = R"(
surface:
  name: plane_without_cone
  basis: [H]
  intersection: [[1]]
  kahler: H
  c1: 3H
  chi_O: 1
  curves: {line: H}
sheaves:
  TP2: {rank: 2, ch1: 3H, ch2: 3/2}
charges:
  bad: {rho: ["1", "1", "1"]}
tasks:
  - {id: pos, kind: bundle_positivity, charge: bad, sheaf: TP2, strict: true}
)";
  const RunOutcome out = run_text(yaml);
  EXPECT_EQ(out.exit_code, 0);
  const Json& w = out.report["tasks"][0]["warnings"];
  EXPECT_GE(w.size(), 2u);
  EXPECT_FALSE(out.report["charges"]["bad"]["validation"]["valid"].get<bool>());
}

TEST(ClassParser, Expressions) {
  const SurfaceData X = presets::blowup_plane();
  EXPECT_EQ(parse_class_text("3H - E1", X), (CohClass{3, -1}));
  EXPECT_EQ(parse_class_text("1/2*H+E1", X), (CohClass{Rational(1, 2), 1}));
  EXPECT_EQ(parse_class_text("-omega", X), (CohClass{-3, 1}));
  EXPECT_EQ(parse_class_text("0", X), (CohClass{0, 0}));
  EXPECT_THROW(parse_class_text("H + 2", X), ConfigError);
  EXPECT_THROW(parse_class_text("H -", X), ConfigError);
}

TEST(Cli, ChargeVariants) {
  const SurfaceData X = presets::projective_plane();
  const CentralCharge todd = parse_charge(YAML::Load("{rho: dhym, unitary: todd}"), X);
  EXPECT_EQ(todd.u1, (CohClass{Rational(3, 2)}));
  EXPECT_EQ(todd.u2, 1);
  const CentralCharge scan = parse_charge(YAML::Load("{rho: dhym, scan: [2, 1/3]}"), X);
  EXPECT_EQ(scan.u1, (CohClass{2}));
  const CentralCharge ahe = parse_charge(YAML::Load("{rho: {ahe: 1}}"), X);
  EXPECT_EQ(ahe.rho[2], GaussianRational(Rational(1, 2), Rational(1, 2)));
}

TEST(Cli, EmbeddedExamplesRunClean) {
  ASSERT_GE(embedded_examples().size(), 7u);
  for (const auto& [name, text] : embedded_examples()) {
    const RunOutcome out = run_text(std::string(text), {.jobs = 2});
    EXPECT_EQ(out.exit_code, 0) << name;
  }
}

TEST(Cli, BuiltinVerifySuite) {
  const RunOutcome out = run_text(builtin_verify_yaml(), {.only = Group::Verify, .jobs = 2});
  EXPECT_EQ(out.exit_code, 0);
  for (const auto& t : out.report["tasks"]) EXPECT_EQ(t["status"], "ok") << t["id"];
  EXPECT_EQ(out.report["tasks"][4]["result"]["subsol1"]["trials"], 10000);
}

TEST(Cli, TextRendering) {
  const std::string text = render_text(run_text(kTangentBundle).report);
  EXPECT_NE(text.find("[ok] z (charge)"), std::string::npos);
  EXPECT_NE(text.find("value: -3-1/2*i"), std::string::npos);
  EXPECT_NE(text.find("summary: 6 ok, 0 failed"), std::string::npos);
}

}  // namespace
}  // namespace zcrit::cli
