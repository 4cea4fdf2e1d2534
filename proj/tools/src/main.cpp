#include "config.hpp"
#include "examples.hpp"
#include "tasks.hpp"

#include "zcrit/cohomology.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

using zcrit::cli::Json;

constexpr int kExitConfig = 2;

void init_logging() {
  auto logger = spdlog::stderr_color_mt("zcrit");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("ZCRIT_LOG")) spdlog::set_level(spdlog::level::from_str(env));
}

Json surface_json(const zcrit::SurfaceData& X) {
  using zcrit::cli::encode;
  Json rows = Json::array();
  for (const auto& r : X.intersection()) {
    Json row = Json::array();
    for (const auto& q : r) row.push_back(zcrit::to_string(q));
    rows.push_back(row);
  }
  Json curves = Json::object();
  for (const auto& c : X.test_curves()) curves[c.label] = encode(c.cls, X);
  return {{"basis", X.basis_labels()},
          {"intersection", rows},
          {"kahler", encode(X.kahler(), X)},
          {"c1", encode(X.canonical_c1(), X)},
          {"chi_O", zcrit::to_string(X.chi_O())},
          {"curves", curves},
          {"curves_exhaustive", X.curves_exhaustive()}};
}

struct Globals {
  std::string config_path;
  std::string example;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  unsigned jobs = 1;
};

void emit(const Json& report, const Globals& g) {
  if (!g.out_path.empty()) {
    std::ofstream out(g.out_path);
    if (!out) throw zcrit::cli::ConfigError("cannot write \"" + g.out_path + "\"");
    out << report.dump(2) << '\n';
  }
  if (g.format == "text") {
    std::cout << zcrit::cli::render_text(report);
  } else {
    std::cout << report.dump(2) << '\n';
  }
}

int run_presets(const Globals& g, const std::string& example) {
  if (!example.empty()) {
    const auto text = zcrit::cli::embedded_example(example);
    if (!text) {
      std::cerr << "unknown example \"" << example << "\"\n";
      return kExitConfig;
    }
    std::cout << *text;
    return 0;
  }
  Json surfaces = Json::object();
  for (const auto& name : zcrit::presets::names()) surfaces[name] = surface_json(*zcrit::presets::by_name(name));
  Json examples = Json::array();
  for (const auto& [name, text] : zcrit::cli::embedded_examples()) examples.push_back(name);
  const Json report{{"surfaces", surfaces}, {"examples", examples}, {"task_kinds", zcrit::cli::task_kinds()}};
  if (g.format == "text") {
    for (const auto& [name, s] : surfaces.items()) std::cout << name << ": " << s.dump() << '\n';
    std::cout << "examples:";
    for (const auto& e : examples) std::cout << ' ' << e.get<std::string>();
    std::cout << '\n';
  } else {
    std::cout << report.dump(2) << '\n';
  }
  return 0;
}

int run_tasks(const Globals& g, std::optional<zcrit::cli::Group> only) {
  std::string yaml;
  if (!g.example.empty()) {
    const auto text = zcrit::cli::embedded_example(g.example);
    if (!text) throw zcrit::cli::ConfigError("unknown example \"" + g.example + "\"");
    yaml = std::string(*text);
  }
  zcrit::cli::Config config = [&] {
    if (!g.config_path.empty()) return zcrit::cli::load_config_file(g.config_path);
    if (!yaml.empty()) return zcrit::cli::load_config(yaml);
    if (only == zcrit::cli::Group::Verify) return zcrit::cli::load_config(zcrit::cli::builtin_verify_yaml());
    throw zcrit::cli::ConfigError("no config given (use --config or --example)");
  }();
  if (g.seed) config.seed = *g.seed;
  const zcrit::cli::RunOutcome outcome = zcrit::cli::run(config, {.only = only, .jobs = g.jobs});
  emit(outcome.report, g);
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  init_logging();

  CLI::App app{"Exact checks for polynomial central charges on surfaces"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "YAML task configuration")->check(CLI::ExistingFile);
  app.add_option("--example", g.example, "Run a built-in example configuration by name");
  app.add_option("--out", g.out_path, "Also write the JSON report to this path");
  app.add_option("--seed", g.seed, "Override the configuration seed");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--jobs,-j", g.jobs, "Tasks to run concurrently")->check(CLI::PositiveNumber);

  struct Sub {
    const char* name;
    const char* help;
    std::optional<zcrit::cli::Group> group;
  };
  const Sub subs[] = {
      {"run", "Run every task in the configuration", std::nullopt},
      {"eval", "Charges, coefficients and validation", zcrit::cli::Group::Eval},
      {"stability", "Z-stability, comparison identity, Gieseker, polystability", zcrit::cli::Group::Stability},
      {"positivity", "Bundle/quotient positivity, alpha sign, volume proxy, Bogomolov", zcrit::cli::Group::Positivity},
      {"scan", "Destabiliser scan and k-sweeps", zcrit::cli::Group::Scan},
      {"verify", "Pointwise identity suites (built-in TP2 suite without a config)", zcrit::cli::Group::Verify},
  };
  std::optional<zcrit::cli::Group> chosen;
  bool task_mode = false;
  for (const Sub& s : subs) {
    app.add_subcommand(s.name, s.help)->fallthrough()->callback([&, s] {
      chosen = s.group;
      task_mode = true;
    });
  }
  std::string example_name;
  auto* presets = app.add_subcommand("presets", "Built-in surfaces, examples and task kinds")->fallthrough();
  presets->add_option("--show", example_name, "Print the YAML of a built-in example");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (presets->parsed()) return run_presets(g, example_name);
    if (task_mode) return run_tasks(g, chosen);
  } catch (const zcrit::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
