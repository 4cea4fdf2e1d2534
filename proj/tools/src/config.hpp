#pragma once

#include "zcrit/charge.hpp"
#include "zcrit/cohomology.hpp"
#include "zcrit/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zcrit::cli {

// Malformed config text or values. Exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A task names an object that is not defined. Exit code 2.
class ReferenceError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

struct NamedCharge {
  CentralCharge charge;
  ValidationMode mode = ValidationMode::Bayer;
  ValidationVerdict validation;
};

struct TaskSpec {
  std::string id;
  std::string kind;
  YAML::Node params;
};

struct Config {
  std::uint64_t seed = 0;
  std::string surface_name;
  std::optional<SurfaceData> surface;
  std::map<std::string, SheafChern> sheaves;
  std::map<std::string, CurveSheaf> curve_sheaves;
  std::map<std::string, CohClass> curves;
  std::map<std::string, NamedCharge> charges;
  std::vector<TaskSpec> tasks;

  const SurfaceData& X() const { return *surface; }
};

// Parses and validates; throws ConfigError or ReferenceError.
Config load_config(std::string_view yaml_text);
Config load_config_file(const std::string& path);

// Linear combination of basis labels such as "3H - E1", "1/2*H", "omega" or "0";
// a YAML sequence is read as a coefficient vector.
CohClass parse_class(const YAML::Node& node, const SurfaceData& X);
CohClass parse_class_text(std::string_view text, const SurfaceData& X);
Rational parse_rational_node(const YAML::Node& node);
StabilityVector parse_rho(const YAML::Node& node);
CentralCharge parse_charge(const YAML::Node& node, const SurfaceData& X);

// Lookup helpers used by task runners; they report the task id on failure.
const SheafChern& sheaf_ref(const Config& c, const TaskSpec& t, std::string_view field);
const CurveSheaf& curve_sheaf_ref(const Config& c, const TaskSpec& t, std::string_view field);
const CohClass& curve_ref(const Config& c, const TaskSpec& t, std::string_view field);
const NamedCharge& charge_ref(const Config& c, const TaskSpec& t, std::string_view field);

}  // namespace zcrit::cli
