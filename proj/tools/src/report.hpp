#pragma once

#include "zcrit/charge.hpp"
#include "zcrit/cohomology.hpp"
#include "zcrit/polynomial.hpp"
#include "zcrit/stability.hpp"

#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

#include <string>

namespace zcrit::cli {

using Json = nlohmann::ordered_json;

Json encode(const Rational& q);
Json encode(const GaussianRational& z);
Json encode(const CohClass& a, const SurfaceData& X);
Json encode(const RealPolynomial& p);
Json encode(const KPolynomial& p);
Json encode(const SheafChern& E, const SurfaceData& X);
Json encode(const CurveSheaf& E);
Json encode(const NakaiVerdict& v);
Json encode(const AsymptoticSign& s);
Json encode(const ValidationVerdict& v);

// Scalars stay strings so exact values are echoed verbatim.
Json yaml_to_json(const YAML::Node& node);

// Plain-text rendering of a report, one block per task.
std::string render_text(const Json& report);

}  // namespace zcrit::cli
