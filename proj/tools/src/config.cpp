#include "config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace zcrit::cli {
namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::string scalar(const YAML::Node& node, std::string_view what) {
  if (!node || !node.IsScalar()) throw ConfigError(std::string(what) + ": expected a scalar");
  return node.Scalar();
}

// Linear combination over the given labels; "omega" stands for the Kähler class when known.
CohClass parse_combination(std::string_view text, const std::vector<std::string>& labels,
                           const std::optional<CohClass>& kahler) {
  CohClass total = CohClass::zero(labels.size());
  const std::string src = trim(text);
  if (src.empty()) throw ConfigError("empty class expression");

  std::size_t pos = 0;
  while (pos < src.size()) {
    Rational sign(1);
    while (pos < src.size() && (src[pos] == '+' || src[pos] == '-' || std::isspace(static_cast<unsigned char>(src[pos])))) {
      if (src[pos] == '-') sign = -sign;
      ++pos;
    }
    std::size_t end = pos;
    while (end < src.size() && src[end] != '+' && src[end] != '-') ++end;
    const std::string term = trim(std::string_view(src).substr(pos, end - pos));
    pos = end;
    if (term.empty()) throw ConfigError("dangling sign in class expression \"" + src + "\"");

    // Split a leading rational coefficient ("3", "1/2", "0.5", optionally followed by '*').
    std::size_t split = 0;
    while (split < term.size() && (std::isdigit(static_cast<unsigned char>(term[split])) || term[split] == '/' || term[split] == '.'))
      ++split;
    Rational coeff(1);
    if (split > 0) coeff = parse_rational(term.substr(0, split));
    std::string label = trim(std::string_view(term).substr(split));
    if (!label.empty() && label.front() == '*') label = trim(std::string_view(label).substr(1));

    if (label.empty()) {
      if (coeff != 0) throw ConfigError("constant term in class expression \"" + src + "\"");
      continue;
    }
    if (label == "omega") {
      if (!kahler) throw ConfigError("\"omega\" used before the Kähler class is known");
      total += sign * coeff * *kahler;
      continue;
    }
    bool found = false;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == label) {
        total += sign * coeff * CohClass::unit(labels.size(), i);
        found = true;
        break;
      }
    }
    if (!found) throw ConfigError("unknown basis label \"" + label + "\" in \"" + src + "\"");
  }
  return total;
}

CohClass class_from_node(const YAML::Node& node, const std::vector<std::string>& labels,
                         const std::optional<CohClass>& kahler) {
  if (node.IsSequence()) {
    if (node.size() != labels.size())
      throw ConfigError("class has " + std::to_string(node.size()) + " coefficients, expected " +
                        std::to_string(labels.size()));
    std::vector<Rational> c;
    for (const auto& x : node) c.push_back(parse_rational_node(x));
    return CohClass(std::move(c));
  }
  return parse_combination(scalar(node, "class"), labels, kahler);
}

long parse_rank(const YAML::Node& node) {
  const Rational r = parse_rational_node(node);
  if (denominator(r) != 1) throw ConfigError("rank must be an integer");
  return numerator(r).convert_to<long>();
}

SurfaceData parse_surface(const YAML::Node& node, std::string& name) {
  if (!node) throw ConfigError("missing 'surface'");
  if (node.IsScalar()) {
    name = node.Scalar();
    auto X = presets::by_name(name);
    if (!X) throw ConfigError("unknown surface preset \"" + name + "\"");
    return *X;
  }
  if (node["preset"]) {
    name = scalar(node["preset"], "surface.preset");
    auto X = presets::by_name(name);
    if (!X) throw ConfigError("unknown surface preset \"" + name + "\"");
    if (node["kahler"]) return X->with_kahler(class_from_node(node["kahler"], X->basis_labels(), X->kahler()));
    return *X;
  }

  name = node["name"] ? node["name"].Scalar() : "custom";
  SurfaceSpec spec;
  for (const auto& l : node["basis"]) spec.basis_labels.push_back(l.Scalar());
  if (spec.basis_labels.empty()) throw ConfigError("surface.basis is empty");
  for (const auto& row : node["intersection"]) {
    std::vector<Rational> r;
    for (const auto& x : row) r.push_back(parse_rational_node(x));
    spec.intersection.push_back(std::move(r));
  }
  spec.kahler = class_from_node(node["kahler"], spec.basis_labels, std::nullopt);
  spec.canonical_c1 = class_from_node(node["c1"], spec.basis_labels, spec.kahler);
  spec.chi_O = parse_rational_node(node["chi_O"]);
  if (const auto curves = node["curves"]) {
    for (const auto& kv : curves)
      spec.test_curves.push_back({kv.first.Scalar(), class_from_node(kv.second, spec.basis_labels, spec.kahler)});
  }
  spec.curves_exhaustive = node["curves_exhaustive"] && node["curves_exhaustive"].as<bool>();
  return SurfaceData(std::move(spec));
}

SheafChern parse_sheaf(const std::string& name, const YAML::Node& node, const Config& c) {
  const SurfaceData& X = c.X();
  auto lookup = [&](const YAML::Node& n) -> SheafChern {
    const std::string ref = scalar(n, "sheaf reference");
    const auto it = c.sheaves.find(ref);
    if (it == c.sheaves.end() && ref == "O") return structure_sheaf(X);
    if (it == c.sheaves.end())
      throw ReferenceError("sheaf '" + name + "' refers to undefined sheaf '" + ref + "'");
    return it->second;
  };
  if (node.IsScalar()) {
    if (node.Scalar() == "O") return structure_sheaf(X);
    throw ConfigError("sheaf '" + name + "': unknown shorthand \"" + node.Scalar() + "\"");
  }
  if (node["line"]) return line_bundle(parse_class(node["line"], X), X);
  if (node["sum"]) {
    const auto& parts = node["sum"];
    if (!parts.IsSequence() || parts.size() == 0) throw ConfigError("sheaf '" + name + "': sum needs a list");
    SheafChern total = lookup(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) total = sum(total, lookup(parts[i]));
    return total;
  }
  if (node["twist"]) {
    const Rational k = node["k"] ? parse_rational_node(node["k"]) : Rational(1);
    return twist(lookup(node["twist"]), parse_class(node["by"], X), k, X);
  }
  const long rank = parse_rank(node["rank"]);
  const YAML::Node c1 = node["ch1"] ? node["ch1"] : node["c1"];
  const CohClass ch1 = c1 ? parse_class(c1, X) : CohClass::zero(X.dim());
  Rational ch2;
  if (node["ch2"]) {
    ch2 = parse_rational_node(node["ch2"]);
  } else if (node["c2"]) {
    ch2 = intersect(ch1, ch1, X) / 2 - parse_rational_node(node["c2"]);
  }
  return SheafChern(rank, ch1, ch2);
}

CurveSheaf parse_curve_sheaf(const std::string& name, const YAML::Node& node, const Config& c) {
  if (node["restrict"]) {
    // Degree of a locally free sheaf restricted to the curve: ch1 . V.
    const std::string ref = scalar(node["restrict"], "restrict");
    const auto it = c.sheaves.find(ref);
    if (it == c.sheaves.end())
      throw ReferenceError("curve sheaf '" + name + "' refers to undefined sheaf '" + ref + "'");
    const std::string curve = scalar(node["curve"], "curve");
    const auto cv = c.curves.find(curve);
    if (cv == c.curves.end())
      throw ReferenceError("curve sheaf '" + name + "' refers to undefined curve '" + curve + "'");
    return CurveSheaf(it->second.rank(), intersect(it->second.ch1(), cv->second, c.X()));
  }
  return CurveSheaf(parse_rank(node["rank"]), parse_rational_node(node["degree"]));
}

ValidationMode parse_mode(const YAML::Node& node) {
  if (!node) return ValidationMode::Bayer;
  const std::string m = node.Scalar();
  if (m == "Bayer") return ValidationMode::Bayer;
  if (m == "LargeVolume") return ValidationMode::LargeVolume;
  if (m == "None") return ValidationMode::None;
  throw ConfigError("unknown validation mode \"" + m + "\"");
}

template <class Map>
const typename Map::mapped_type& find_ref(const Map& table, const TaskSpec& t, std::string_view field,
                                          std::string_view what) {
  const YAML::Node n = t.params[std::string(field)];
  if (!n) throw ReferenceError("task '" + t.id + "': missing field '" + std::string(field) + "'");
  const std::string name = scalar(n, field);
  const auto it = table.find(name);
  if (it == table.end())
    throw ReferenceError("task '" + t.id + "': undefined " + std::string(what) + " '" + name + "'");
  return it->second;
}

}  // namespace

Rational parse_rational_node(const YAML::Node& node) {
  try {
    return parse_rational(scalar(node, "rational"));
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  }
}

CohClass parse_class(const YAML::Node& node, const SurfaceData& X) {
  if (!node) throw ConfigError("missing class");
  return class_from_node(node, X.basis_labels(), X.kahler());
}

CohClass parse_class_text(std::string_view text, const SurfaceData& X) {
  return parse_combination(text, X.basis_labels(), X.kahler());
}

StabilityVector parse_rho(const YAML::Node& node) {
  if (!node) throw ConfigError("charge without 'rho'");
  if (node.IsScalar()) {
    if (node.Scalar() == "dhym") return vectors::dhym();
    throw ConfigError("unknown stability vector \"" + node.Scalar() + "\"");
  }
  if (node.IsMap() && node["ahe"]) return vectors::almost_hermite_einstein(parse_rational_node(node["ahe"]));
  if (!node.IsSequence() || node.size() != 3) throw ConfigError("rho must list three Gaussian rationals");
  StabilityVector rho;
  try {
    for (std::size_t j = 0; j < 3; ++j) rho[j] = parse_gaussian(scalar(node[j], "rho entry"));
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  }
  return rho;
}

CentralCharge parse_charge(const YAML::Node& node, const SurfaceData& X) {
  const StabilityVector rho = parse_rho(node["rho"]);
  int given = 0;
  UnitaryClass u = trivial_unitary(X);
  if (node["exp_lambda"]) {
    u = exp_kahler_unitary(parse_rational_node(node["exp_lambda"]), X);
    ++given;
  }
  if (node["b_field"]) {
    u = b_field_unitary(parse_class(node["b_field"], X), X);
    ++given;
  }
  if (node["scan"]) {
    const YAML::Node s = node["scan"];
    if (!s.IsSequence() || s.size() != 2) throw ConfigError("scan needs [x, y]");
    u = scan_unitary(parse_rational_node(s[0]), parse_rational_node(s[1]), X);
    ++given;
  }
  if (node["unitary"]) {
    const std::string kind = scalar(node["unitary"], "unitary");
    if (kind == "todd") {
      u = {Rational(1, 2) * X.canonical_c1(), X.chi_O()};
    } else if (kind != "trivial") {
      throw ConfigError("unknown unitary class \"" + kind + "\"");
    }
    ++given;
  }
  if (node["u1"] || node["u2"]) {
    u = {node["u1"] ? parse_class(node["u1"], X) : CohClass::zero(X.dim()),
         node["u2"] ? parse_rational_node(node["u2"]) : Rational(0)};
    ++given;
  }
  if (given > 1) throw ConfigError("charge specifies more than one unitary class");
  return make_charge(rho, std::move(u));
}

Config load_config(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("YAML: ") + e.what());
  }
  if (root.IsNull()) throw ConfigError("empty config");
  if (!root.IsMap()) throw ConfigError("config must be a mapping");

  Config c;
  try {
    if (root["seed"]) c.seed = root["seed"].as<std::uint64_t>();
    c.surface = parse_surface(root["surface"], c.surface_name);

    for (const auto& tc : c.X().test_curves()) c.curves.emplace(tc.label, tc.cls);
    for (const auto& kv : root["curves"]) c.curves.insert_or_assign(kv.first.Scalar(), parse_class(kv.second, c.X()));

    // Definition order matters: sums and twists refer to earlier entries.
    for (const auto& kv : root["sheaves"]) {
      const std::string name = kv.first.Scalar();
      if (c.sheaves.contains(name)) throw ConfigError("duplicate sheaf '" + name + "'");
      c.sheaves.emplace(name, parse_sheaf(name, kv.second, c));
    }
    for (const auto& kv : root["curve_sheaves"]) {
      const std::string name = kv.first.Scalar();
      c.curve_sheaves.insert_or_assign(name, parse_curve_sheaf(name, kv.second, c));
    }
    for (const auto& kv : root["charges"]) {
      NamedCharge nc{parse_charge(kv.second, c.X()), parse_mode(kv.second["mode"]), {}};
      nc.validation = validate(nc.charge, nc.mode);
      c.charges.insert_or_assign(kv.first.Scalar(), std::move(nc));
    }

    std::size_t index = 0;
    for (const auto& t : root["tasks"]) {
      ++index;
      if (!t.IsMap() || !t["kind"]) throw ConfigError("task #" + std::to_string(index) + " has no 'kind'");
      TaskSpec spec{t["id"] ? t["id"].Scalar() : "task" + std::to_string(index), t["kind"].Scalar(), t};
      for (const auto& prev : c.tasks)
        if (prev.id == spec.id) throw ConfigError("duplicate task id '" + spec.id + "'");
      c.tasks.push_back(std::move(spec));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("YAML: ") + e.what());
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return c;
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_config(buf.str());
}

const SheafChern& sheaf_ref(const Config& c, const TaskSpec& t, std::string_view field) {
  return find_ref(c.sheaves, t, field, "sheaf");
}
const CurveSheaf& curve_sheaf_ref(const Config& c, const TaskSpec& t, std::string_view field) {
  return find_ref(c.curve_sheaves, t, field, "curve sheaf");
}
const CohClass& curve_ref(const Config& c, const TaskSpec& t, std::string_view field) {
  return find_ref(c.curves, t, field, "curve");
}
const NamedCharge& charge_ref(const Config& c, const TaskSpec& t, std::string_view field) {
  return find_ref(c.charges, t, field, "charge");
}

}  // namespace zcrit::cli
