#include "report.hpp"

#include <sstream>

namespace zcrit::cli {

Json encode(const Rational& q) { return to_string(q); }

Json encode(const GaussianRational& z) {
  Json j;
  j["re"] = to_string(z.re);
  j["im"] = to_string(z.im);
  j["text"] = to_string(z);
  return j;
}

Json encode(const CohClass& a, const SurfaceData& X) {
  Json j = Json::object();
  for (std::size_t i = 0; i < a.dim(); ++i) j[X.basis_labels().at(i)] = to_string(a[i]);
  return j;
}

Json encode(const RealPolynomial& p) {
  Json j = Json::array();
  for (const auto& c : p.coeffs()) j.push_back(to_string(c));
  return j;
}

Json encode(const KPolynomial& p) {
  Json j = Json::array();
  for (const auto& c : p.coeffs()) j.push_back(encode(c));
  return j;
}

Json encode(const SheafChern& E, const SurfaceData& X) {
  return {{"rank", E.rank()}, {"ch1", encode(E.ch1(), X)}, {"ch2", to_string(E.ch2())}};
}

Json encode(const CurveSheaf& E) { return {{"rank", E.rank()}, {"degree", to_string(E.degree())}}; }

Json encode(const NakaiVerdict& v) {
  Json curves = Json::array();
  for (const auto& c : v.curves) curves.push_back({{"curve", c.label}, {"pairing", to_string(c.value)}});
  return {{"verdict", to_string(v.verdict)},
          {"self_intersection", to_string(v.self_intersection)},
          {"kahler_pairing", to_string(v.kahler_pairing)},
          {"curves", curves}};
}

Json encode(const AsymptoticSign& s) {
  Json j{{"sign", to_string(s.sign)}, {"pairing", encode(s.pairing)}};
  j["threshold"] = s.threshold ? Json(to_string(*s.threshold)) : Json(nullptr);
  return j;
}

Json encode(const ValidationVerdict& v) {
  return {{"valid", v.valid},
          {"violations", v.violations},
          {"im_rho0_over_rho1", to_string(v.im_ratio_01)},
          {"im_rho1_over_rho2", to_string(v.im_ratio_12)}};
}

Json yaml_to_json(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Scalar: return node.Scalar();
    case YAML::NodeType::Sequence: {
      Json j = Json::array();
      for (const auto& x : node) j.push_back(yaml_to_json(x));
      return j;
    }
    case YAML::NodeType::Map: {
      Json j = Json::object();
      for (const auto& kv : node) j[kv.first.Scalar()] = yaml_to_json(kv.second);
      return j;
    }
    default: return nullptr;
  }
}

namespace {

void render_value(std::ostringstream& out, const Json& v, const std::string& indent) {
  if (v.is_object()) {
    if (v.contains("text") && v.contains("re")) {
      out << v["text"].get<std::string>() << '\n';
      return;
    }
    out << '\n';
    for (const auto& [k, x] : v.items()) {
      out << indent << k << ": ";
      render_value(out, x, indent + "  ");
    }
  } else if (v.is_array()) {
    bool flat = true;
    for (const auto& x : v) flat = flat && x.is_primitive();
    if (flat) {
      out << v.dump() << '\n';
      return;
    }
    out << '\n';
    for (const auto& x : v) {
      out << indent << "- ";
      bool flat_object = x.is_object();
      if (flat_object)
        for (const auto& [k, y] : x.items()) flat_object = flat_object && (y.is_primitive() || y.contains("text"));
      if (!flat_object) {
        render_value(out, x, indent + "  ");
        continue;
      }
      const char* sep = "";
      for (const auto& [k, y] : x.items()) {
        out << sep << k << '=' << (y.is_string() ? y.get<std::string>() : y.is_object() ? y["text"].get<std::string>() : y.dump());
        sep = "  ";
      }
      out << '\n';
    }
  } else if (v.is_string()) {
    out << v.get<std::string>() << '\n';
  } else {
    out << v.dump() << '\n';
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream out;
  out << "surface: " << report.value("surface", "") << "  seed: " << report.value("seed", 0) << '\n';
  for (const auto& t : report["tasks"]) {
    out << '[' << t["status"].get<std::string>() << "] " << t["id"].get<std::string>() << " ("
        << t["kind"].get<std::string>() << ")\n";
    if (t.contains("error")) out << "  error: " << t["error"].get<std::string>() << '\n';
    if (t.contains("result")) {
      for (const auto& [k, x] : t["result"].items()) {
        out << "  " << k << ": ";
        render_value(out, x, "    ");
      }
    }
    for (const auto& w : t["warnings"]) out << "  warning: " << w.get<std::string>() << '\n';
  }
  const auto& s = report["summary"];
  out << "summary: " << s["ok"].get<int>() << " ok, " << s["failed"].get<int>() << " failed";
  if (s["skipped"].get<int>() > 0) out << ", " << s["skipped"].get<int>() << " skipped";
  out << '\n';
  return out.str();
}

}  // namespace zcrit::cli
