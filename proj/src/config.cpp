#include "gibbs/config.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "gibbs/error.hpp"
#include "json.hpp"

namespace gibbs {

namespace {

using nlohmann::json;

double number_param(const json& v, std::string_view what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto e = expr::parse(v.get<std::string>());
    if (!e.is_constant()) {
      throw ConfigError(fmt::format("'{}' must not depend on x", what));
    }
    return e.eval(0.0);
  }
  throw ConfigError(fmt::format("'{}' must be a number or an expression", what));
}

template <class T>
T count_param(const json& v, std::string_view what) {
  const double d = number_param(v, what);
  if (!(d >= 0.0) || d != std::floor(d) || d > 1e18) {
    throw ConfigError(fmt::format("'{}' must be a non-negative integer", what));
  }
  return static_cast<T>(d);
}

GaussPotential potential_kind(const std::string& s) {
  if (s == "geometric") return GaussPotential::kGeometric;
  if (s == "neg_geometric") return GaussPotential::kNegGeometric;
  if (s == "constant") return GaussPotential::kConstant;
  throw ConfigError(fmt::format(
      "unknown potential '{}' (geometric, neg_geometric, constant)", s));
}

IFSSystem build_preset(const json& p, std::optional<double>& cantor_ratio) {
  const auto name = p.at("name").get<std::string>();
  if (name == "cantor") {
    if (p.contains("alpha") == p.contains("r")) {
      throw ConfigError("cantor preset needs exactly one of 'alpha' or 'r'");
    }
    const double alpha = p.contains("alpha")
                             ? number_param(p.at("alpha"), "alpha")
                             : 1.0 - 2.0 * number_param(p.at("r"), "r");
    std::array<double, 2> w{0.5, 0.5};
    if (p.contains("weights")) {
      const auto& jw = p.at("weights");
      if (!jw.is_array() || jw.size() != 2) {
        throw ConfigError("cantor weights must be a two-element array");
      }
      w = {number_param(jw[0], "weights[0]"), number_param(jw[1], "weights[1]")};
    }
    auto system = preset_cantor(alpha, w);
    if (w[0] == w[1]) cantor_ratio = (1.0 - alpha) / 2.0;
    return system;
  }
  if (name == "gauss") {
    const auto digits = p.at("digits").get<std::vector<int>>();
    const auto kind = potential_kind(p.value("potential", "neg_geometric"));
    return preset_gauss_restricted(digits, kind);
  }
  throw ConfigError(fmt::format("unknown preset '{}' (cantor, gauss)", name));
}

IFSSystem build_branches(const json& list, const std::string& name) {
  if (!list.is_array() || list.empty()) {
    throw ConfigError("'branches' must be a non-empty array");
  }
  std::vector<Branch> branches;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& b = list[i];
    Branch branch;
    try {
      branch.map = expr::parse(b.at("map").get<std::string>());
      branch.weight = expr::parse(b.value("weight", std::string("0")));
    } catch (const ParseError& e) {
      throw ConfigError(fmt::format("branch {}: {}", i, e.what()));
    }
    branch.label = b.value("label", fmt::format("b{}", i));
    branches.push_back(std::move(branch));
  }
  return IFSSystem(name, std::move(branches));
}

RunDefaults read_defaults(const json& d) {
  RunDefaults r;
  if (d.is_null()) return r;
  if (!d.is_object()) throw ConfigError("'defaults' must be an object");
  if (d.contains("N")) r.N = count_param<std::size_t>(d["N"], "N");
  if (d.contains("T")) r.T = count_param<std::uint64_t>(d["T"], "T");
  if (d.contains("T0")) r.T0 = count_param<std::uint64_t>(d["T0"], "T0");
  if (d.contains("replicas")) {
    r.replicas = count_param<unsigned>(d["replicas"], "replicas");
  }
  if (d.contains("seed")) r.seed = count_param<std::uint64_t>(d["seed"], "seed");
  if (d.contains("M")) r.M = count_param<std::size_t>(d["M"], "M");
  if (d.contains("quad_points")) {
    r.quad_points = count_param<std::size_t>(d["quad_points"], "quad_points");
  }
  return r;
}

}  // namespace

SystemConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("config is not valid JSON: {}", e.what()));
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  try {
    const bool has_preset = doc.contains("preset");
    const bool has_branches = doc.contains("branches");
    if (has_preset == has_branches) {
      throw ConfigError("config needs exactly one of 'preset' or 'branches'");
    }
    std::optional<double> ratio;
    std::string name = doc.value("name", std::string());
    IFSSystem system =
        has_preset ? build_preset(doc.at("preset"), ratio)
                   : build_branches(doc.at("branches"),
                                    name.empty() ? "custom" : name);
    if (!name.empty() && has_preset) {
      system = IFSSystem(name, {system.branches().begin(), system.branches().end()});
    }
    RunDefaults defaults = read_defaults(doc.value("defaults", json()));
    return {std::move(system), defaults, ratio, doc.dump()};
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("malformed config: {}", e.what()));
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

SystemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace gibbs
