#include "config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <regex>
#include <set>

#include <geoflow/burgers.hpp>
#include <geoflow/error.hpp>
#include <geoflow/lax.hpp>

namespace geoflow::cli {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const std::map<std::string, FlowKind>& flow_table() {
  static const std::map<std::string, FlowKind> t = {
      {"hf", FlowKind::HF},
      {"mi", FlowKind::MI},
      {"ishimori", FlowKind::Ishimori},
      {"mcf-graph", FlowKind::McfGraph},
      {"mcf-parametric", FlowKind::McfParametric},
      {"rf-plain", FlowKind::RfPlain},
      {"rf-normalized", FlowKind::RfNormalized},
      {"rf-coupled-73", FlowKind::RfCoupled},
      {"rf-coupled-74", FlowKind::RfCoupled},
      {"rf-coupled-75", FlowKind::RfCoupled},
      {"rf-coupled-76", FlowKind::RfCoupled},
      {"burgers", FlowKind::Burgers},
  };
  return t;
}

const std::map<std::string, double>& tolerances() {
  static const std::map<std::string, double> t = {
      {"identity-2d", 1e-2}, {"egregium", 1e-2},         {"gauge", 1e-6},
      {"lax", 1e-1},         {"frame-decomp", 1e-2},     {"metric-evolution", 1e-2},
      {"dissipation", 1e-1}, {"metric3", 1e-6},          {"volume", 1e-6},
  };
  return t;
}

std::set<std::string> allowed_checks(FlowKind k) {
  switch (k) {
    case FlowKind::HF: return {"identity-2d", "egregium", "gauge", "lax"};
    case FlowKind::MI:
      return {"identity-2d", "egregium", "gauge", "lax", "frame-decomp", "metric-evolution", "metric3"};
    case FlowKind::Ishimori: return {"gauge"};
    case FlowKind::McfGraph: return {"identity-2d", "egregium", "volume"};
    case FlowKind::McfParametric: return {"identity-2d", "egregium", "dissipation", "volume"};
    case FlowKind::RfPlain:
    case FlowKind::RfNormalized:
    case FlowKind::RfCoupled: return {"identity-2d", "volume"};
    case FlowKind::Burgers: return {};
  }
  return {};
}

Target target_of(FlowKind k) {
  switch (k) {
    case FlowKind::HF:
    case FlowKind::MI:
    case FlowKind::Ishimori: return Target::Spin;
    case FlowKind::McfParametric: return Target::Surface;
    case FlowKind::Burgers: return Target::Lambda;
    default: return Target::Scalar;
  }
}

std::vector<KeySpec> param_keys(FlowKind k) {
  std::vector<KeySpec> keys = {
      {"dt", Kind::Number, nullptr, true},
      {"steps", Kind::Integer, nullptr, true},
      {"stride", Kind::Integer, nullptr},
      {"expect_blowup", Kind::Bool, false},
  };
  auto add = [&](std::initializer_list<KeySpec> more) { keys.insert(keys.end(), more); };
  if (k != FlowKind::Burgers) add({{"order", Kind::Integer, 2}});
  switch (k) {
    case FlowKind::HF:
    case FlowKind::MI:
    case FlowKind::Ishimori:
      add({{"integrator", Kind::String, "rk4"},
           {"project_each_step", Kind::Bool, true},
           {"blowup_ceiling", Kind::Number, 1e6}});
      if (k == FlowKind::Ishimori) add({{"alpha2", Kind::Number, 2.0}});
      if (k != FlowKind::Ishimori)
        add({{"lambdas", Kind::NumberList, json::array({0.5, 1.0, 2.0})}, {"convention", Kind::String, "direct"}});
      break;
    case FlowKind::McfGraph:
      add({{"integrator", Kind::String, "rk4"}, {"xi", Kind::Vec3, json::array({0, 0, 0})},
           {"blowup_ceiling", Kind::Number, 1e6}});
      break;
    case FlowKind::McfParametric:
      add({{"xi", Kind::Vec3, json::array({0, 0, 0})}, {"J", Kind::Vec3, nullptr}});
      break;
    case FlowKind::RfPlain:
    case FlowKind::RfNormalized: break;
    case FlowKind::RfCoupled:
      add({{"beta", Kind::Number, 1.0},
           {"alpha", Kind::Number, 0.0},
           {"alpha_sign", Kind::Number, 1.0},
           {"k", Kind::Number, 0.0},
           {"laplacian", Kind::String, "metric"},
           {"freeze_metric", Kind::Bool, false},
           {"blowup_ceiling", Kind::Number, 1e6}});
      break;
    case FlowKind::Burgers:
      add({{"scheme", Kind::String, "characteristics"},
           {"sign", Kind::Number, 1.0},
           {"slope_ceiling", Kind::Number, 1e3},
           {"blowup_tolerance", Kind::Number, 0.02}});
      break;
  }
  return keys;
}

std::vector<KeySpec> preset_keys(const std::string& preset, Target t, const std::string& where) {
  const std::string bad = where + ": preset '" + preset + "' does not apply to this flow";
  std::vector<KeySpec> keys = {{"preset", Kind::String, nullptr, true}};
  auto add = [&](std::initializer_list<KeySpec> more) { keys.insert(keys.end(), more); };
  if (preset == "constant") {
    if (t == Target::Spin) add({{"s", Kind::Vec3, nullptr, true}});
    if (t == Target::Scalar || t == Target::Lambda) add({{"value", Kind::Number, 0.0}});
  } else if (preset == "magnon") {
    if (t != Target::Spin) throw ConfigInvalid(bad);
    add({{"theta", Kind::Number, std::numbers::pi / 3}, {"winding", Kind::Integer, 1}});
  } else if (preset == "twisted") {
    if (t != Target::Spin) throw ConfigInvalid(bad);
    add({{"amplitude", Kind::Number, 0.3}, {"nu", Kind::Number, 0.0}, {"kappa", Kind::Number, 2.0}});
  } else if (preset == "random-smooth") {
    if (t == Target::Lambda) throw ConfigInvalid(bad);
    add({{"seed", Kind::Integer, nullptr, true},
         {"bandwidth", Kind::Integer, 3},
         {"amplitude", Kind::Number, t == Target::Surface ? 0.1 : 0.3}});
    if (t == Target::Spin) add({{"odd_symmetric", Kind::Bool, false}});
  } else if (preset == "fourier-mode") {
    if (t == Target::Spin || t == Target::Lambda) throw ConfigInvalid(bad);
    add({{"kx", Kind::Integer, 1}, {"ky", Kind::Integer, 0}, {"amplitude", Kind::Number, 1.0}});
  } else if (preset == "sphere-cap") {
    if (t != Target::Scalar && t != Target::Surface) throw ConfigInvalid(bad);
    add({{"rho", Kind::Number, nullptr, true}});
  } else if (preset == "linear") {
    if (t != Target::Lambda) throw ConfigInvalid(bad);
    add({{"a", Kind::Number, 0.0}, {"t0", Kind::Number, 1.0}});
  } else if (preset == "sine") {
    if (t != Target::Lambda) throw ConfigInvalid(bad);
    add({{"amplitude", Kind::Number, 1.0}, {"k", Kind::Number, 1.0}});
  } else {
    throw ConfigInvalid(where + ": unknown preset '" + preset + "' (see list-presets)");
  }
  return keys;
}

json normalize_preset(const json& in, Target t, const std::string& where) {
  if (!in.is_object() || !in.contains("preset") || !in["preset"].is_string())
    throw ConfigInvalid(where + ": expected an object with a string 'preset'");
  const std::string name = in["preset"].get<std::string>();
  json out = normalize(in, preset_keys(name, t, where), where);
  if (name == "constant" && t == Target::Spin) {
    const auto s = out["s"];
    const double n = std::sqrt(std::pow(s[0].get<double>(), 2) + std::pow(s[1].get<double>(), 2) +
                               std::pow(s[2].get<double>(), 2));
    if (std::abs(n - 1.0) > 1e-12) throw ConfigInvalid(where + ".s: spin must be a unit vector");
  }
  if (name == "random-smooth") {
    if (out["seed"].get<long long>() < 0) throw ConfigInvalid(where + ".seed: must be non-negative");
    if (out["bandwidth"].get<int>() < 1) throw ConfigInvalid(where + ".bandwidth: must be at least 1");
  }
  if (name == "sphere-cap" && !(out["rho"].get<double>() > 0.0))
    throw ConfigInvalid(where + ".rho: must be positive");
  if (name == "linear" && out["t0"].get<double>() == 0.0) throw ConfigInvalid(where + ".t0: must be nonzero");
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigInvalid(what);
}

}  // namespace

double default_tolerance(const std::string& check) { return tolerances().at(check); }

RunConfig parse_config(const json& doc) {
  const json top = normalize(doc,
                             {{"name", Kind::String, nullptr, true},
                              {"flow", Kind::String, nullptr, true},
                              {"grid", Kind::Object, nullptr, true},
                              {"params", Kind::Object, nullptr, true},
                              {"initial", Kind::Object, nullptr, true},
                              {"checks", Kind::Array, json::array()}},
                             "config");
  RunConfig c;
  c.name = top["name"].get<std::string>();
  require(std::regex_match(c.name, std::regex("[A-Za-z0-9._-]+")) && c.name != "." && c.name != "..",
          "config.name: use letters, digits, '.', '_' or '-'");
  c.flow = top["flow"].get<std::string>();
  const auto f = flow_table().find(c.flow);
  require(f != flow_table().end(), "config.flow: unknown flow '" + c.flow + "'");
  c.kind = f->second;
  if (c.kind == FlowKind::RfCoupled) c.variant = coupled_variant_from_string(c.flow);

  if (c.kind == FlowKind::Burgers) {
    c.grid = normalize(doc["grid"],
                       {{"n", Kind::Integer, nullptr, true},
                        {"y_min", Kind::Number, 0.0},
                        {"length", Kind::Number, kTwoPi},
                        {"periodic", Kind::Bool, true}},
                       "config.grid");
    require(c.grid["n"].get<int>() >= 8, "config.grid.n: at least 8 nodes");
    require(c.grid["length"].get<double>() > 0.0, "config.grid.length: must be positive");
  } else {
    c.grid = normalize(doc["grid"],
                       {{"nx", Kind::Integer, nullptr, true},
                        {"ny", Kind::Integer, nullptr, true},
                        {"Lx", Kind::Number, kTwoPi},
                        {"Ly", Kind::Number, kTwoPi}},
                       "config.grid");
    try {
      Grid2D(c.grid["nx"].get<int>(), c.grid["ny"].get<int>(), c.grid["Lx"].get<double>(), c.grid["Ly"].get<double>());
    } catch (const Error& e) {
      throw ConfigInvalid(std::string("config.grid: ") + e.what());
    }
  }

  c.params = normalize(doc["params"], param_keys(c.kind), "config.params");
  json& p = c.params;
  require(p["dt"].get<double>() > 0.0, "config.params.dt: must be positive");
  require(p["steps"].get<long long>() >= 1, "config.params.steps: must be at least 1");
  if (p["stride"].is_null()) p["stride"] = p["steps"];
  require(p["stride"].get<long long>() >= 1, "config.params.stride: must be at least 1");
  if (p.contains("order")) stencil_order_from_int(p["order"].get<int>());
  if (p.contains("integrator")) integrator_from_string(p["integrator"].get<std::string>());
  if (p.contains("convention")) lax_convention_from_string(p["convention"].get<std::string>());
  if (p.contains("blowup_ceiling")) require(p["blowup_ceiling"].get<double>() > 0.0, "config.params.blowup_ceiling: must be positive");
  if (c.kind == FlowKind::RfCoupled) {
    const std::string lap = p["laplacian"].get<std::string>();
    require(lap == "metric" || lap == "flat", "config.params.laplacian: expected metric or flat");
    const double s = p["alpha_sign"].get<double>();
    require(s == 1.0 || s == -1.0, "config.params.alpha_sign: expected 1 or -1");
    if (c.variant == CoupledVariant::V73 || c.variant == CoupledVariant::V74) {
      require(p["beta"].get<double>() == 1.0 && p["alpha"].get<double>() == 0.0,
              "config.params: " + c.flow + " fixes beta = 1 and alpha = 0");
    }
  }
  if (c.kind == FlowKind::Burgers) {
    burgers_scheme_from_string(p["scheme"].get<std::string>());
    const double s = p["sign"].get<double>();
    require(s == 1.0 || s == -1.0, "config.params.sign: expected 1 or -1");
    require(p["slope_ceiling"].get<double>() > 0.0, "config.params.slope_ceiling: must be positive");
  }

  const Target t = target_of(c.kind);
  if (c.kind == FlowKind::RfCoupled) {
    c.initial = normalize(doc["initial"],
                          {{"phi", Kind::Object, nullptr, true}, {"u", Kind::Object, nullptr}, {"u_t", Kind::Object, nullptr}},
                          "config.initial");
    for (const char* key : {"phi", "u", "u_t"})
      if (!c.initial[key].is_null()) c.initial[key] = normalize_preset(c.initial[key], t, std::string("config.initial.") + key);
  } else {
    c.initial = normalize_preset(doc["initial"], t, "config.initial");
  }

  const std::set<std::string> allowed = allowed_checks(c.kind);
  std::set<std::string> seen;
  const json& checks = doc.contains("checks") ? doc["checks"] : json::array();
  require(checks.is_array(), "config.checks: expected an array");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string where = "config.checks[" + std::to_string(i) + "]";
    CheckSpec spec;
    if (checks[i].is_string()) {
      spec.name = checks[i].get<std::string>();
    } else {
      const json n = normalize(checks[i], {{"name", Kind::String, nullptr, true}, {"tolerance", Kind::Number, nullptr}}, where);
      spec.name = n["name"].get<std::string>();
      if (!n["tolerance"].is_null()) {
        spec.tolerance = n["tolerance"].get<double>();
        require(*spec.tolerance >= 0.0, where + ".tolerance: must be non-negative");
      }
    }
    require(tolerances().count(spec.name) > 0, where + ": unknown check '" + spec.name + "'");
    require(allowed.count(spec.name) > 0, where + ": check '" + spec.name + "' does not apply to flow " + c.flow);
    require(seen.insert(spec.name).second, where + ": check '" + spec.name + "' declared twice");
    c.checks.push_back(spec);
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigInvalid(path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

json RunConfig::to_json() const {
  json checks_out = json::array();
  for (const CheckSpec& c : checks) {
    json e{{"name", c.name}};
    e["tolerance"] = c.tolerance ? json(*c.tolerance) : json(nullptr);
    checks_out.push_back(e);
  }
  return json{{"name", name}, {"flow", flow}, {"grid", grid}, {"params", params}, {"initial", initial}, {"checks", checks_out}};
}

RunConfig refine(const RunConfig& base, int level) {
  RunConfig c = base;
  if (level == 0) return c;
  const long long f = 1LL << level;
  if (c.kind == FlowKind::Burgers) {
    const int n = c.grid["n"].get<int>();
    c.grid["n"] = c.grid["periodic"].get<bool>() ? n * f : (n - 1) * f + 1;
    return c;
  }
  c.grid["nx"] = c.grid["nx"].get<long long>() * f;
  c.grid["ny"] = c.grid["ny"].get<long long>() * f;
  c.params["dt"] = c.params["dt"].get<double>() / static_cast<double>(f * f);
  c.params["steps"] = c.params["steps"].get<long long>() * f * f;
  c.params["stride"] = c.params["stride"].get<long long>() * f;
  return c;
}

std::vector<PresetInfo> preset_catalog() {
  return {
      {"constant", "spin, scalar, surface, lambda", "s=[x,y,z] (spin, unit) | value=0"},
      {"magnon", "spin", "theta=pi/3, winding=1"},
      {"twisted", "spin", "amplitude=0.3, nu=0, kappa=2"},
      {"random-smooth", "spin, scalar, surface", "seed (required), bandwidth=3, amplitude, odd_symmetric=false (spin)"},
      {"fourier-mode", "scalar, surface", "kx=1, ky=0, amplitude=1"},
      {"sphere-cap", "scalar, surface", "rho (required)"},
      {"linear", "lambda", "a=0, t0=1"},
      {"sine", "lambda", "amplitude=1, k=1"},
  };
}

}  // namespace geoflow::cli
