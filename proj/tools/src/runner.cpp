#include "runner.hpp"

#include <cmath>
#include <sstream>

#include <geoflow/error.hpp>
#include <geoflow/io.hpp>
#include <geoflow/presets.hpp>

namespace geoflow::cli {

namespace {

Vec3 vec3(const json& v) { return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()}; }

StencilOrder order_of(const RunConfig& c) { return stencil_order_from_int(c.params["order"].get<int>()); }

VectorField3 spin_preset(const Grid2D& g, const json& p) {
  const std::string name = p["preset"].get<std::string>();
  if (name == "constant") return constant_spin(g, vec3(p["s"]));
  if (name == "magnon") return magnon(g, p["theta"].get<double>(), p["winding"].get<int>());
  if (name == "twisted")
    return twisted_profile(g, p["amplitude"].get<double>(), p["nu"].get<double>(), p["kappa"].get<double>());
  return random_smooth_spin(g, p["seed"].get<std::uint64_t>(), p["bandwidth"].get<int>(),
                            p["amplitude"].get<double>(), p["odd_symmetric"].get<bool>());
}

ScalarField scalar_preset(const Grid2D& g, const json& p) {
  if (p.is_null()) return ScalarField(g);
  const std::string name = p["preset"].get<std::string>();
  if (name == "constant") return ScalarField(g, p["value"].get<double>());
  if (name == "fourier-mode")
    return fourier_mode(g, p["kx"].get<int>(), p["ky"].get<int>(), p["amplitude"].get<double>());
  if (name == "sphere-cap") return sphere_cap(g, p["rho"].get<double>());
  return random_smooth_scalar(g, p["seed"].get<std::uint64_t>(), p["bandwidth"].get<int>(), p["amplitude"].get<double>());
}

LinearPlusPeriodic surface_preset(const Grid2D& g, const json& p) {
  const std::string name = p["preset"].get<std::string>();
  const std::vector<Vec3> flat(g.ny(), Vec3{1, 0, 0});
  if (name == "constant") return {flat, Vec3{0, 1, 0}, VectorField3(g)};
  if (name == "fourier-mode" || name == "sphere-cap") {
    const ScalarField h = scalar_preset(g, p);
    return {flat, Vec3{0, 1, 0}, from_components(ScalarField(g), ScalarField(g), h)};
  }
  const auto seed = p["seed"].get<std::uint64_t>();
  const int bw = p["bandwidth"].get<int>();
  const double a = p["amplitude"].get<double>();
  return {flat, Vec3{0, 1, 0},
          from_components(random_smooth_scalar(g, seed, bw, a), random_smooth_scalar(g, seed + 100, bw, a),
                          random_smooth_scalar(g, seed + 200, bw, a))};
}

BurgersInitial lambda_preset(const json& p) {
  const std::string name = p["preset"].get<std::string>();
  if (name == "linear") return burgers_linear(p["a"].get<double>(), p["t0"].get<double>());
  if (name == "sine") return burgers_sine(p["amplitude"].get<double>(), p["k"].get<double>());
  const double v = p["value"].get<double>();
  return {[v](double) { return v; }, [](double) { return 0.0; }};
}

std::string table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_double(r[i]);
    out << '\n';
  }
  return out.str();
}

std::string field_table(const std::vector<NamedField>& cols) {
  const Grid2D& g = cols.front().second.grid();
  std::vector<std::string> header{"x", "y"};
  for (const auto& c : cols) header.push_back(c.first);
  std::vector<std::vector<double>> rows;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      std::vector<double> r{g.x(i), g.y(j)};
      for (const auto& c : cols) r.push_back(c.second(i, j));
      rows.push_back(std::move(r));
    }
  return table(header, rows);
}

std::string rf_table(const std::vector<RfSample>& s) {
  std::vector<std::vector<double>> rows;
  for (const RfSample& r : s) rows.push_back({r.t, r.volume, r.mean_R, r.min_R, r.max_R});
  return table({"t", "volume", "mean_R", "min_R", "max_R"}, rows);
}

Grid2D grid_of(const RunConfig& c) {
  return Grid2D(c.grid["nx"].get<int>(), c.grid["ny"].get<int>(), c.grid["Lx"].get<double>(), c.grid["Ly"].get<double>());
}

void run_spin(const RunConfig& c, Trajectory& tr, RunResult& res) {
  const SpinFlow flow = c.kind == FlowKind::HF ? SpinFlow::HF : c.kind == FlowKind::MI ? SpinFlow::MI : SpinFlow::Ishimori;
  FlowParams p;
  p.dt = c.params["dt"].get<double>();
  p.integrator = integrator_from_string(c.params["integrator"].get<std::string>());
  p.project_each_step = c.params["project_each_step"].get<bool>();
  p.order = order_of(c);
  p.blowup_ceiling = c.params["blowup_ceiling"].get<double>();
  if (c.params.contains("alpha2")) p.alpha2 = c.params["alpha2"].get<double>();
  const SpinState s0 = make_spin_state(flow, spin_preset(*tr.grid, c.initial), p);
  const SpinTrajectory t = evolve(flow, s0, p, c.params["steps"].get<int>(), c.params["stride"].get<int>());
  tr.spin = t.levels;
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < t.levels.size(); ++i) rows.push_back({t.levels[i].t, t.unit_defect[i], t.constraint[i]});
  res.artifacts["levels.csv"] = table({"t", "unit_defect", "constraint"}, rows);
  std::vector<NamedField> cols = components_of("S", t.levels.back().S);
  cols.emplace_back("u", t.levels.back().u);
  res.artifacts["state.csv"] = field_table(cols);
  res.summary["max_unit_defect"] = *std::max_element(t.unit_defect.begin(), t.unit_defect.end());
  res.summary["max_constraint_residual"] = *std::max_element(t.constraint.begin(), t.constraint.end());
  res.summary["constraint_warned"] = t.constraint_warned;
}

void run_graph(const RunConfig& c, Trajectory& tr, RunResult& res) {
  McfParams p;
  p.dt = c.params["dt"].get<double>();
  p.order = order_of(c);
  p.integrator = integrator_from_string(c.params["integrator"].get<std::string>());
  p.blowup_ceiling = c.params["blowup_ceiling"].get<double>();
  tr.graph = mcf_evolve({scalar_preset(*tr.grid, c.initial), 0.0, vec3(c.params["xi"])}, p,
                        c.params["steps"].get<int>(), c.params["stride"].get<int>());
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < tr.graph.levels.size(); ++i) rows.push_back({tr.graph.levels[i].t, tr.graph.area[i]});
  res.artifacts["area.csv"] = table({"t", "area"}, rows);
  res.artifacts["phi.csv"] = field_table({{"phi", tr.graph.levels.back().phi}});
}

void run_surface(const RunConfig& c, Trajectory& tr, RunResult& res) {
  std::optional<Vec3> J;
  if (!c.params["J"].is_null()) J = vec3(c.params["J"]);
  tr.surface = parametric_evolve(surface_preset(*tr.grid, c.initial), vec3(c.params["xi"]), c.params["dt"].get<double>(),
                                 c.params["steps"].get<int>(), c.params["stride"].get<int>(), order_of(c), J);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < tr.surface.levels.size(); ++i) rows.push_back({tr.surface.times[i], tr.surface.area[i]});
  res.artifacts["area.csv"] = table({"t", "area"}, rows);
  res.artifacts["surface.csv"] = field_table(components_of("r", tr.surface.levels.back().positions()));
}

void run_rf(const RunConfig& c, Trajectory& tr, RunResult& res) {
  const RfTrajectory t = conformal_rf_evolve(scalar_preset(*tr.grid, c.initial), c.kind == FlowKind::RfNormalized,
                                             c.params["dt"].get<double>(), c.params["steps"].get<int>(),
                                             c.params["stride"].get<int>(), order_of(c));
  tr.phi = t.levels;
  tr.rf = t.samples;
  res.artifacts["rf.csv"] = rf_table(t.samples);
  res.artifacts["phi.csv"] = field_table({{"phi", t.levels.back()}});
}

void run_coupled(const RunConfig& c, Trajectory& tr, RunResult& res) {
  const Grid2D& g = *tr.grid;
  CoupledParams p;
  p.beta = c.params["beta"].get<double>();
  p.alpha = c.params["alpha"].get<double>();
  p.alpha_sign = c.params["alpha_sign"].get<double>();
  p.k = c.params["k"].get<double>();
  p.laplacian = c.params["laplacian"].get<std::string>() == "flat" ? LaplacianMode::Flat : LaplacianMode::Metric;
  p.freeze_metric = c.params["freeze_metric"].get<bool>();
  p.order = order_of(c);
  p.blowup_ceiling = c.params["blowup_ceiling"].get<double>();
  const double dt = c.params["dt"].get<double>();
  const int steps = c.params["steps"].get<int>(), stride = c.params["stride"].get<int>();
  CoupledRFState s{scalar_preset(g, c.initial["phi"]), scalar_preset(g, c.initial["u"]), scalar_preset(g, c.initial["u_t"]), 0.0};
  auto store = [&] {
    tr.coupled.push_back(s);
    tr.phi.push_back(s.phi);
    tr.rf.push_back(rf_sample(s.phi, s.t, p.order));
  };
  store();
  for (int i = 1; i <= steps; ++i) {
    s = coupled_rf_step(s, c.variant, p, dt);
    if (i % stride == 0 || i == steps) store();
  }
  res.artifacts["rf.csv"] = rf_table(tr.rf);
  res.artifacts["fields.csv"] = field_table({{"phi", s.phi}, {"u", s.u}, {"u_t", s.u_t}});
}

void run_burgers(const RunConfig& c, Trajectory& tr, RunResult& res) {
  const BurgersChart chart{c.grid["n"].get<int>(), c.grid["y_min"].get<double>(), c.grid["length"].get<double>(),
                           c.grid["periodic"].get<bool>()};
  BurgersParams p;
  p.dt = c.params["dt"].get<double>();
  p.n_steps = c.params["steps"].get<int>();
  p.stride = c.params["stride"].get<int>();
  p.scheme = burgers_scheme_from_string(c.params["scheme"].get<std::string>());
  p.sign = c.params["sign"].get<double>();
  p.slope_ceiling = c.params["slope_ceiling"].get<double>();
  tr.burgers = burgers_lambda_evolve(chart, lambda_preset(c.initial), p);
  const BurgersResult& b = tr.burgers;

  std::vector<std::vector<double>> rows;
  for (const BurgersSnapshot& s : b.snapshots)
    for (int j = 0; j < chart.n; ++j) rows.push_back({s.t, chart.y(j), s.lambda[j]});
  res.artifacts["burgers.csv"] = table({"t", "y", "lambda"}, rows);
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  const json summary{{"t_blowup_est", num(b.t_blowup_est)},
                     {"t_characteristics", num(b.t_characteristics)},
                     {"relative_gap", num(b.relative_gap)}};
  res.artifacts["blowup.json"] = summary.dump(2) + "\n";
  res.summary["blowup"] = summary;
  res.blew_up = b.blew_up;
  if (b.blew_up) {
    res.blowup_message = "max |lambda_y| exceeded the slope ceiling";
    const double tol = c.params["blowup_tolerance"].get<double>();
    res.blowup_ok = std::isfinite(b.relative_gap) && b.relative_gap <= tol;
  } else if (res.blowup_expected) {
    res.blowup_ok = false;
    res.blowup_message = "blow-up was expected but did not occur";
  }
}

}  // namespace

bool RunResult::checks_pass() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return blowup_ok;
}

double nominal_h(const RunConfig& c) {
  if (c.kind == FlowKind::Burgers) {
    const int n = c.grid["n"].get<int>();
    const double L = c.grid["length"].get<double>();
    return c.grid["periodic"].get<bool>() ? L / n : L / (n - 1);
  }
  return c.grid["Lx"].get<double>() / c.grid["nx"].get<int>();
}

Trajectory simulate(const RunConfig& c, RunResult& res) {
  Trajectory tr;
  if (c.kind != FlowKind::Burgers) tr.grid = grid_of(c);
  tr.spacing = c.params["dt"].get<double>() * c.params["stride"].get<double>();
  switch (c.kind) {
    case FlowKind::HF:
    case FlowKind::MI:
    case FlowKind::Ishimori: run_spin(c, tr, res); break;
    case FlowKind::McfGraph: run_graph(c, tr, res); break;
    case FlowKind::McfParametric: run_surface(c, tr, res); break;
    case FlowKind::RfPlain:
    case FlowKind::RfNormalized: run_rf(c, tr, res); break;
    case FlowKind::RfCoupled: run_coupled(c, tr, res); break;
    case FlowKind::Burgers: run_burgers(c, tr, res); break;
  }
  return tr;
}

RunResult execute(const RunConfig& c) {
  RunResult res;
  res.blowup_expected = c.params["expect_blowup"].get<bool>();
  Trajectory tr;
  try {
    tr = simulate(c, res);
  } catch (const BlowUp& e) {
    res.blew_up = true;
    res.blowup_message = e.what();
    res.summary["blowup_time"] = e.time();
    return res;
  }
  if (res.blew_up) return res;
  if (res.blowup_expected) {
    res.blowup_ok = false;
    if (res.blowup_message.empty()) res.blowup_message = "blow-up was expected but did not occur";
  }

  for (const CheckSpec& spec : c.checks) res.checks.push_back(evaluate_check(spec, c, tr, res.artifacts));
  return res;
}

}  // namespace geoflow::cli
