#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <geoflow/error.hpp>
#include <geoflow/io.hpp>

#include "config.hpp"
#include "runner.hpp"
#include "sha256.hpp"

namespace fs = std::filesystem;
using namespace geoflow;
using namespace geoflow::cli;

namespace {

enum Exit { Ok = 0, Numerical = 1, CheckFailed = 2, UnexpectedBlowUp = 3, BadConfig = 4 };

const char* module_of(FlowKind k) {
  switch (k) {
    case FlowKind::HF:
    case FlowKind::MI:
    case FlowKind::Ishimori: return "spin-flows";
    case FlowKind::McfGraph:
    case FlowKind::McfParametric: return "graph-mcf";
    case FlowKind::Burgers: return "lax-verify";
    default: return "metric-flows";
  }
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json check_json(const CheckResult& r) {
  json j{{"name", r.name},
         {"value", number(r.value)},
         {"tolerance", r.tolerance},
         {"norms", r.norms},
         {"slope", r.slope ? number(*r.slope) : json(nullptr)},
         {"pass", r.pass}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

void write_file(const fs::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  out << body;
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

int exit_code(const RunResult& r) {
  if (r.blew_up && !r.blowup_expected) return UnexpectedBlowUp;
  return r.checks_pass() ? Ok : CheckFailed;
}

int cmd_run(const std::string& path, const std::string& out_root) {
  const RunConfig c = load_config(path);
  RunResult r;
  try {
    r = execute(c);
  } catch (const Error& e) {
    std::cerr << "error in " << module_of(c.kind) << " (" << c.flow << "): " << e.what() << '\n';
    return Numerical;
  }
  const fs::path dir = fs::path(out_root) / c.name;
  fs::create_directories(dir);

  json manifest = json::array();
  for (const auto& [file, body] : r.artifacts) {
    write_file(dir / file, body);
    manifest.push_back({{"file", file}, {"sha256", sha256_hex(body)}, {"bytes", body.size()}});
  }
  json checks = json::array();
  for (const CheckResult& k : r.checks) checks.push_back(check_json(k));
  const int code = exit_code(r);
  json report{{"config", c.to_json()},
              {"summary", r.summary},
              {"blowup", {{"occurred", r.blew_up}, {"expected", r.blowup_expected}, {"ok", r.blowup_ok}}},
              {"checks", checks},
              {"artifacts", manifest},
              {"exit_code", code}};
  if (!r.blowup_message.empty()) report["blowup"]["message"] = r.blowup_message;
  write_file(dir / "report.json", report.dump(2) + "\n");

  for (const CheckResult& k : r.checks) {
    std::printf("%-18s %-4s value %.6e tol %.1e", k.name.c_str(), k.pass ? "PASS" : "FAIL", k.value, k.tolerance);
    if (k.slope) std::printf(" slope %.3f", *k.slope);
    if (!k.error.empty()) std::printf(" (%s)", k.error.c_str());
    std::printf("\n");
  }
  if (r.blew_up) std::printf("blow-up (%s): %s\n", r.blowup_expected ? "expected" : "unexpected", r.blowup_message.c_str());
  else if (!r.blowup_ok) std::printf("%s\n", r.blowup_message.c_str());
  std::printf("report: %s\n", (dir / "report.json").string().c_str());
  return code;
}

double pairwise_order(double h0, double e0, double h1, double e1) {
  if (!(e0 > 0) || !(e1 > 0)) return std::nan("");
  return std::log(e0 / e1) / std::log(h0 / h1);
}

double fit_slope(const std::vector<double>& h, const std::vector<double>& e) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(e[i] > 0)) return std::nan("");
    mx += std::log(h[i]);
    my += std::log(e[i]);
  }
  mx /= h.size();
  my /= h.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    sxy += (std::log(h[i]) - mx) * (std::log(e[i]) - my);
    sxx += (std::log(h[i]) - mx) * (std::log(h[i]) - mx);
  }
  return h.size() < 2 ? std::nan("") : sxy / sxx;
}

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string cell(double v) { return std::isfinite(v) ? format_double(v) : ""; }

int cmd_convergence(const std::string& path, int levels, const std::string& out_root) {
  const RunConfig base = load_config(path);
  if (levels < 2) throw ConfigInvalid("--levels must be at least 2");
  std::vector<std::string> columns;
  for (const CheckSpec& s : base.checks) columns.push_back(s.name);
  if (base.kind == FlowKind::Burgers) columns.push_back("blowup_gap");

  std::vector<double> hs;
  std::vector<std::vector<double>> values(columns.size());
  for (int l = 0; l < levels; ++l) {
    const RunConfig c = refine(base, l);
    RunResult r;
    try {
      r = execute(c);
    } catch (const Error& e) {
      std::cerr << "error in " << module_of(c.kind) << " (" << c.flow << ", level " << l << "): " << e.what() << '\n';
      return Numerical;
    }
    if (r.blew_up && !r.blowup_expected) {
      std::cerr << "unexpected blow-up at level " << l << ": " << r.blowup_message << '\n';
      return UnexpectedBlowUp;
    }
    hs.push_back(nominal_h(c));
    for (std::size_t k = 0; k < r.checks.size(); ++k) {
      if (!r.checks[k].error.empty()) std::cerr << "level " << l << ": " << r.checks[k].error << '\n';
      values[k].push_back(r.checks[k].value);
    }
    if (base.kind == FlowKind::Burgers) {
      const json& b = r.summary["blowup"]["relative_gap"];
      values.back().push_back(b.is_null() ? std::nan("") : b.get<double>());
    }
  }

  std::ostringstream csv;
  csv << "level,h";
  for (const auto& c : columns) csv << ',' << c << ',' << c << "_order";
  csv << '\n';
  for (int l = 0; l < levels; ++l) {
    csv << l << ',' << format_double(hs[l]);
    for (std::size_t k = 0; k < columns.size(); ++k) {
      const double o = l ? pairwise_order(hs[l - 1], values[k][l - 1], hs[l], values[k][l]) : std::nan("");
      csv << ',' << cell(values[k][l]) << ',' << cell(o);
    }
    csv << '\n';
  }
  csv << "slope,";
  for (std::size_t k = 0; k < columns.size(); ++k) csv << ',' << cell(fit_slope(hs, values[k])) << ',';
  csv << '\n';

  const fs::path dir = fs::path(out_root) / base.name;
  fs::create_directories(dir);
  write_file(dir / "convergence.csv", csv.str());

  std::printf("%-6s %-24s", "level", "h");
  for (const auto& c : columns) std::printf(" %-24s %-8s", c.c_str(), "order");
  std::printf("\n");
  for (int l = 0; l < levels; ++l) {
    std::printf("%-6d %-24.17g", l, hs[l]);
    for (std::size_t k = 0; k < columns.size(); ++k) {
      const double o = l ? pairwise_order(hs[l - 1], values[k][l - 1], hs[l], values[k][l]) : std::nan("");
      std::printf(" %-24.17g %-8s", values[k][l], std::isfinite(o) ? fixed3(o).c_str() : "-");
    }
    std::printf("\n");
  }
  std::printf("%-31s", "fitted slope");
  for (std::size_t k = 0; k < columns.size(); ++k) {
    const double s = fit_slope(hs, values[k]);
    if (std::isfinite(s)) std::printf(" %-33.4f", s);
    else std::printf(" %-33s", "-");
  }
  std::printf("\ntable: %s\n", (dir / "convergence.csv").string().c_str());
  return Ok;
}

int cmd_list_presets() {
  std::printf("%-14s %-30s %s\n", "preset", "targets", "parameters");
  for (const PresetInfo& p : preset_catalog())
    std::printf("%-14s %-30s %s\n", p.name.c_str(), p.targets.c_str(), p.params.c_str());
  return Ok;
}

int cmd_validate(const std::string& path) {
  const RunConfig c = load_config(path);
  std::cout << c.to_json().dump(2) << '\n';
  return Ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geoflow: integrable geometric flow experiments"};
  app.require_subcommand(1);

  std::string config, out = "out";
  int levels = 3;
  auto* run = app.add_subcommand("run", "Run a flow and its checks");
  run->add_option("config", config, "Config file")->required();
  run->add_option("--out", out, "Output directory");
  auto* conv = app.add_subcommand("convergence", "Refinement study of the declared checks");
  conv->add_option("config", config, "Config file")->required();
  conv->add_option("--levels", levels, "Number of refinement levels")->required();
  conv->add_option("--out", out, "Output directory");
  auto* presets = app.add_subcommand("list-presets", "List initial-condition presets");
  auto* validate = app.add_subcommand("validate", "Validate a config and print it normalized");
  validate->add_option("config", config, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run) return cmd_run(config, out);
    if (*conv) return cmd_convergence(config, levels, out);
    if (*presets) return cmd_list_presets();
    if (*validate) return cmd_validate(config);
  } catch (const ConfigInvalid& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return BadConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Numerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Numerical;
  }
  return Ok;
}
