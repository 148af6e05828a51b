#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <geoflow/burgers.hpp>
#include <geoflow/graph_mcf.hpp>
#include <geoflow/metric_flows.hpp>
#include <geoflow/spin_flows.hpp>

#include "config.hpp"

namespace geoflow::cli {

/// Stored levels of whichever flow ran.
struct Trajectory {
  std::optional<Grid2D> grid;
  double spacing = 0.0;  ///< time between stored levels
  std::vector<SpinState> spin;
  GraphTrajectory graph;
  ParametricTrajectory surface;
  std::vector<ScalarField> phi;       ///< RF conformal factors
  std::vector<RfSample> rf;
  std::vector<CoupledRFState> coupled;
  BurgersResult burgers;
};

struct CheckResult {
  std::string name;
  double value = std::numeric_limits<double>::quiet_NaN();
  double tolerance = 0.0;
  std::optional<double> slope;  ///< refinement slope, when one was measured
  bool pass = false;
  json norms = json::object();
  std::string error;
};

/// File name to contents, written in name order.
using Artifacts = std::map<std::string, std::string>;

struct RunResult {
  json summary = json::object();
  std::vector<CheckResult> checks;
  Artifacts artifacts;
  bool blew_up = false;
  bool blowup_expected = false;
  std::string blowup_message;
  bool blowup_ok = true;  ///< burgers: estimate agrees with the characteristics

  bool checks_pass() const;
};

/// Runs the flow only, filling artifacts and summary fields of `res`.
Trajectory simulate(const RunConfig& config, RunResult& res);

/// Runs the flow and every declared check. BlowUp ends the flow early and
/// skips the checks. Other library errors propagate.
RunResult execute(const RunConfig& config);

CheckResult evaluate_check(const CheckSpec& spec, const RunConfig& config, const Trajectory& tr,
                           Artifacts& artifacts);

/// Grid spacing used as h in convergence tables.
double nominal_h(const RunConfig& config);

}  // namespace geoflow::cli
