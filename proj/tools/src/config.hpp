#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <geoflow/metric_flows.hpp>

#include "schema.hpp"

namespace geoflow::cli {

enum class FlowKind { HF, MI, Ishimori, McfGraph, McfParametric, RfPlain, RfNormalized, RfCoupled, Burgers };

/// What an initial-condition preset has to produce for a flow.
enum class Target { Spin, Scalar, Surface, Lambda };

struct CheckSpec {
  std::string name;
  std::optional<double> tolerance;
};

struct RunConfig {
  std::string name;
  std::string flow;
  FlowKind kind = FlowKind::HF;
  CoupledVariant variant = CoupledVariant::V74;
  json grid;     ///< normalized
  json params;   ///< normalized, defaults filled in
  json initial;  ///< normalized preset, or {phi, u, u_t} presets for coupled flows
  std::vector<CheckSpec> checks;

  /// Normalized config; parse_config(to_json()) reproduces this object.
  json to_json() const;
};

/// Validates a config document. Throws ConfigInvalid with a path to the
/// offending key.
RunConfig parse_config(const json& doc);
RunConfig load_config(const std::filesystem::path& path);

/// Same run on a grid refined 2^level times: dt / 4^level, steps * 4^level,
/// stride * 2^level, so the stored-level spacing halves and the end time is kept.
/// Burgers charts only refine the node count.
RunConfig refine(const RunConfig& base, int level);

struct PresetInfo {
  std::string name;
  std::string targets;
  std::string params;
};
std::vector<PresetInfo> preset_catalog();

/// Default tolerance of a check (applied when the config does not declare one).
double default_tolerance(const std::string& check);

}  // namespace geoflow::cli
