#include "geoflow/error.hpp"

#include <sstream>

namespace geoflow {

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::SecularGrowth: return "SecularGrowth";
    case ErrorCode::ResonantMode: return "ResonantMode";
    case ErrorCode::NonzeroMean: return "NonzeroMean";
    case ErrorCode::DegenerateVector: return "DegenerateVector";
    case ErrorCode::DegenerateMetric: return "DegenerateMetric";
    case ErrorCode::NegativeDiscriminant: return "NegativeDiscriminant";
    case ErrorCode::VanishingSlope: return "VanishingSlope";
    case ErrorCode::NonPeriodicSurface: return "NonPeriodicSurface";
    case ErrorCode::UnstableStep: return "UnstableStep";
    case ErrorCode::BlowUp: return "BlowUp";
    case ErrorCode::ConstraintLost: return "ConstraintLost";
    case ErrorCode::InsufficientHistory: return "InsufficientHistory";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

GridTooSmall::GridTooSmall(int n, int required)
    : Error(ErrorCode::GridTooSmall,
            std::to_string(n) + " nodes, stencil needs at least " + std::to_string(required)) {}

SecularGrowth::SecularGrowth(int row, double mean)
    : Error(ErrorCode::SecularGrowth,
            "row " + std::to_string(row) + " has x-mean " + fmt_double(mean)),
      row_(row),
      mean_(mean) {}

ResonantMode::ResonantMode(int kx, int ky, double magnitude)
    : Error(ErrorCode::ResonantMode, "mode (" + std::to_string(kx) + "," + std::to_string(ky) +
                                         ") carries " + fmt_double(magnitude)),
      kx_(kx),
      ky_(ky) {}

NonzeroMean::NonzeroMean(double mean)
    : Error(ErrorCode::NonzeroMean, "source mean " + fmt_double(mean)), mean_(mean) {}

NodeError::NodeError(ErrorCode code, std::size_t node, const std::string& what)
    : Error(code, "node " + std::to_string(node) + ": " + what), node_(node) {}

DegenerateVector::DegenerateVector(std::size_t node)
    : NodeError(ErrorCode::DegenerateVector, node, "vector norm below 1e-13") {}

DegenerateMetric::DegenerateMetric(std::size_t node, double det)
    : NodeError(ErrorCode::DegenerateMetric, node, "metric determinant " + fmt_double(det)) {}

NegativeDiscriminant::NegativeDiscriminant(std::size_t node, double disc)
    : NodeError(ErrorCode::NegativeDiscriminant, node, "discriminant " + fmt_double(disc)) {}

VanishingSlope::VanishingSlope(std::size_t node)
    : NodeError(ErrorCode::VanishingSlope, node, "|phi_1| below 1e-12") {}

BlowUp::BlowUp(double t, const std::string& quantity, double value)
    : Error(ErrorCode::BlowUp,
            "t=" + fmt_double(t) + ", " + quantity + "=" + fmt_double(value)),
      t_(t) {}

ConstraintLost::ConstraintLost(double t, double residual)
    : Error(ErrorCode::ConstraintLost,
            "t=" + fmt_double(t) + ", constraint residual " + fmt_double(residual)),
      t_(t),
      residual_(residual) {}

InsufficientHistory::InsufficientHistory(std::size_t have, std::size_t need)
    : Error(ErrorCode::InsufficientHistory,
            std::to_string(have) + " time levels, need " + std::to_string(need)) {}

UnstableStep::UnstableStep(double dt, double limit)
    : Error(ErrorCode::UnstableStep,
            "dt=" + fmt_double(dt) + " exceeds stability limit " + fmt_double(limit)) {}

ConfigInvalid::ConfigInvalid(const std::string& what) : Error(ErrorCode::ConfigInvalid, what) {}

}  // namespace geoflow
