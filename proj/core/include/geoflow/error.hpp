#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace geoflow {

enum class ErrorCode {
  GridTooSmall,
  InvalidGrid,
  GridMismatch,
  SecularGrowth,
  ResonantMode,
  NonzeroMean,
  DegenerateVector,
  DegenerateMetric,
  NegativeDiscriminant,
  VanishingSlope,
  NonPeriodicSurface,
  UnstableStep,
  BlowUp,
  ConstraintLost,
  InsufficientHistory,
  ConfigInvalid,
};

const char* to_string(ErrorCode code);

/// Base of every numerical or contract failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class GridTooSmall : public Error {
 public:
  GridTooSmall(int n, int required);
};

class SecularGrowth : public Error {
 public:
  SecularGrowth(int row, double mean);
  int row() const noexcept { return row_; }
  double mean() const noexcept { return mean_; }

 private:
  int row_;
  double mean_;
};

class ResonantMode : public Error {
 public:
  ResonantMode(int kx, int ky, double magnitude);
  int kx() const noexcept { return kx_; }
  int ky() const noexcept { return ky_; }

 private:
  int kx_, ky_;
};

class NonzeroMean : public Error {
 public:
  explicit NonzeroMean(double mean);
  double mean() const noexcept { return mean_; }

 private:
  double mean_;
};

/// Raised by node-local operations; `node` is the flat x-fastest index.
class NodeError : public Error {
 public:
  NodeError(ErrorCode code, std::size_t node, const std::string& what);
  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t node_;
};

class DegenerateVector : public NodeError {
 public:
  explicit DegenerateVector(std::size_t node);
};

class DegenerateMetric : public NodeError {
 public:
  DegenerateMetric(std::size_t node, double det);
};

class NegativeDiscriminant : public NodeError {
 public:
  NegativeDiscriminant(std::size_t node, double disc);
};

class VanishingSlope : public NodeError {
 public:
  explicit VanishingSlope(std::size_t node);
};

class BlowUp : public Error {
 public:
  BlowUp(double t, const std::string& quantity, double value);
  double time() const noexcept { return t_; }

 private:
  double t_;
};

class ConstraintLost : public Error {
 public:
  ConstraintLost(double t, double residual);
  double time() const noexcept { return t_; }
  double residual() const noexcept { return residual_; }

 private:
  double t_, residual_;
};

class InsufficientHistory : public Error {
 public:
  InsufficientHistory(std::size_t have, std::size_t need);
};

class UnstableStep : public Error {
 public:
  UnstableStep(double dt, double limit);
};

class ConfigInvalid : public Error {
 public:
  explicit ConfigInvalid(const std::string& what);
};

}  // namespace geoflow
