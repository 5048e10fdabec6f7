#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dpc/errors.hpp"
#include "dpc/semigroup.hpp"

namespace dpc {

struct GridPoint {
  double alpha = 0.0;
  double beta = 0.0;
  double mu = 0.0;
};

enum class OutputFormat { Csv, Json };

enum class CalibrationMode { None, OnePoint };

struct ExperimentConfig {
  std::vector<GridPoint> grid;
  std::vector<double> T;
  double delta = 0.5;
  std::size_t N = 30;
  std::size_t Kbuild = 6;
  // nullopt picks left_neumann, or critical_left in the critical regime
  std::optional<BoundarySide> boundary;
  std::size_t probeModes = 5;
  std::size_t probeMixtures = 1;
  std::uint64_t seed = 1;
  double residualTol = 1e-6;
  double biorthTol = 1e-6;
  double tailTol = 1e-17;
  double maxRadius = 5e6;
  std::size_t timeNodes = 513;
  std::optional<double> sobolev;  // residual norm index, per-boundary default when absent
  CalibrationMode calibration = CalibrationMode::None;
  double cUpper = 1.0;
  double cLower = 1.0;
  std::filesystem::path outDir = "out";
  std::string stem = "results";
  OutputFormat format = OutputFormat::Csv;
  bool recordTiming = false;
  unsigned workers = 0;
};

// Throws ConfigError on malformed input or violated invariants.
ExperimentConfig parseConfig(const std::string& text);
ExperimentConfig loadConfig(const std::filesystem::path& path);

struct ResultRow {
  double alpha = 0.0, beta = 0.0, mu = 0.0;
  double gamma = 0.0, kappa = 0.0, nu = 0.0;
  std::string regime;
  double T = 0.0, delta = 0.0;
  double estimatedCost = 0.0, upperExpr = 0.0, lowerExpr = 0.0;
  double nullResidual = 0.0, biorthResidual = 0.0;
  double wallClockMs = 0.0;
  bool ok = true;
  std::optional<ErrorCode> error;
  std::string message;
};

// One row per (grid point, T) in grid order. Pipeline failures mark the row.
std::vector<ResultRow> runExperiment(const ExperimentConfig& cfg);

std::string toCsv(const std::vector<ResultRow>& rows);
std::string toJson(const std::vector<ResultRow>& rows);
std::vector<ResultRow> rowsFromJson(const std::string& text);

// Writes <outDir>/<stem>.csv or .json and returns the path.
std::filesystem::path emitResults(const std::vector<ResultRow>& rows, const ExperimentConfig& cfg);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Invariant checks over the config's grid.
std::vector<CheckResult> verifyInvariants(const ExperimentConfig& cfg);

}  // namespace dpc
