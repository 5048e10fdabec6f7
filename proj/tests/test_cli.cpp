#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "dpc/experiment.hpp"

using namespace dpc;

namespace {

std::size_t lineCount(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

bool rejects(const std::string& text) {
  try {
    parseConfig(text);
  } catch (const Error& e) {
    return e.code() == ErrorCode::ConfigError;
  }
  return false;
}

const char* kSmall = R"({
  // desk point only
  "grid": [{"alpha": 0, "beta": 2, "mu": 0}],
  "T": [1, 2],
  "N": 12,
  "Kbuild": 4,
  "probes": {"modes": 3, "mixtures": 1},
  "seed": 5
})";

}  // namespace

TEST_CASE("parseConfig") {
  const auto cfg = parseConfig(kSmall);
  CHECK(cfg.grid.size() == 1);
  CHECK(cfg.T == std::vector<double>{1.0, 2.0});
  CHECK(cfg.N == 12);
  CHECK(cfg.Kbuild == 4);
  CHECK(cfg.probeModes == 3);
  CHECK(cfg.seed == 5);
  CHECK(cfg.delta == 0.5);
  CHECK(!cfg.boundary);
  CHECK(cfg.format == OutputFormat::Csv);

  const auto j = parseConfig(R"({"grid": [{"alpha": 0, "beta": 2, "mu": 0}], "T": [1], "boundary": "right_dirichlet",
    "output": {"format": "json", "stem": "x"}, "calibration": {"mode": "one_point"}})");
  CHECK(j.boundary == BoundarySide::RightDirichlet);
  CHECK(j.format == OutputFormat::Json);
  CHECK(j.stem == "x");
  CHECK(j.calibration == CalibrationMode::OnePoint);
}

TEST_CASE("parseConfig errors") {
  CHECK(rejects("not json"));
  CHECK(rejects(R"({"grid": [{"alpha": 0, "beta": 2, "mu": 0}], "T": [1], "bogus": 1})"));
  CHECK(rejects(R"({"grid": [{"alpha": 0, "beta": 2, "mu": 0}], "T": [2, 1]})"));
  CHECK(rejects(R"({"grid": [{"alpha": 0, "beta": 2, "mu": 0}], "T": [-1]})"));
  CHECK(rejects(R"({"grid": [{"alpha": 0, "beta": 2, "mu": 0}], "T": [1], "N": 3, "Kbuild": 4})"));
  CHECK(rejects(R"({"grid": [{"alpha": 0, "beta": 2, "mu": 0}], "T": [1], "delta": 1.0})"));
  CHECK(rejects(R"({"grid": [{"alpha": 0, "beta": 2}], "T": [1]})"));
  CHECK(rejects(R"({"grid": [{"alpha": 0, "beta": 2, "mu": 0}], "T": [1], "boundary": "top"})"));
  CHECK(rejects(R"({"grid": [{"alpha": 0, "beta": 2, "mu": 0}], "T": [1], "probes": {"modes": 9}})"));
  CHECK_THROWS_AS(loadConfig("/nonexistent/dir/cfg.json"), Error);
}

TEST_CASE("runExperiment rows and serialization") {
  auto cfg = parseConfig(kSmall);
  const auto rows = runExperiment(cfg);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(r.ok);
    CHECK(r.regime == "supercritical");
    CHECK(r.estimatedCost > 0.0);
    CHECK(r.estimatedCost < r.upperExpr);
    CHECK(r.nullResidual <= 1e-6);
    CHECK(r.wallClockMs == 0.0);
  }
  CHECK(rows[1].estimatedCost < rows[0].estimatedCost);
  const auto csv = toCsv(rows);
  CHECK(lineCount(csv) == 3);
  CHECK(csv.rfind("alpha,beta,mu,", 0) == 0);
  CHECK(toCsv(runExperiment(cfg)) == csv);

  const auto back = rowsFromJson(toJson(rows));
  REQUIRE(back.size() == rows.size());
  CHECK(back[0].estimatedCost == rows[0].estimatedCost);
  CHECK(back[1].T == rows[1].T);
  CHECK(toJson(back) == toJson(rows));

  cfg.T.clear();
  CHECK(runExperiment(cfg).empty());
  CHECK(lineCount(toCsv({})) == 1);
}

TEST_CASE("invalid grid points become failed rows") {
  auto cfg = parseConfig(R"({"grid": [{"alpha": 0, "beta": 2, "mu": 0.3}], "T": [1, 2], "N": 8, "Kbuild": 3, "probes": {"modes": 2}})");
  const auto rows = runExperiment(cfg);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(!r.ok);
    CHECK(r.error == ErrorCode::MuTooLarge);
    CHECK(std::isnan(r.estimatedCost));
  }
  CHECK(toCsv(rows).find("MuTooLarge") != std::string::npos);
}

TEST_CASE("one-point calibration") {
  auto cfg = parseConfig(kSmall);
  cfg.calibration = CalibrationMode::OnePoint;
  const auto rows = runExperiment(cfg);
  CHECK(rows[0].upperExpr == doctest::Approx(rows[0].estimatedCost).epsilon(1e-13));
  CHECK(rows[0].lowerExpr == doctest::Approx(rows[0].estimatedCost).epsilon(1e-13));
}

TEST_CASE("emitResults writes the requested format") {
  auto cfg = parseConfig(kSmall);
  cfg.T = {1.0};
  cfg.outDir = std::filesystem::temp_directory_path() / "dpc_unit_out";
  std::filesystem::remove_all(cfg.outDir);
  const auto rows = runExperiment(cfg);
  const auto p = emitResults(rows, cfg);
  CHECK(p.extension() == ".csv");
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == toCsv(rows));
  cfg.format = OutputFormat::Json;
  CHECK(emitResults(rows, cfg).extension() == ".json");
  std::filesystem::remove_all(cfg.outDir);
}

TEST_CASE("verifyInvariants") {
  auto cfg = parseConfig(kSmall);
  const auto checks = verifyInvariants(cfg);
  CHECK(!checks.empty());
  for (const auto& c : checks) CHECK_MESSAGE(c.passed, c.name << ": " << c.detail);
}
