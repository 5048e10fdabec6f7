#include "dpc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include "json.hpp"

#include "dpc/biorth.hpp"
#include "dpc/control.hpp"
#include "dpc/parallel.hpp"
#include "dpc/spectral.hpp"

namespace dpc {

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void configError(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

template <class T>
T take(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    configError(std::string("wrong type for '") + key + "'");
  }
}

void rejectUnknown(const json& j, std::initializer_list<const char*> known, const char* where) {
  for (const auto& [k, v] : j.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* s) { return k == s; }))
      configError(std::string("unknown key '") + k + "' in " + where);
  }
}

std::optional<BoundarySide> parseSide(const std::string& s) {
  if (s == "auto") return std::nullopt;
  for (auto side : {BoundarySide::LeftNeumann, BoundarySide::RightDirichlet, BoundarySide::CriticalLeft})
    if (s == sideName(side)) return side;
  configError("unknown boundary '" + s + "'");
}

const char* regimeName(Regime r) { return r == Regime::Critical ? "critical" : "supercritical"; }

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

constexpr const char* kColumns[] = {"alpha", "beta", "mu", "gamma", "kappa_alpha", "nu", "regime", "T",
                                    "delta", "estimatedCost", "upperExpr", "lowerExpr", "nullResidual",
                                    "biorthResidual", "wallClockMs", "status", "error"};

double numbers(const ResultRow& r, std::size_t i) {
  const double v[] = {r.alpha, r.beta, r.mu, r.gamma, r.kappa, r.nu, 0.0, r.T, r.delta, r.estimatedCost,
                      r.upperExpr, r.lowerExpr, r.nullResidual, r.biorthResidual, r.wallClockMs};
  return v[i];
}

ResultRow failedRow(const GridPoint& g, double T, double delta) {
  ResultRow r;
  r.alpha = g.alpha;
  r.beta = g.beta;
  r.mu = g.mu;
  r.gamma = r.kappa = r.nu = kNaN;
  r.T = T;
  r.delta = delta;
  r.estimatedCost = r.upperExpr = r.lowerExpr = r.nullResidual = r.biorthResidual = kNaN;
  r.wallClockMs = 0.0;
  r.ok = false;
  return r;
}

void markFailed(ResultRow& r, ErrorCode c, const std::string& msg) {
  r.ok = false;
  r.error = c;
  r.message = msg;
  r.estimatedCost = r.upperExpr = r.lowerExpr = r.nullResidual = r.biorthResidual = kNaN;
}

BoundaryConfig boundaryFor(const ExperimentConfig& cfg, const ProblemParams& p) {
  if (cfg.boundary) return {*cfg.boundary};
  return {p.regime == Regime::Critical ? BoundarySide::CriticalLeft : BoundarySide::LeftNeumann};
}

BiorthOptions biorthOptions(const ExperimentConfig& cfg) {
  BiorthOptions o;
  o.timeNodes = cfg.timeNodes;
  o.tailTol = cfg.tailTol;
  o.maxRadius = cfg.maxRadius;
  o.residualTol = cfg.biorthTol;
  return o;
}

template <class Fn>
void guarded(ResultRow& r, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    markFailed(r, e.code(), e.what());
  } catch (const std::exception& e) {
    markFailed(r, ErrorCode::DomainError, e.what());
  }
}

std::vector<ResultRow> runPoint(const ExperimentConfig& cfg, const GridPoint& g) {
  std::vector<ResultRow> rows;
  ProblemParams p;
  BasisPtr basis;
  std::optional<Error> setup;
  try {
    p = makeParams(g.alpha, g.beta, g.mu);
    basis = std::make_shared<const SpectralBasis>(buildBasis(p, cfg.N));
  } catch (const Error& e) {
    setup = e;
  }
  for (double T : cfg.T) {
    ResultRow r = failedRow(g, T, cfg.delta);
    if (setup) {
      markFailed(r, setup->code(), setup->what());
      rows.push_back(r);
      continue;
    }
    r.alpha = p.alpha;
    r.beta = p.beta;
    r.mu = p.mu;
    r.gamma = p.gamma;
    r.kappa = p.kappa;
    r.nu = p.nu;
    r.regime = regimeName(p.regime);
    r.ok = true;
    const auto t0 = std::chrono::steady_clock::now();
    guarded(r, [&] {
      const BoundaryConfig bc = boundaryFor(cfg, p);
      const auto fam = buildBiorthFamily(basis, T, cfg.delta, cfg.Kbuild, biorthOptions(cfg));
      const auto probes = defaultProbes(basis, cfg.probeModes, cfg.probeMixtures, cfg.seed);
      const Calibration cal{cfg.cUpper, cfg.cLower, true};
      const CostReport rep = estimateCost(*basis, fam, bc, probes, cal);
      const double s = cfg.sobolev.value_or(bc.defaultSobolev(*basis));
      double worst = 0.0;
      for (const auto& u : probes) {
        CoeffVector v = u;
        const double n0 = sobolevNorm(v, 0.0);
        for (double& a : v.coeffs) a /= n0;
        worst = std::max(worst, verifyNullControl(v, synthesizeControl(v, fam, bc), bc, s));
      }
      r.estimatedCost = rep.estimatedCost;
      r.upperExpr = rep.upperExpr;
      r.lowerExpr = rep.lowerExpr;
      r.nullResidual = worst;
      r.biorthResidual = fam.weightedResidual;
    });
    if (cfg.recordTiming)
      r.wallClockMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rows.push_back(r);
  }
  // One-point calibration: rescale both bounds so they meet the estimate at the smallest T.
  if (cfg.calibration == CalibrationMode::OnePoint && !rows.empty() && rows.front().ok) {
    const ResultRow& first = rows.front();
    if (first.upperExpr > 0.0 && first.lowerExpr > 0.0) {
      const double ku = first.estimatedCost / first.upperExpr, kl = first.estimatedCost / first.lowerExpr;
      for (auto& r : rows) {
        if (!r.ok) continue;
        r.upperExpr *= ku;
        r.lowerExpr *= kl;
      }
    }
  }
  return rows;
}

ojson rowJson(const ResultRow& r) {
  ojson o;
  for (std::size_t i = 0; i < std::size(kColumns); ++i) {
    const char* k = kColumns[i];
    if (i == 6) {
      o[k] = r.regime.empty() ? ojson(nullptr) : ojson(r.regime);
    } else if (i == 15) {
      o[k] = r.ok ? "ok" : "failed";
    } else if (i == 16) {
      o[k] = r.error ? ojson(std::string(codeName(*r.error))) : ojson(nullptr);
    } else {
      const double v = numbers(r, i);
      o[k] = std::isfinite(v) ? ojson(v) : ojson(nullptr);
    }
  }
  return o;
}

std::optional<ErrorCode> codeFromName(const std::string& s) {
  for (int c = 0; c <= static_cast<int>(ErrorCode::IoError); ++c)
    if (codeName(static_cast<ErrorCode>(c)) == s) return static_cast<ErrorCode>(c);
  return std::nullopt;
}

}  // namespace

ExperimentConfig parseConfig(const std::string& text) {
  json j;
  try {
    j = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    configError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) configError("config must be a JSON object");
  rejectUnknown(j,
                {"grid", "T", "delta", "N", "Kbuild", "boundary", "probes", "seed", "tolerances", "sobolev",
                 "calibration", "output", "record_timing", "workers"},
                "config");
  ExperimentConfig c;
  if (!j.contains("grid") || !j["grid"].is_array()) configError("'grid' must be an array");
  for (const auto& g : j["grid"]) {
    if (!g.is_object() || !g.contains("alpha") || !g.contains("beta") || !g.contains("mu"))
      configError("grid entries need alpha, beta and mu");
    rejectUnknown(g, {"alpha", "beta", "mu"}, "grid entry");
    c.grid.push_back({take(g, "alpha", 0.0), take(g, "beta", 0.0), take(g, "mu", 0.0)});
  }
  if (!j.contains("T") || !j["T"].is_array()) configError("'T' must be an array");
  c.T = take(j, "T", std::vector<double>{});
  c.delta = take(j, "delta", c.delta);
  c.N = take(j, "N", c.N);
  c.Kbuild = take(j, "Kbuild", c.Kbuild);
  c.boundary = parseSide(take(j, "boundary", std::string("auto")));
  if (j.contains("probes")) {
    const auto& p = j["probes"];
    rejectUnknown(p, {"modes", "mixtures"}, "probes");
    c.probeModes = take(p, "modes", c.probeModes);
    c.probeMixtures = take(p, "mixtures", c.probeMixtures);
  }
  c.seed = take(j, "seed", c.seed);
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    rejectUnknown(t, {"residual", "biorth", "tail", "max_radius", "time_nodes"}, "tolerances");
    c.residualTol = take(t, "residual", c.residualTol);
    c.biorthTol = take(t, "biorth", c.biorthTol);
    c.tailTol = take(t, "tail", c.tailTol);
    c.maxRadius = take(t, "max_radius", c.maxRadius);
    c.timeNodes = take(t, "time_nodes", c.timeNodes);
  }
  if (j.contains("sobolev") && !j["sobolev"].is_null()) c.sobolev = take(j, "sobolev", 0.0);
  if (j.contains("calibration")) {
    const auto& k = j["calibration"];
    rejectUnknown(k, {"mode", "c_upper", "c_lower"}, "calibration");
    const auto mode = take(k, "mode", std::string("none"));
    if (mode == "none") c.calibration = CalibrationMode::None;
    else if (mode == "one_point") c.calibration = CalibrationMode::OnePoint;
    else configError("unknown calibration mode '" + mode + "'");
    c.cUpper = take(k, "c_upper", c.cUpper);
    c.cLower = take(k, "c_lower", c.cLower);
  }
  if (j.contains("output")) {
    const auto& o = j["output"];
    rejectUnknown(o, {"dir", "stem", "format"}, "output");
    c.outDir = take(o, "dir", c.outDir.string());
    c.stem = take(o, "stem", c.stem);
    const auto f = take(o, "format", std::string("csv"));
    if (f == "csv") c.format = OutputFormat::Csv;
    else if (f == "json") c.format = OutputFormat::Json;
    else configError("unknown output format '" + f + "'");
  }
  c.recordTiming = take(j, "record_timing", c.recordTiming);
  c.workers = take(j, "workers", c.workers);

  if (!(c.Kbuild >= 1 && c.N >= c.Kbuild)) configError("need N >= Kbuild >= 1");
  if (c.probeModes > c.Kbuild) configError("probe modes exceed Kbuild");
  if (!(c.delta > 0.0 && c.delta < 1.0)) configError("delta must lie in (0, 1)");
  for (std::size_t i = 0; i < c.T.size(); ++i) {
    if (!(c.T[i] > 0.0) || !std::isfinite(c.T[i])) configError("T values must be positive");
    if (i > 0 && c.T[i] < c.T[i - 1]) configError("T values must be sorted");
  }
  if (!(c.residualTol > 0.0 && c.biorthTol > 0.0 && c.tailTol > 0.0 && c.maxRadius > 0.0))
    configError("tolerances must be positive");
  if (c.timeNodes < 3) configError("time_nodes must be at least 3");
  if (!(c.cUpper > 0.0 && c.cLower > 0.0)) configError("calibration constants must be positive");
  if (c.stem.empty()) configError("output stem is empty");
  return c;
}

ExperimentConfig loadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) configError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parseConfig(ss.str());
}

std::vector<ResultRow> runExperiment(const ExperimentConfig& cfg) {
  std::vector<std::vector<ResultRow>> perPoint(cfg.grid.size());
  if (cfg.T.empty()) return {};
  parallelFor(cfg.grid.size(), [&](std::size_t i) { perPoint[i] = runPoint(cfg, cfg.grid[i]); }, cfg.workers);
  std::vector<ResultRow> rows;
  for (auto& v : perPoint) rows.insert(rows.end(), v.begin(), v.end());
  return rows;
}

std::string toCsv(const std::vector<ResultRow>& rows) {
  std::string out;
  for (std::size_t i = 0; i < std::size(kColumns); ++i) {
    if (i) out += ',';
    out += kColumns[i];
  }
  out += '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < std::size(kColumns); ++i) {
      if (i) out += ',';
      if (i == 6) out += r.regime;
      else if (i == 15) out += r.ok ? "ok" : "failed";
      else if (i == 16) out += r.error ? std::string(codeName(*r.error)) : "";
      else out += fmt17(numbers(r, i));
    }
    out += '\n';
  }
  return out;
}

std::string toJson(const std::vector<ResultRow>& rows) {
  ojson arr = ojson::array();
  for (const auto& r : rows) arr.push_back(rowJson(r));
  return arr.dump(2) + "\n";
}

std::vector<ResultRow> rowsFromJson(const std::string& text) {
  const json arr = json::parse(text);
  std::vector<ResultRow> rows;
  auto num = [](const json& o, const char* k) { return o.at(k).is_null() ? kNaN : o.at(k).get<double>(); };
  for (const auto& o : arr) {
    ResultRow r;
    r.alpha = num(o, "alpha");
    r.beta = num(o, "beta");
    r.mu = num(o, "mu");
    r.gamma = num(o, "gamma");
    r.kappa = num(o, "kappa_alpha");
    r.nu = num(o, "nu");
    r.regime = o.at("regime").is_null() ? "" : o.at("regime").get<std::string>();
    r.T = num(o, "T");
    r.delta = num(o, "delta");
    r.estimatedCost = num(o, "estimatedCost");
    r.upperExpr = num(o, "upperExpr");
    r.lowerExpr = num(o, "lowerExpr");
    r.nullResidual = num(o, "nullResidual");
    r.biorthResidual = num(o, "biorthResidual");
    r.wallClockMs = num(o, "wallClockMs");
    r.ok = o.at("status").get<std::string>() == "ok";
    if (!o.at("error").is_null()) r.error = codeFromName(o.at("error").get<std::string>());
    rows.push_back(r);
  }
  return rows;
}

std::filesystem::path emitResults(const std::vector<ResultRow>& rows, const ExperimentConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.outDir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + cfg.outDir.string() + ": " + ec.message());
  const bool csv = cfg.format == OutputFormat::Csv;
  const auto path = cfg.outDir / (cfg.stem + (csv ? ".csv" : ".json"));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  const std::string body = csv ? toCsv(rows) : toJson(rows);
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
  return path;
}

std::vector<CheckResult> verifyInvariants(const ExperimentConfig& cfg) {
  std::vector<CheckResult> out;
  auto add = [&](std::string name, bool ok, std::string detail) {
    out.push_back({std::move(name), ok, std::move(detail)});
  };
  for (const auto& g : cfg.grid) {
    const std::string tag = "(" + fmt17(g.alpha) + ", " + fmt17(g.beta) + ", " + fmt17(g.mu) + ")";
    ProblemParams p;
    try {
      p = makeParams(g.alpha, g.beta, g.mu);
    } catch (const Error& e) {
      add("params " + tag, false, e.what());
      continue;
    }
    try {
      const auto basis = std::make_shared<const SpectralBasis>(buildBasis(p, cfg.N));
      double gram = 0.0;
      const std::size_t m = std::min<std::size_t>(cfg.N, 8);
      for (std::size_t k = 1; k <= m; ++k)
        for (std::size_t l = k; l <= m; ++l) gram = std::max(gram, std::abs(gramEntry(*basis, k, l) - (k == l)));
      add("orthonormality " + tag, gram <= 1e-9, "max |G - I| = " + fmt17(gram));

      double rec = 0.0;
      for (double x : {0.5, 3.0, 11.0, 40.0}) {
        const double n = p.nu + 1.0;
        const double lhs = besselJ(n - 1.0, x) + besselJ(n + 1.0, x), rhs = 2.0 * n / x * besselJ(n, x);
        rec = std::max(rec, std::abs(lhs - rhs));
      }
      add("bessel recurrence " + tag, rec <= 1e-10, "max residual = " + fmt17(rec));

      const BoundaryConfig bc = boundaryFor(cfg, p);
      const double s = cfg.sobolev.value_or(bc.defaultSobolev(*basis));
      for (double T : cfg.T) {
        const auto fam = buildBiorthFamily(basis, T, cfg.delta, cfg.Kbuild, biorthOptions(cfg));
        const auto probes = defaultProbes(basis, cfg.probeModes, cfg.probeMixtures, cfg.seed);
        double worst = 0.0;
        for (const auto& u : probes) {
          CoeffVector v = u;
          const double n0 = sobolevNorm(v, 0.0);
          for (double& a : v.coeffs) a /= n0;
          worst = std::max(worst, verifyNullControl(v, synthesizeControl(v, fam, bc), bc, s));
        }
        const std::string at = tag + " T=" + fmt17(T);
        add("null control " + at, worst <= cfg.residualTol, "max residual = " + fmt17(worst));
        const double up = upperBoundExpr(p, T, cfg.delta, bc), lo = lowerBoundExpr(p, T, bc);
        add("bound positivity " + at, up > 0.0 && lo > 0.0 && std::isfinite(up) && std::isfinite(lo),
            "upper = " + fmt17(up) + ", lower = " + fmt17(lo));
      }
    } catch (const Error& e) {
      add("pipeline " + tag, false, e.what());
    }
  }
  return out;
}

}  // namespace dpc
