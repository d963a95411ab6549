#pragma once

// Configuration-driven runs of the library: one JSON config in, flat CSV and
// JSON files out. Output files carry no timing so that equal configs give
// byte-identical files.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypstrip/metrics.hpp"
#include "hypstrip/peel.hpp"

namespace hypstrip {

struct SurfaceSpec {
  std::string topology;        // "pants" or "torus"
  std::vector<double> values;  // boundary lengths (pants) or traces x, y, z (torus)

  MarkedSurface build() const;
  // Description that rebuilds a surface with the same boundary lengths.
  static SurfaceSpec describe(const MarkedSurface& s);
};

struct ExperimentConfig {
  SurfaceSpec surface;
  std::optional<SurfaceSpec> target;  // Y for spectrum and metric; else peel the arcs
  std::vector<std::string> arcs;      // arc names, or {"filling"}
  PeelConfig peel;
  int bound = 10;
  std::vector<MetricKind> metrics{MetricKind::k, MetricKind::K, MetricKind::d};
  std::string suite = "lemma";
  int samples = 10000;
  std::uint64_t seed = 42;
  std::string out = ".";
};

// Throws ConfigError naming the line and column of a syntax error or the
// dotted path of an offending field.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

std::vector<ArcClass> resolve_arcs(const Topology& t, const std::vector<std::string>& names);

struct Check {
  Check() = default;
  explicit Check(std::string n) : name(std::move(n)) {}

  std::string name;
  long trials = 0;
  long failures = 0;
  double worst = 0.0;  // largest violation seen, 0 when none
  std::string detail;

  void record(bool ok, double violation = 0.0);
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;

  long failures() const;
};

SuiteReport run_suite(const std::string& suite, const ExperimentConfig& cfg);

// Suites split out so that callers can size them independently.
Check projection_check(std::uint64_t seed, int samples);
Check equality_case_check(std::uint64_t seed, int samples);
Check right_triangle_check(std::uint64_t seed, int samples);
Check collapse_lipschitz_check(std::uint64_t seed, int samples, const std::vector<double>& widths);
Check collapse_quantitative_check(std::uint64_t seed, int samples, const std::vector<double>& widths);
Check multicurve_check(const MarkedSurface& x, const PeelReport& peeled, int bound, std::uint64_t seed, int samples);

enum class ExitCode : int { Success = 0, InputError = 1, VerificationFailed = 2 };

struct RunResult {
  ExitCode exit_code = ExitCode::Success;
  std::vector<std::string> files;  // paths written, in order
  std::string report;              // human-readable summary
};

// command is one of build, spectrum, peel, metric, verify. Domain errors
// propagate as hypstrip::Error; the caller maps them to InputError.
RunResult run(const std::string& command, const ExperimentConfig& cfg);

// Shortest decimal string with 15 significant digits, locale independent.
std::string format_number(double v);

}  // namespace hypstrip
