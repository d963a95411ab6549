#include <gtest/gtest.h>

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hypstrip/error.hpp"
#include "hypstrip/harness.hpp"

using namespace hypstrip;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("hypstrip_test_harness_" + name);
  fs::remove_all(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string config_message(const std::string& json) {
  try {
    parse_config(json);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ConfigError);
    return e.what();
  }
  ADD_FAILURE() << "no error for " << json;
  return {};
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, sep);) out.push_back(f);
  return out;
}

const char* spec_key(const nlohmann::json& side) {
  return side["surface"]["topology"] == "pants" ? "lengths" : "traces";
}

const char* kPants = R"({"surface": {"topology": "pants", "lengths": [2, 2, 2]})";

}  // namespace

TEST(Config, Defaults) {
  const ExperimentConfig c = parse_config(std::string(kPants) + "}");
  EXPECT_EQ(c.surface.topology, "pants");
  EXPECT_EQ(c.surface.values, (std::vector<double>{2, 2, 2}));
  EXPECT_FALSE(c.target);
  EXPECT_TRUE(c.arcs.empty());
  EXPECT_EQ(c.bound, 10);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.samples, 10000);
  EXPECT_EQ(c.suite, "lemma");
  EXPECT_EQ(c.metrics.size(), 3u);
  EXPECT_DOUBLE_EQ(c.peel.eps, PeelConfig{}.eps);
}

TEST(Config, FullTorus) {
  const ExperimentConfig c = parse_config(R"({
    "surface": {"topology": "torus", "traces": [4, 4, 4]},
    "arcs": ["1/0", "0/1"],
    "peel": {"eps": 0.2, "wall_radius": 14, "embed_check_radius": 8},
    "bound": 15, "metrics": ["K"], "suite": "theorem", "samples": 50, "seed": 9, "out": "x"})");
  EXPECT_EQ(c.arcs, (std::vector<std::string>{"1/0", "0/1"}));
  EXPECT_DOUBLE_EQ(c.peel.eps, 0.2);
  EXPECT_EQ(c.peel.wall_radius, 14);
  EXPECT_EQ(c.peel.embed_check_radius, 8);
  EXPECT_EQ(c.bound, 15);
  EXPECT_EQ(c.metrics, std::vector<MetricKind>{MetricKind::K});
  EXPECT_EQ(c.suite, "theorem");
  EXPECT_EQ(c.samples, 50);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.out, "x");
}

TEST(Config, FillingResolves) {
  const ExperimentConfig c = parse_config(std::string(kPants) + R"(, "arcs": "filling"})");
  EXPECT_EQ(resolve_arcs(Topology::pants(), c.arcs).size(), 2u);
  EXPECT_EQ(resolve_arcs(Topology::one_holed_torus(), {"filling"}).size(), 2u);
}

TEST(Config, SyntaxErrorNamesLineAndColumn) {
  const std::string msg = config_message("{\n  \"bound\": 3,,\n}");
  EXPECT_NE(msg.find("line 2, column 14"), std::string::npos) << msg;
  EXPECT_EQ(msg.find("parse error"), std::string::npos) << msg;
}

TEST(Config, FieldPaths) {
  const std::pair<const char*, const char*> cases[] = {
      {R"({"bound": 3})", "'surface'"},
      {R"({"surface": {"topology": "pants", "lengths": [2, -1, 2]}})", "'surface.lengths[1]'"},
      {R"({"surface": {"topology": "pants", "lengths": [2, 2]}})", "'surface.lengths'"},
      {R"({"surface": {"topology": "klein", "lengths": [2, 2, 2]}})", "'surface.topology'"},
      {R"({"surface": {"topology": "pants", "traces": [3, 3, 3]}})", "'surface.lengths'"},
      {R"({"surface": {"topology": "pants", "lengths": [2, 2, 2]}, "peel": {"esp": 0.1}})", "'peel.esp'"},
      {R"({"surface": {"topology": "pants", "lengths": [2, 2, 2]}, "peel": {"eps": 0}})", "'peel.eps'"},
      {R"({"surface": {"topology": "pants", "lengths": [2, 2, 2]}, "bound": 0})", "'bound'"},
      {R"({"surface": {"topology": "pants", "lengths": [2, 2, 2]}, "arcs": ["1/0"]})", "'arcs'"},
      {R"({"surface": {"topology": "pants", "lengths": [2, 2, 2]}, "metrics": ["q"]})", "'metrics[0]'"},
      {R"({"surface": {"topology": "pants", "lengths": [2, 2, 2]}, "suite": "all"})", "'suite'"},
      {R"({"surface": {"topology": "pants", "lengths": [2, 2, 2]}, "seed": -1})", "'seed'"},
      {R"({"surface": {"topology": "pants", "lengths": [2, 2, 2]}, "extra": 1})", "'extra'"},
      {R"({"surface": {"topology": "pants", "lengths": [2, 2, 2]},
           "target": {"topology": "torus", "traces": [3, 3, 3]}})", "'target.topology'"},
  };
  for (const auto& [json, path] : cases) {
    const std::string msg = config_message(json);
    EXPECT_NE(msg.find(path), std::string::npos) << json << " -> " << msg;
  }
}

TEST(Config, LoadReportsPathOnce) {
  const fs::path dir = scratch_dir("load");
  fs::create_directories(dir);
  const fs::path p = dir / "bad.json";
  std::ofstream(p) << "{\"surface\": 3}";
  try {
    load_config(p.string());
    FAIL();
  } catch (const Error& e) {
    const std::string msg = e.what();
    EXPECT_EQ(msg.find("ConfigError"), msg.rfind("ConfigError")) << msg;
    EXPECT_NE(msg.find(p.string()), std::string::npos);
  }
  try {
    load_config((dir / "missing.json").string());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IoError);
  }
}

TEST(FormatNumber, FifteenDigitsRoundTrip) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333333");
  EXPECT_EQ(format_number(-1e-20), "-1e-20");
  for (double v : {std::exp(1.0), std::numbers::pi * 1e7, 1.2345678901234567e-5}) {
    const std::string s = format_number(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_NEAR(back, v, 1e-14 * std::abs(v)) << s;
  }
}

TEST(Check, RecordKeepsWorstViolation) {
  Check c("x");
  c.record(true);
  c.record(false, 0.5);
  c.record(false, 0.2);
  EXPECT_EQ(c.trials, 3);
  EXPECT_EQ(c.failures, 2);
  EXPECT_DOUBLE_EQ(c.worst, 0.5);
}

TEST(Run, UnknownCommand) {
  ExperimentConfig c = parse_config(std::string(kPants) + "}");
  c.out = scratch_dir("unknown").string();
  try {
    run("plot", c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ConfigError);
  }
}

TEST(Run, PeelRequiresArcs) {
  ExperimentConfig c = parse_config(std::string(kPants) + "}");
  c.out = scratch_dir("noarcs").string();
  EXPECT_THROW(run("peel", c), Error);
}

TEST(Run, BuildWritesSummary) {
  ExperimentConfig c = parse_config(R"({"surface": {"topology": "pants", "lengths": [2, 2.3, 2.7]}})");
  c.out = scratch_dir("build").string();
  const RunResult r = run("build", c);
  EXPECT_EQ(r.exit_code, ExitCode::Success);
  ASSERT_EQ(r.files.size(), 1u);
  const auto j = nlohmann::json::parse(slurp(r.files[0]));
  EXPECT_EQ(j["command"], "build");
  const auto lengths = j["x"]["boundary_lengths"].get<std::vector<double>>();
  ASSERT_EQ(lengths.size(), 3u);
  EXPECT_NEAR(lengths[0], 2.0, 1e-12);
  EXPECT_NEAR(lengths[1], 2.3, 1e-12);
  EXPECT_NEAR(lengths[2], 2.7, 1e-12);
  EXPECT_EQ(j["x"]["generators"].size(), 2u);
}

TEST(Run, PeeledSurfaceRoundTrips) {
  for (const char* json : {R"({"surface": {"topology": "pants", "lengths": [2, 2.3, 2.7]}, "arcs": ["12", "13"], "bound": 4})",
                           R"({"surface": {"topology": "torus", "traces": [4, 4, 4]}, "arcs": "filling", "bound": 4})"}) {
    ExperimentConfig c = parse_config(json);
    c.out = scratch_dir("roundtrip").string();
    run("peel", c);
    const auto j = nlohmann::json::parse(slurp(fs::path(c.out) / "summary.json"));
    for (const char* side : {"x", "y"}) {
      const auto& sj = j[side];
      SurfaceSpec spec{sj["surface"]["topology"].get<std::string>(),
                       sj["surface"][spec_key(sj)].get<std::vector<double>>()};
      const MarkedSurface rebuilt = spec.build();
      const auto lengths = sj["boundary_lengths"].get<std::vector<double>>();
      const auto& words = rebuilt.boundary_words();
      ASSERT_EQ(words.size(), lengths.size());
      for (std::size_t i = 0; i < words.size(); ++i)
        EXPECT_NEAR(curve_length(rebuilt, words[i]), lengths[i], 1e-9) << json << " " << side << " " << i;
    }
  }
}

TEST(Run, SpectrumSchema) {
  ExperimentConfig c = parse_config(R"({"surface": {"topology": "torus", "traces": [4, 4, 4]},
                                        "target": {"topology": "torus", "traces": [3.5, 3.5, 3.5]}, "bound": 5})");
  c.out = scratch_dir("spectrum").string();
  run("spectrum", c);
  std::ifstream in(fs::path(c.out) / "spectrum.csv");
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "class_id,kind,word_or_slope,l_X,l_Y,ratio,crossed_strip,bound,tolerance");
  int rows = 0, curves = 0, arcs = 0;
  while (std::getline(in, line)) {
    const auto f = split(line, ',');
    ASSERT_EQ(f.size(), 9u) << line;
    EXPECT_TRUE(f[1] == "curve" || f[1] == "arc") << line;
    (f[1] == "curve" ? curves : arcs)++;
    const double lx = std::stod(f[3]), ly = std::stod(f[4]), ratio = std::stod(f[5]);
    EXPECT_NEAR(ratio, ly / lx, 1e-13) << line;
    EXPECT_EQ(f[6], "false");  // no strips without a peel
    EXPECT_EQ(f[7], "5");
    ++rows;
  }
  EXPECT_GT(curves, 1);
  EXPECT_GT(arcs, 1);
  EXPECT_EQ(rows, curves + arcs);
}

TEST(Run, PeelMarksCrossedRows) {
  ExperimentConfig c = parse_config(R"({"surface": {"topology": "torus", "traces": [4, 4, 4]}, "arcs": ["1/0"], "bound": 3})");
  c.out = scratch_dir("crossed").string();
  run("peel", c);
  std::ifstream in(fs::path(c.out) / "spectrum.csv");
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    const auto f = split(line, ',');
    if (f[1] != "curve" || f[2] == "abAB") continue;
    // Slope p/q crosses the 1/0 arc |q| times.
    const bool crosses = f[2].substr(f[2].find('/') + 1) != "0";
    EXPECT_EQ(f[6], crosses ? "true" : "false") << line;
    if (crosses) EXPECT_LT(std::stod(f[5]), 1.0) << line;
  }
}

TEST(Run, DeterministicOutput) {
  const char* json = R"({"surface": {"topology": "torus", "traces": [4, 4, 4]}, "arcs": "filling", "bound": 8, "seed": 3})";
  std::string first[2];
  for (int i = 0; i < 2; ++i) {
    ExperimentConfig c = parse_config(json);
    c.out = scratch_dir("det" + std::to_string(i)).string();
    run("peel", c);
    const std::string csv = slurp(fs::path(c.out) / "spectrum.csv");
    const std::string summary = slurp(fs::path(c.out) / "summary.json");
    if (i == 0) {
      first[0] = csv;
      first[1] = summary;
    } else {
      EXPECT_EQ(csv, first[0]);
      EXPECT_EQ(summary, first[1]);
    }
  }
}

TEST(Run, MetricOnScaledPants) {
  ExperimentConfig c = parse_config(R"({"surface": {"topology": "pants", "lengths": [2, 2, 2]},
                                        "target": {"topology": "pants", "lengths": [1.8, 1.8, 1.8]}, "metrics": ["k"]})");
  c.out = scratch_dir("metric").string();
  const RunResult r = run("metric", c);
  EXPECT_EQ(r.exit_code, ExitCode::Success);
  const auto j = nlohmann::json::parse(slurp(fs::path(c.out) / "metric.json"));
  ASSERT_EQ(j["reports"].size(), 1u);
  EXPECT_EQ(j["reports"][0]["kind"], "k");
  EXPECT_NEAR(j["reports"][0]["value"].get<double>(), std::log(0.9), 1e-12);
}

TEST(Run, VerifySmallSuites) {
  for (const char* suite : {"lemma", "collapse"}) {
    ExperimentConfig c = parse_config(std::string(kPants) + ", \"samples\": 200, \"suite\": \"" + suite + "\"}");
    c.out = scratch_dir(std::string("verify_") + suite).string();
    const RunResult r = run("verify", c);
    EXPECT_EQ(r.exit_code, ExitCode::Success) << r.report;
    const auto j = nlohmann::json::parse(slurp(fs::path(c.out) / "verify.json"));
    EXPECT_EQ(j["suite"], suite);
    EXPECT_EQ(j["failures"], 0);
  }
}

TEST(Suites, SeededRepeatable) {
  const Check a = projection_check(5, 300), b = projection_check(5, 300);
  EXPECT_EQ(a.trials, 300);
  EXPECT_EQ(a.failures, 0);
  EXPECT_EQ(a.worst, b.worst);
  EXPECT_EQ(equality_case_check(5, 100).failures, 0);
  EXPECT_EQ(right_triangle_check(5, 300).failures, 0);
}
