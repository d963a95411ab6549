#include "hypstrip/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "hypstrip/error.hpp"

namespace hypstrip {

using Json = nlohmann::ordered_json;

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 15);
  return std::string(buf, res.ptr);
}

namespace {

// Value that nlohmann prints with at most 15 significant digits.
double rounded(double v) {
  const std::string s = format_number(v);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

Json number_array(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(rounded(x));
  return a;
}

// Message of an Error without its leading code name.
std::string reason(const Error& e) {
  std::string what = e.what();
  const std::string prefix = std::string(errc_name(e.code())) + ": ";
  if (what.starts_with(prefix)) what.erase(0, prefix.size());
  return what;
}

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
  throw Error(Errc::ConfigError, "field '" + path + "': " + what);
}

void reject_unknown(const Json& obj, const std::string& path, std::initializer_list<const char*> known) {
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; }))
      config_error(path.empty() ? key : path + "." + key, "unknown field");
  }
}

const Json& require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) config_error(path, "expected an object");
  return j;
}

double get_number(const Json& j, const std::string& path) {
  if (!j.is_number()) config_error(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) config_error(path, "expected a finite number");
  return v;
}

long get_integer(const Json& j, const std::string& path, long lo) {
  if (!j.is_number_integer()) config_error(path, "expected an integer");
  const long v = j.get<long>();
  if (v < lo) config_error(path, "must be >= " + std::to_string(lo));
  return v;
}

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) config_error(path, "expected a string");
  return j.get<std::string>();
}

SurfaceSpec parse_surface(const Json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"topology", "lengths", "traces"});
  if (!j.contains("topology")) config_error(path + ".topology", "required");
  SurfaceSpec s;
  s.topology = get_string(j["topology"], path + ".topology");
  const char* key = nullptr;
  if (s.topology == "pants") {
    key = "lengths";
  } else if (s.topology == "torus") {
    key = "traces";
  } else {
    config_error(path + ".topology", "expected \"pants\" or \"torus\"");
  }
  const std::string vpath = path + "." + key;
  if (!j.contains(key)) config_error(vpath, "required for topology " + s.topology);
  const Json& arr = j[key];
  if (!arr.is_array() || arr.size() != 3) config_error(vpath, "expected an array of three numbers");
  for (std::size_t i = 0; i < 3; ++i) s.values.push_back(get_number(arr[i], vpath + "[" + std::to_string(i) + "]"));
  if (s.topology == "pants")
    for (std::size_t i = 0; i < 3; ++i)
      if (!(s.values[i] > 0)) config_error(vpath + "[" + std::to_string(i) + "]", "boundary length must be positive");
  if (j.contains(s.topology == "pants" ? "traces" : "lengths"))
    config_error(path, "give lengths for pants or traces for torus, not both");
  return s;
}

Json surface_json(const SurfaceSpec& s) {
  Json j;
  j["topology"] = s.topology;
  j[s.topology == "pants" ? "lengths" : "traces"] = number_array(s.values);
  return j;
}

std::pair<std::size_t, std::size_t> line_and_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

MarkedSurface SurfaceSpec::build() const {
  if (values.size() != 3) throw Error(Errc::ConfigError, "surface needs three parameters");
  if (topology == "pants") return pants_from_lengths(values[0], values[1], values[2]);
  if (topology == "torus") return torus_from_traces(values[0], values[1], values[2]);
  throw Error(Errc::ConfigError, "unknown topology '" + topology + "'");
}

SurfaceSpec SurfaceSpec::describe(const MarkedSurface& s) {
  if (s.topology().is_pants()) {
    std::vector<double> l;
    for (const GroupWord& w : s.boundary_words()) l.push_back(curve_length(s, w));
    return {"pants", l};
  }
  if (s.topology() == Topology::one_holed_torus()) {
    // Normalize the sign ambiguity of each generator so that x, y > 0.
    const double x = s.holonomy(GroupWord::parse("a")).trace();
    const double y = s.holonomy(GroupWord::parse("b")).trace();
    const double z = s.holonomy(GroupWord::parse("ab")).trace();
    return {"torus", {std::abs(x), std::abs(y), z * (x < 0 ? -1 : 1) * (y < 0 ? -1 : 1)}};
  }
  throw Error(Errc::UnsupportedTopology, "cannot describe this topology");
}

ExperimentConfig parse_config(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_and_column(json_text, e.byte);
    std::string what = e.what();
    // Keep only the reason; the position is reported below.
    const auto pos = what.find(": ", what.find("parse error"));
    if (pos != std::string::npos) what = what.substr(pos + 2);
    throw Error(Errc::ConfigError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
  }
  require_object(j, "<root>");
  reject_unknown(j, "",
                 {"surface", "target", "arcs", "peel", "bound", "metrics", "suite", "samples", "seed", "out"});
  ExperimentConfig c;
  if (!j.contains("surface")) config_error("surface", "required");
  c.surface = parse_surface(j["surface"], "surface");
  if (j.contains("target")) {
    c.target = parse_surface(j["target"], "target");
    if (c.target->topology != c.surface.topology) config_error("target.topology", "must match surface.topology");
  }
  if (j.contains("arcs")) {
    const Json& a = j["arcs"];
    if (a.is_string()) {
      if (a.get<std::string>() != "filling") config_error("arcs", "expected \"filling\" or an array of arc names");
      c.arcs = {"filling"};
    } else if (a.is_array()) {
      for (std::size_t i = 0; i < a.size(); ++i) c.arcs.push_back(get_string(a[i], "arcs[" + std::to_string(i) + "]"));
    } else {
      config_error("arcs", "expected \"filling\" or an array of arc names");
    }
    try {
      resolve_arcs(c.surface.topology == "pants" ? Topology::pants() : Topology::one_holed_torus(), c.arcs);
    } catch (const Error& e) {
      config_error("arcs", reason(e));
    }
  }
  if (j.contains("peel")) {
    const Json& p = require_object(j["peel"], "peel");
    reject_unknown(p, "peel", {"eps", "wall_radius", "embed_check_radius"});
    if (p.contains("eps")) {
      c.peel.eps = get_number(p["eps"], "peel.eps");
      if (!(c.peel.eps > 0)) config_error("peel.eps", "must be positive");
    }
    if (p.contains("wall_radius")) c.peel.wall_radius = static_cast<int>(get_integer(p["wall_radius"], "peel.wall_radius", 1));
    if (p.contains("embed_check_radius"))
      c.peel.embed_check_radius = static_cast<int>(get_integer(p["embed_check_radius"], "peel.embed_check_radius", 1));
  }
  if (j.contains("bound")) c.bound = static_cast<int>(get_integer(j["bound"], "bound", 1));
  if (j.contains("metrics")) {
    const Json& m = j["metrics"];
    if (!m.is_array() || m.empty()) config_error("metrics", "expected a non-empty array of \"k\", \"K\", \"d\"");
    c.metrics.clear();
    for (std::size_t i = 0; i < m.size(); ++i) {
      const std::string path = "metrics[" + std::to_string(i) + "]";
      try {
        c.metrics.push_back(parse_metric_kind(get_string(m[i], path)));
      } catch (const Error& e) {
        if (e.code() == Errc::ConfigError) throw;
        config_error(path, "expected \"k\", \"K\" or \"d\"");
      }
    }
  }
  if (j.contains("suite")) {
    c.suite = get_string(j["suite"], "suite");
    if (c.suite != "lemma" && c.suite != "collapse" && c.suite != "peel" && c.suite != "theorem")
      config_error("suite", "expected lemma, collapse, peel or theorem");
  }
  if (j.contains("samples")) c.samples = static_cast<int>(get_integer(j["samples"], "samples", 1));
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) config_error("seed", "expected a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("out")) c.out = get_string(j["out"], "out");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + reason(e));
  }
}

std::vector<ArcClass> resolve_arcs(const Topology& t, const std::vector<std::string>& names) {
  if (names.size() == 1 && names[0] == "filling") return filling_arc_family(t);
  std::vector<ArcClass> out;
  for (const std::string& n : names) out.push_back(arc_by_name(t, n));
  return out;
}

// ---------------------------------------------------------------------------
// Verification suites

void Check::record(bool ok, double violation) {
  ++trials;
  if (!ok) {
    ++failures;
    worst = std::max(worst, violation);
  }
}

long SuiteReport::failures() const {
  long n = 0;
  for (const Check& c : checks) n += c.failures;
  return n;
}

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Point random_point(Rng& rng) { return Point(uniform(rng, -3.0, 3.0), std::exp(uniform(rng, -2.0, 2.0))); }

Isometry random_isometry(Rng& rng) {
  const double t = uniform(rng, -2.0, 2.0);
  const double s = std::exp(0.5 * uniform(rng, -1.5, 1.5));
  const double th = uniform(rng, 0.0, std::numbers::pi);
  return Isometry(1.0, t, 0.0, 1.0) * Isometry(s, 0.0, 0.0, 1.0 / s) *
         Isometry::normalized(std::cos(th), std::sin(th), -std::sin(th), std::cos(th));
}

Point polar(double r, double th) { return Point(r * std::cos(th), r * std::sin(th)); }

const Geodesic kVertical(IdealPoint(0.0), IdealPoint::infinity());

Strip random_strip(Rng& rng, double eps) {
  const Isometry g = random_isometry(rng);
  return Strip(g(kVertical), g(Point(0.0, 1.0)), eps);
}

}  // namespace

Check projection_check(std::uint64_t seed, int samples) {
  Check c{"projection_nonexpanding"};
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const Isometry g = random_isometry(rng);
    const double rho = std::exp(uniform(rng, -1.0, 1.0));
    const Geodesic line = g(kVertical);
    const Geodesic g0 = g(Geodesic(IdealPoint(-rho), IdealPoint(rho)));
    const Point p = random_point(rng), q = random_point(rng);
    const double excess = dist(equidistant_project(line, g0, p), equidistant_project(line, g0, q)) - dist(p, q);
    c.record(excess <= 1e-9, excess);
  }
  return c;
}

Check equality_case_check(std::uint64_t seed, int samples) {
  // Half the cases share an orthogonal leaf of the line, half do not; the
  // distance-preservation test must agree with |z| equality in the frame.
  Check c{"equality_case_detection"};
  Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
  for (int i = 0; i < samples; ++i) {
    const Isometry g = random_isometry(rng);
    const double rho = std::exp(uniform(rng, -1.0, 1.0));
    const Geodesic line = g(kVertical);
    const Geodesic g0 = g(Geodesic(IdealPoint(-rho), IdealPoint(rho)));
    const double r1 = std::exp(uniform(rng, -1.0, 1.0));
    const double r2 = i % 2 == 0 ? r1 : r1 * std::exp((i % 4 == 1 ? 1 : -1) * uniform(rng, 0.05, 1.0));
    const Point p = g(polar(r1, uniform(rng, 0.05, std::numbers::pi - 0.05)));
    const Point q = g(polar(r2, uniform(rng, 0.05, std::numbers::pi - 0.05)));
    const double d0 = dist(p, q);
    const double d1 = dist(equidistant_project(line, g0, p), equidistant_project(line, g0, q));
    const bool detected = std::abs(d0 - d1) <= 1e-9 * std::max(1.0, d0);
    const Isometry f = normalizing_frame(line);
    const double a = std::abs(f.apply(p.z())), b = std::abs(f.apply(q.z()));
    const bool oracle = std::abs(a - b) <= 1e-9 * std::max(a, b);
    c.record(detected == oracle, 1.0);
  }
  return c;
}

Check right_triangle_check(std::uint64_t seed, int samples) {
  Check c{"right_triangle_identity"};
  Rng rng(seed + 1);
  double largest = 0.0;
  for (int i = 0; i < samples; ++i) {
    // Right angle at C = g(i): legs along the imaginary axis and the unit circle.
    const double a = uniform(rng, 0.01, 3.0), b = uniform(rng, 0.01, 3.0);
    const Isometry g = random_isometry(rng);
    const Point pc = g(Point(0, 1)), pa = g(Point(0, std::exp(a)));
    const Point pb = g(Point(std::tanh(b), 1.0 / std::cosh(b)));
    const double lhs = std::cosh(dist(pa, pb));
    const double rhs = std::cosh(dist(pb, pc)) * std::cosh(dist(pa, pc));
    const double rel = std::abs(lhs - rhs) / rhs;
    largest = std::max(largest, rel);
    c.record(rel <= 1e-10, rel);
  }
  c.detail = "largest relative residual " + format_number(largest);
  return c;
}

Check collapse_lipschitz_check(std::uint64_t seed, int samples, const std::vector<double>& widths) {
  Check c{"collapse_1_lipschitz"};
  Rng rng(seed + 2);
  for (double eps : widths) {
    for (int i = 0; i < samples; ++i) {
      const Strip s = random_strip(rng, eps);
      const Point p = random_point(rng), q = random_point(rng);
      const double excess = dist(strip_collapse(s, p), strip_collapse(s, q)) - dist(p, q);
      c.record(excess <= 1e-9, excess);
    }
  }
  return c;
}

Check collapse_quantitative_check(std::uint64_t seed, int samples, const std::vector<double>& widths) {
  Check c{"collapse_chord_decrease"};
  Rng rng(seed + 3);
  for (double eps : widths) {
    for (int i = 0; i < samples; ++i) {
      // Chord from h1 to h2 with both ends on one side of the core.
      const Isometry g = random_isometry(rng);
      const Strip s(g(kVertical), g(Point(0.0, 1.0)), eps);
      const double lo = i % 2 == 0 ? std::numbers::pi / 2 : 0.0;
      const Point a = g(polar(std::exp(-eps / 2), uniform(rng, lo + 1e-3, lo + std::numbers::pi / 2 - 1e-3)));
      const Point b = g(polar(std::exp(eps / 2), uniform(rng, lo + 1e-3, lo + std::numbers::pi / 2 - 1e-3)));
      const double ab = dist(a, b);
      const double ac = dist(strip_collapse(s, a), strip_collapse(s, b));
      const double deficit = std::log1p(std::exp(-ac) * eps * eps) - (ab - ac);
      c.record(deficit <= 1e-9, deficit);
    }
  }
  return c;
}

namespace {

int total_crossings(const PeelReport& r, const GroupWord& w) {
  int n = 0;
  for (const PeelStep& st : r.steps) n += curve_crossings(st.before, st.strip, w).count;
  return n;
}

}  // namespace

Check multicurve_check(const MarkedSurface& x, const PeelReport& peeled, int bound, std::uint64_t seed, int samples) {
  Check c{"multicurve_length_decrease"};
  const std::vector<CurveClass> classes = enumerate_scc(x.topology(), EnumerationBound(bound));
  std::map<std::size_t, bool> crosses;
  Rng rng(seed + 4);
  long strict = 0;
  for (int i = 0; i < samples; ++i) {
    const std::size_t want = std::min<std::size_t>(classes.size(), 1 + rng() % 4);
    std::set<std::size_t> picked;
    while (picked.size() < want) picked.insert(rng() % classes.size());
    WeightedMulticurve m;
    bool any = false;
    for (std::size_t k : picked) {
      m.components.push_back({classes[k], uniform(rng, 0.1, 5.0)});
      auto it = crosses.find(k);
      if (it == crosses.end()) it = crosses.emplace(k, total_crossings(peeled, classes[k].word) > 0).first;
      any = any || it->second;
    }
    const double lx = multicurve_length(x, m), ly = multicurve_length(peeled.result, m);
    if (any) {
      ++strict;
      c.record(ly < lx, ly - lx);
    } else {
      c.record(std::abs(ly - lx) <= 1e-6, std::abs(ly - lx));
    }
  }
  c.detail = std::to_string(strict) + " of " + std::to_string(samples) + " multicurves cross a strip";
  return c;
}

namespace {

std::vector<Check> peel_suite(const ExperimentConfig& cfg) {
  const MarkedSurface x = cfg.surface.build();
  const std::vector<ArcClass> arcs =
      resolve_arcs(x.topology(), cfg.arcs.empty() ? std::vector<std::string>{"filling"} : cfg.arcs);
  const PeelReport r = peel_with_report(x, arcs, cfg.peel);
  PeelConfig wider = cfg.peel;
  wider.wall_radius += 4;
  const MarkedSurface y_wide = peel(x, arcs, wider);

  Check unchanged{"unchanged_if_disjoint"}, strict{"decrease_if_crossing"}, quant{"quantitative_decrease"},
      stable{"wall_radius_stability"}, grows{"peeled_arcs_grow"};
  for (const CurveClass& cl : enumerate_scc(x.topology(), EnumerationBound(cfg.bound))) {
    double bound = 0.0;
    int count = 0;
    for (const PeelStep& st : r.steps) {
      const StripCrossings sc = curve_crossings(st.before, st.strip, cl.word);
      count += sc.count;
      bound += crossing_decrease_bound(sc, st.eps);
    }
    const double lx = curve_length(x, cl), ly = curve_length(r.result, cl);
    if (count == 0) {
      unchanged.record(std::abs(ly - lx) <= 1e-6, std::abs(ly - lx));
    } else {
      strict.record(ly < lx - cfg.peel.tolerance, ly - lx + cfg.peel.tolerance);
      quant.record(lx - ly >= bound - 1e-9, bound - (lx - ly));
    }
    const double dw = std::abs(curve_length(y_wide, cl) - ly);
    stable.record(dw < 1e-8, dw);
  }
  for (const ArcClass& a : arcs) {
    const double gain = arc_length(r.result, a) - arc_length(x, a);
    grows.record(gain > 1e-4, 1e-4 - gain);
  }
  stable.detail = "wall_radius " + std::to_string(cfg.peel.wall_radius) + " vs " + std::to_string(wider.wall_radius);
  return {unchanged, strict, quant, stable, grows};
}

std::vector<Check> theorem_suite(const ExperimentConfig& cfg) {
  const MarkedSurface x = cfg.surface.build();
  const std::vector<ArcClass> arcs =
      resolve_arcs(x.topology(), cfg.arcs.empty() ? std::vector<std::string>{"filling"} : cfg.arcs);
  const PeelReport r = peel_with_report(x, arcs, cfg.peel);
  const EnumerationBound n(cfg.bound);

  Check cert{"filling_certificate"};
  {
    std::vector<Strip> strips;
    for (const ArcClass& a : arcs) strips.push_back(base_strip(x, a, 0.01));
    for (const CurveClass& cl : enumerate_scc(x.topology(), EnumerationBound(std::min(cfg.bound, 10)))) {
      int count = 0;
      for (const Strip& s : strips) count += curve_crossings(x, s, cl.word).count;
      cert.record(count > 0, 1.0);
    }
  }
  // Strict inequalities must clear the numerical tolerance; an uncrossed
  // curve keeps ratio 1 up to round-off and must not count as shorter.
  const double tol = cfg.peel.tolerance;
  Check below{"ratios_below_one"};
  for (const RatioRow& row : ratio_table(x, r.result, MetricKind::k, n))
    below.record(row.ratio < 1.0 - tol, row.ratio - 1.0 + tol);

  const MetricReport k = weak_metric(x, r.result, MetricKind::k, n);
  Check neg{"k_negative"};
  neg.record(k.value < -tol, k.value + tol);
  neg.detail = "k = " + format_number(k.value) + " at N = " + std::to_string(k.bound) + ", argmax " + k.argmax;
  Check stab{"k_stabilized"};
  stab.record(std::abs(k.last_increment) < 1e-6, std::abs(k.last_increment));
  stab.detail = "last increment " + format_number(k.last_increment);
  Check gap{"uniform_gap_positive"};
  gap.record(*k.gap > tol, tol - *k.gap);
  gap.detail = "gap = " + format_number(*k.gap);

  Check multi = multicurve_check(x, r, cfg.bound, cfg.seed, 100);

  // Single-strip peels: the peeled arc gets longer and carries K; d > 0.
  Check single{"single_peel_arc_metrics"};
  for (const ArcClass& a : arcs) {
    const MarkedSurface yb = peel(x, {a}, cfg.peel);
    const MetricReport kk = weak_metric(x, yb, MetricKind::K, n);
    const MetricReport dd = weak_metric(x, yb, MetricKind::d, n);
    const double gain = arc_length(yb, a) - arc_length(x, a);
    single.record(gain > 1e-4, 1e-4 - gain);
    single.record(kk.value > tol && kk.argmax == a.id, tol - kk.value);
    single.record(dd.value > tol, tol - dd.value);
  }
  return {cert, below, neg, stab, gap, multi, single};
}

}  // namespace

SuiteReport run_suite(const std::string& suite, const ExperimentConfig& cfg) {
  SuiteReport r{suite, {}};
  const int n = cfg.samples;
  const std::vector<double> widths{0.05, 0.1, 0.3};
  if (suite == "lemma") {
    r.checks = {projection_check(cfg.seed, n), equality_case_check(cfg.seed, std::max(1, n / 10)),
                right_triangle_check(cfg.seed, n)};
  } else if (suite == "collapse") {
    r.checks = {collapse_lipschitz_check(cfg.seed, n, widths),
                collapse_quantitative_check(cfg.seed, std::max(1, n / 10), widths)};
  } else if (suite == "peel") {
    r.checks = peel_suite(cfg);
  } else if (suite == "theorem") {
    r.checks = theorem_suite(cfg);
  } else {
    throw Error(Errc::ConfigError, "field 'suite': expected lemma, collapse, peel or theorem");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Commands

namespace {

Json config_echo(const ExperimentConfig& c) {
  Json j;
  j["surface"] = surface_json(c.surface);
  if (c.target) j["target"] = surface_json(*c.target);
  j["arcs"] = c.arcs;
  j["peel"] = {{"eps", rounded(c.peel.eps)},
               {"wall_radius", c.peel.wall_radius},
               {"embed_check_radius", c.peel.embed_check_radius}};
  j["bound"] = c.bound;
  Json kinds = Json::array();
  for (MetricKind k : c.metrics) kinds.push_back(metric_kind_name(k));
  j["metrics"] = kinds;
  j["suite"] = c.suite;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  return j;
}

Json surface_summary(const MarkedSurface& s) {
  Json j;
  j["label"] = s.label();
  j["surface"] = surface_json(SurfaceSpec::describe(s));
  std::vector<double> lengths;
  for (const GroupWord& w : s.boundary_words()) lengths.push_back(curve_length(s, w));
  j["boundary_lengths"] = number_array(lengths);
  Json gens = Json::array();
  for (std::size_t i = 0; i < s.generators().size(); ++i) {
    const Isometry& m = s.generator_holonomy()[i];
    gens.push_back({{"name", s.generators()[i]}, {"matrix", number_array({m.a(), m.b(), m.c(), m.d()})}});
  }
  j["generators"] = gens;
  return j;
}

std::filesystem::path prepare_out(const ExperimentConfig& cfg) {
  std::filesystem::path dir(cfg.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::IoError, "cannot create output directory '" + cfg.out + "': " + ec.message());
  return dir;
}

void write_file(const std::filesystem::path& path, const std::string& text, RunResult& result) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(Errc::IoError, "cannot write '" + path.string() + "'");
  result.files.push_back(path.string());
}

void write_json(const std::filesystem::path& path, const Json& j, RunResult& result) {
  write_file(path, j.dump(2) + "\n", result);
}

struct Pair {
  MarkedSurface x;
  MarkedSurface y;
  std::optional<PeelReport> report;
};

Pair make_pair(const ExperimentConfig& cfg, bool require_arcs) {
  MarkedSurface x = cfg.surface.build();
  if (require_arcs && cfg.arcs.empty()) throw Error(Errc::ConfigError, "field 'arcs': required for this command");
  if (cfg.target && !require_arcs) {
    MarkedSurface y = cfg.target->build();
    return {std::move(x), std::move(y), std::nullopt};
  }
  if (cfg.arcs.empty()) return {x, x, std::nullopt};
  PeelReport r = peel_with_report(x, resolve_arcs(x.topology(), cfg.arcs), cfg.peel);
  MarkedSurface y = r.result;
  return {std::move(x), std::move(y), std::move(r)};
}

std::string spectrum_csv(const Pair& p, const ExperimentConfig& cfg, std::string& summary) {
  std::ostringstream os;
  os << "class_id,kind,word_or_slope,l_X,l_Y,ratio,crossed_strip,bound,tolerance\n";
  const std::string tail = "," + std::to_string(cfg.bound) + "," + format_number(cfg.peel.tolerance) + "\n";
  double best = 0.0;
  std::string best_id;
  std::size_t rows = 0;
  for (const CurveClass& c : enumerate_scc(p.x.topology(), EnumerationBound(cfg.bound))) {
    const double lx = curve_length(p.x, c), ly = curve_length(p.y, c);
    const bool crossed = p.report && total_crossings(*p.report, c.word) > 0;
    os << c.id << ",curve," << (c.slope ? c.slope->to_string() : c.word.to_string()) << "," << format_number(lx) << ","
       << format_number(ly) << "," << format_number(ly / lx) << "," << (crossed ? "true" : "false") << tail;
    if (ly / lx > best) best = ly / lx, best_id = c.id;
    ++rows;
  }
  for (const ArcClass& a : enumerate_arcs(p.x.topology(), EnumerationBound(cfg.bound))) {
    const double lx = arc_length(p.x, a), ly = arc_length(p.y, a);
    bool crossed = false;
    if (p.report)
      for (const PeelStep& st : p.report->steps) crossed = crossed || arc_meets_strip(st.before, st.strip, a);
    os << a.id << ",arc," << (a.slope ? a.slope->to_string() : a.carrier1.to_string() + "|" + a.carrier2.to_string())
       << "," << format_number(lx) << "," << format_number(ly) << "," << format_number(ly / lx) << ","
       << (crossed ? "true" : "false") << tail;
    ++rows;
  }
  summary += std::to_string(rows) + " rows at N = " + std::to_string(cfg.bound) + "; largest curve ratio " +
             format_number(best) + " (" + best_id + ")\n";
  return os.str();
}

Json metric_json(const MetricReport& r) {
  Json j;
  j["kind"] = metric_kind_name(r.kind);
  j["value"] = rounded(r.value);
  j["argmax"] = r.argmax;
  j["bound"] = r.bound;
  Json st = Json::array();
  for (const StabilizationPoint& p : r.stabilization) st.push_back({{"n", p.n}, {"value", rounded(p.value)}});
  j["stabilization"] = st;
  j["last_increment"] = rounded(r.last_increment);
  j["gap"] = r.gap ? Json(rounded(*r.gap)) : Json(nullptr);
  return j;
}

}  // namespace

RunResult run(const std::string& command, const ExperimentConfig& cfg) {
  if (command != "build" && command != "spectrum" && command != "peel" && command != "metric" && command != "verify")
    throw Error(Errc::ConfigError, "unknown command '" + command + "' (expected build, spectrum, peel, metric, verify)");
  cfg.peel.validate();
  RunResult result;
  std::string& rep = result.report;
  const std::filesystem::path dir = prepare_out(cfg);
  Json bundle;
  bundle["command"] = command;
  bundle["input"] = config_echo(cfg);

  if (command == "build") {
    const MarkedSurface x = cfg.surface.build();
    bundle["x"] = surface_summary(x);
    rep += "built " + x.label() + "; boundary lengths";
    for (const auto& l : bundle["x"]["boundary_lengths"]) rep += " " + format_number(l.get<double>());
    rep += "\n";
    write_json(dir / "summary.json", bundle, result);
  } else if (command == "spectrum" || command == "peel") {
    const Pair p = make_pair(cfg, command == "peel");
    rep += command + ": " + p.y.label() + "\n";
    if (command == "peel") {
      bundle["x"] = surface_summary(p.x);
      bundle["y"] = surface_summary(p.y);
      Json steps = Json::array();
      for (const PeelStep& st : p.report->steps) {
        Json walls = Json::array();
        for (const WallSearch& w : st.generator_walls) walls.push_back(w.walls.size());
        steps.push_back({{"arc", st.arc.id},
                         {"eps", rounded(st.eps)},
                         {"basepoint", number_array({st.basepoint.x(), st.basepoint.y()})},
                         {"walls_per_generator", walls}});
      }
      bundle["steps"] = steps;
      std::vector<double> before, after;
      for (const auto& l : bundle["x"]["boundary_lengths"]) before.push_back(l.get<double>());
      for (const auto& l : bundle["y"]["boundary_lengths"]) after.push_back(l.get<double>());
      rep += "boundary lengths";
      for (std::size_t i = 0; i < before.size(); ++i) rep += " " + format_number(before[i]) + " -> " + format_number(after[i]);
      rep += "\n";
    }
    write_file(dir / "spectrum.csv", spectrum_csv(p, cfg, rep), result);
    if (command == "peel") write_json(dir / "summary.json", bundle, result);
  } else if (command == "metric") {
    const Pair p = make_pair(cfg, false);
    Json reports = Json::array();
    for (MetricKind k : cfg.metrics) {
      const MetricReport r = weak_metric(p.x, p.y, k, EnumerationBound(cfg.bound));
      reports.push_back(metric_json(r));
      rep += std::string(metric_kind_name(k)) + " = " + format_number(r.value) + " (argmax " + r.argmax + ", N = " +
             std::to_string(r.bound) + ", last increment " + format_number(r.last_increment) + ")";
      if (r.gap) rep += ", gap " + format_number(*r.gap);
      rep += "\n";
    }
    bundle["x_label"] = p.x.label();
    bundle["y_label"] = p.y.label();
    bundle["tolerance"] = rounded(cfg.peel.tolerance);
    bundle["reports"] = reports;
    write_json(dir / "metric.json", bundle, result);
  } else {
    const SuiteReport s = run_suite(cfg.suite, cfg);
    Json checks = Json::array();
    for (const Check& c : s.checks) {
      checks.push_back({{"name", c.name},
                        {"trials", c.trials},
                        {"failures", c.failures},
                        {"worst_violation", rounded(c.worst)},
                        {"detail", c.detail}});
      rep += (c.failures == 0 ? "ok   " : "FAIL ") + c.name + ": " + std::to_string(c.failures) + "/" +
             std::to_string(c.trials) + " failures";
      if (!c.detail.empty()) rep += " (" + c.detail + ")";
      rep += "\n";
    }
    bundle["suite"] = s.suite;
    bundle["checks"] = checks;
    bundle["failures"] = s.failures();
    bundle["passed"] = s.failures() == 0;
    rep += "suite " + s.suite + ": " + std::to_string(s.failures()) + " failures\n";
    write_json(dir / "verify.json", bundle, result);
    if (s.failures() > 0) result.exit_code = ExitCode::VerificationFailed;
  }
  for (const std::string& f : result.files) rep += "wrote " + f + "\n";
  return result;
}

}  // namespace hypstrip
