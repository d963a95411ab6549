#include "hypstrip/metrics.hpp"

#include <cmath>

#include "hypstrip/error.hpp"

namespace hypstrip {

const char* metric_kind_name(MetricKind kind) noexcept {
  switch (kind) {
    case MetricKind::k:
      return "k";
    case MetricKind::K:
      return "K";
    case MetricKind::d:
      return "d";
  }
  return "?";
}

MetricKind parse_metric_kind(const std::string& name) {
  if (name == "k") return MetricKind::k;
  if (name == "K") return MetricKind::K;
  if (name == "d") return MetricKind::d;
  throw Error(Errc::InvalidArgument, "unknown metric kind '" + name + "' (expected k, K or d)");
}

namespace {

constexpr double kTieTolerance = 1e-12;

void check_pair(const MarkedSurface& x, const MarkedSurface& y) {
  if (!x.same_marking_schema(y))
    throw Error(Errc::TopologyMismatch, "surfaces '" + x.label() + "' and '" + y.label() + "' have different markings");
}

RatioRow make_row(std::string id, ClassKind kind, std::string label, double lx, double ly, bool inverted) {
  if (!(lx > 0) || !(ly > 0)) throw Error(Errc::NonPositiveLength, "class " + id + " has non-positive length");
  return RatioRow{std::move(id), kind, std::move(label), lx, ly, inverted ? lx / ly : ly / lx};
}

}  // namespace

std::vector<RatioRow> ratio_table(const MarkedSurface& x, const MarkedSurface& y, MetricKind kind,
                                  EnumerationBound bound) {
  check_pair(x, y);
  const bool inverted = kind == MetricKind::d;
  std::vector<RatioRow> rows;
  if (kind != MetricKind::K) {
    for (const CurveClass& c : enumerate_scc(x.topology(), bound))
      rows.push_back(make_row(c.id, ClassKind::Curve, c.slope ? c.slope->to_string() : c.word.to_string(),
                              curve_length(x, c), curve_length(y, c), inverted));
  }
  if (kind != MetricKind::k) {
    for (const ArcClass& a : enumerate_arcs(x.topology(), bound)) {
      const std::string label =
          a.slope ? a.slope->to_string() : a.carrier1.to_string() + "|" + a.carrier2.to_string();
      rows.push_back(make_row(a.id, ClassKind::Arc, label, arc_length(x, a), arc_length(y, a),
                              inverted));
    }
  }
  return rows;
}

std::vector<int> stabilization_bounds(const Topology& t, int n) {
  if (t.is_pants()) return {n};
  std::vector<int> out;
  for (int m : {n / 2, 3 * n / 4, n})
    if (m >= 1 && (out.empty() || m > out.back())) out.push_back(m);
  return out;
}

MetricReport weak_metric(const MarkedSurface& x, const MarkedSurface& y, MetricKind kind, EnumerationBound bound) {
  check_pair(x, y);
  MetricReport r{kind, 0.0, {}, bound.n, {}, 0.0, std::nullopt};
  for (int n : stabilization_bounds(x.topology(), bound.n)) {
    const std::vector<RatioRow> rows = ratio_table(x, y, kind, EnumerationBound(n));
    if (rows.empty()) throw Error(Errc::EmptyClassSet, "no classes enumerated at bound " + std::to_string(n));
    // Ratios equal up to rounding count as ties and keep the first row.
    const RatioRow* best = &rows.front();
    for (const RatioRow& row : rows)
      if (row.ratio > best->ratio * (1 + kTieTolerance)) best = &row;
    r.stabilization.push_back({n, std::log(best->ratio)});
    if (n == bound.n) {
      r.value = std::log(best->ratio);
      r.argmax = best->id;
      if (kind == MetricKind::k) r.gap = 1.0 - best->ratio;
    }
  }
  if (r.stabilization.size() > 1)
    r.last_increment = r.stabilization.back().value - r.stabilization[r.stabilization.size() - 2].value;
  return r;
}

double uniform_gap(const MarkedSurface& x, const MarkedSurface& y, EnumerationBound bound) {
  const std::vector<RatioRow> rows = ratio_table(x, y, MetricKind::k, bound);
  if (rows.empty()) throw Error(Errc::EmptyClassSet, "no curve classes enumerated");
  double best = rows.front().ratio;
  for (const RatioRow& row : rows) best = std::max(best, row.ratio);
  return 1.0 - best;
}

}  // namespace hypstrip
