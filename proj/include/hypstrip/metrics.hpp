#pragma once

// Truncated suprema of length ratios between two marked structures.
//   k: simple closed curves, l_Y / l_X
//   K: simple orthogeodesic arcs, l_Y / l_X
//   d: curves and arcs, l_X / l_Y
// Every functional is the log of the largest ratio in its table.

#include <optional>
#include <string>
#include <vector>

#include "hypstrip/enumerate.hpp"

namespace hypstrip {

enum class MetricKind { k, K, d };

const char* metric_kind_name(MetricKind kind) noexcept;
MetricKind parse_metric_kind(const std::string& name);

enum class ClassKind { Curve, Arc };

struct RatioRow {
  std::string id;
  ClassKind kind;
  std::string word_or_slope;
  double l_x;
  double l_y;
  double ratio;
};

// Curves first (boundary, then slope order), then arcs. Throws
// TopologyMismatch unless X and Y share the marking schema.
std::vector<RatioRow> ratio_table(const MarkedSurface& x, const MarkedSurface& y, MetricKind kind,
                                  EnumerationBound bound);

struct StabilizationPoint {
  int n;
  double value;
};

struct MetricReport {
  MetricKind kind;
  double value;
  std::string argmax;
  int bound;
  std::vector<StabilizationPoint> stabilization;  // increasing n, ends at bound
  double last_increment;                          // 0 with a single point
  std::optional<double> gap;                      // 1 - max ratio, kind k only
};

// Bounds at which the stabilization is sampled: {n/2, 3n/4, n} on the torus,
// {n} on the pants where the class sets do not grow.
std::vector<int> stabilization_bounds(const Topology& t, int n);

MetricReport weak_metric(const MarkedSurface& x, const MarkedSurface& y, MetricKind kind, EnumerationBound bound);

// 1 - max over enumerated curves of l_Y / l_X.
double uniform_gap(const MarkedSurface& x, const MarkedSurface& y, EnumerationBound bound);

}  // namespace hypstrip
