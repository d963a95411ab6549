#pragma once

// Peeling an eps-strip around an orthogeodesic arc. The new holonomy of each
// generator g is tau_1 ... tau_n rho(g), where tau_i is the translation by
// eps along the axis of the i-th wall (translate of the base strip) met by
// the segment from the basepoint to rho(g)(basepoint), signed so that the far
// side of the wall moves toward the basepoint.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hypstrip/h2.hpp"
#include "hypstrip/surface.hpp"

namespace hypstrip {

struct PeelConfig {
  double eps = 0.1;
  int wall_radius = 12;
  int embed_check_radius = 10;
  double tolerance = kTolerance;

  void validate() const;
};

struct Wall {
  GroupWord coset;
  Strip strip;
  Isometry twist;  // translation by eps along strip.axis()
  double param;    // distance from the basepoint to the wall's middle leaf
  int sign;        // exponent applied to twist in the cocycle
};

struct WallSearch {
  std::vector<Wall> walls;
  bool saturated = true;
};

// Warnings go to stderr unless redirected.
using WarningHandler = std::function<void(const std::string&)>;
void set_warning_handler(WarningHandler handler);

Strip base_strip(const MarkedSurface& s, const ArcClass& arc, double eps);

// True iff no translate of the strip by a reduced word of length 1..radius
// meets it. Translates that coincide with the strip itself are skipped.
bool check_embedded(const MarkedSurface& s, const Strip& b0, int radius);

// Walls crossed by the segment from s.basepoint() to holonomy(g)(basepoint),
// ordered from the basepoint. t0 must be a translation along b0's axis.
WallSearch walls_crossed(const MarkedSurface& s, const Strip& b0, const Isometry& t0, const GroupWord& g, int radius,
                         double tolerance = kTolerance);

struct PeelStep {
  ArcClass arc;
  MarkedSurface before;
  Strip strip;
  Point basepoint;
  double eps;  // differs from the configured value after a tangency retry
  std::vector<WallSearch> generator_walls;
};

struct PeelReport {
  MarkedSurface result;
  std::vector<PeelStep> steps;
};

PeelReport peel_with_report(const MarkedSurface& s, const std::vector<ArcClass>& arcs, const PeelConfig& cfg);
MarkedSurface peel(const MarkedSurface& s, const std::vector<ArcClass>& arcs, const PeelConfig& cfg);

// Crossings of a closed geodesic with the lifts of a strip, per period.
struct StripCrossings {
  int count = 0;
  double max_collapsed_chord = 0.0;  // largest chord length after collapse
  std::vector<double> chords;        // chord length inside each crossed wall
  std::vector<double> collapsed;     // distance between the collapsed chord ends
};

// Searches walls h*b0 with h = (prefix of w) * s, |s| <= depth.
StripCrossings curve_crossings(const MarkedSurface& s, const Strip& b0, const GroupWord& w, int depth = 6);

// Whether the realized arc meets some lift of the strip.
bool arc_meets_strip(const MarkedSurface& s, const Strip& b0, const ArcClass& arc, int depth = 6);

// Lower bound on the length decrease of a curve from the crossings of one
// peeled strip: sum over crossings of log(1 + exp(-M) eps^2).
double crossing_decrease_bound(const StripCrossings& c, double eps);

}  // namespace hypstrip
