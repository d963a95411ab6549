#pragma once

// Marked hyperbolic structures with geodesic boundary, given as holonomy
// representations of the free fundamental group.

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hypstrip/h2.hpp"

namespace hypstrip {

struct Topology {
  int genus = 0;
  int boundary_count = 3;

  static constexpr Topology pants() noexcept { return {0, 3}; }
  static constexpr Topology one_holed_torus() noexcept { return {1, 1}; }

  int euler_characteristic() const noexcept { return 2 - 2 * genus - boundary_count; }
  bool is_pants() const noexcept { return genus == 0 && boundary_count == 3; }
  bool is_one_holed_torus() const noexcept { return genus == 1 && boundary_count == 1; }
  bool supported() const noexcept { return is_pants() || is_one_holed_torus(); }
  std::string name() const;

  friend bool operator==(const Topology&, const Topology&) = default;
};

// Freely reduced word in generators 0..n-1. A letter is stored as g+1 for the
// generator g and -(g+1) for its inverse. Text form uses 'a', 'b', ... and the
// upper-case letter for the inverse, e.g. "abAB" is the commutator.
class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(std::vector<int> letters);

  static GroupWord parse(std::string_view text);
  static GroupWord generator(int index) { return GroupWord({index + 1}); }

  const std::vector<int>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  GroupWord inverse() const;
  GroupWord operator*(const GroupWord& rhs) const;
  GroupWord conjugated_by(const GroupWord& g) const { return g * *this * g.inverse(); }
  GroupWord power(int n) const;

  bool is_cyclically_reduced() const noexcept;
  GroupWord cyclically_reduced() const;
  // Least rotation of the cyclic reduction of this word or its inverse, under
  // the order a < A < b < B < ...; equal for conjugate-or-inverse words.
  GroupWord canonical_class() const;

  std::string to_string() const;

  friend bool operator==(const GroupWord&, const GroupWord&) = default;
  friend auto operator<=>(const GroupWord&, const GroupWord&) = default;

 private:
  std::vector<int> letters_;
};

// Rational slope p/q indexing simple classes on the one-holed torus: the
// class has |p| letters a and q letters b. Canonical sign q >= 0, and 1/0 for
// the infinite slope.
class Slope {
 public:
  Slope(long p, long q);

  long p() const noexcept { return p_; }
  long q() const noexcept { return q_; }
  long height() const noexcept { return std::max(p_ < 0 ? -p_ : p_, q_); }
  std::string to_string() const;

  friend bool operator==(const Slope&, const Slope&) = default;
  // Order by value p/q, with 1/0 = +infinity last.
  friend bool operator<(const Slope& l, const Slope& r) noexcept;

 private:
  long p_;
  long q_;
};

// Geometric intersection number of the slope classes on the one-holed torus.
long intersection_number(const Slope& s, const Slope& t) noexcept;

enum class CurveKind { Boundary, Interior };

struct CurveClass {
  GroupWord word;
  CurveKind kind = CurveKind::Interior;
  std::string id;
  std::optional<Slope> slope;

  static CurveClass make(GroupWord word, CurveKind kind, std::string id, std::optional<Slope> slope = {});
  GroupWord canonical() const { return word.canonical_class(); }
};

struct ArcClass {
  GroupWord carrier1;
  GroupWord carrier2;
  std::string id;
  std::optional<Slope> slope;
};

struct WeightedMulticurve {
  std::vector<std::pair<CurveClass, double>> components;

  // Throws InvalidArgument on non-positive weights or repeated classes.
  void validate() const;
};

class MarkedSurface {
 public:
  // Checks every invariant: hyperbolic boundary holonomy, boundary words
  // matching the topology, and no elliptic reduced word of length <= 8.
  MarkedSurface(Topology topology, std::vector<Isometry> holonomy, std::string label,
                Point basepoint = Point(0.0, 1.0));

  const Topology& topology() const noexcept { return topology_; }
  std::span<const std::string> generators() const noexcept { return generators_; }
  std::span<const GroupWord> boundary_words() const noexcept { return boundary_words_; }
  std::span<const Isometry> generator_holonomy() const noexcept { return holonomy_; }
  const Point& basepoint() const noexcept { return basepoint_; }
  const std::string& label() const noexcept { return label_; }

  Isometry holonomy(const GroupWord& w) const;
  MarkedSurface with_basepoint(const Point& p) const;
  MarkedSurface conjugated(const Isometry& g, std::string label) const;

  // Same topology, generators and boundary words.
  bool same_marking_schema(const MarkedSurface& other) const noexcept;

 private:
  Topology topology_;
  std::vector<std::string> generators_;
  std::vector<GroupWord> boundary_words_;
  std::vector<Isometry> holonomy_;
  Point basepoint_;
  std::string label_;
};

struct ArcRealization {
  Segment segment;
  double length;
};

// Length of the closed geodesic of an isometry, 2 arccosh(|trace|/2).
double translation_length(const Isometry& m);

MarkedSurface pants_from_lengths(double l1, double l2, double l3);
MarkedSurface torus_from_traces(double x, double y, double z);
// Boundary trace of the one-holed torus with generator traces (x, y, z).
double fricke_boundary_trace(double x, double y, double z) noexcept;

Isometry holonomy(const MarkedSurface& s, const GroupWord& w);
double curve_length(const MarkedSurface& s, const CurveClass& c);
double curve_length(const MarkedSurface& s, const GroupWord& w);
// Endpoints of the axis of holonomy(w), oriented from repelling to attracting.
// For w = u c u^-1 the axis of c is moved by u one letter at a time; the
// product matrix of a long conjugate is too ill-conditioned to locate its
// axis. The endpoints of a far axis may coincide in floating point.
std::pair<IdealPoint, IdealPoint> axis_endpoints(const MarkedSurface& s, const GroupWord& w);
// The segment locates the arc in the plane; its length field comes from
// arc_length, which stays accurate when the segment endpoints do not.
ArcRealization arc_geodesic(const MarkedSurface& s, const ArcClass& arc);
// Arc length from traces of the carriers: with A, B the carrier holonomies,
// max |tr(A B^+-1)| / 2 = cosh(la/2) cosh(lb/2) + sinh(la/2) sinh(lb/2) cosh(l).
// Stays accurate for long arcs whose carriers cannot be located in the plane.
double arc_length(const MarkedSurface& s, const ArcClass& arc);
double multicurve_length(const MarkedSurface& s, const WeightedMulticurve& m);

// Every reduced word of length 1..max_length, in shortlex order.
std::vector<GroupWord> reduced_words(int generator_count, int max_length);

}  // namespace hypstrip
