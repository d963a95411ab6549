#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "hypstrip/enumerate.hpp"
#include "hypstrip/error.hpp"
#include "oracles.hpp"

using namespace hypstrip;
using namespace hypstrip::testing;

namespace {

std::vector<std::string> words_of(const std::vector<CurveClass>& cs) {
  std::vector<std::string> out;
  for (const CurveClass& c : cs) out.push_back(c.word.to_string());
  return out;
}

// Lower Christoffel word for a >= 0 letters a and b >= 0 letters b from the
// Stern-Brocot tree: the word of a mediant is left word then right word.
std::string stern_brocot_word(long na, long nb) {
  long lp = 1, lq = 0;  // left bound: ratio nb/na = 0, word "a"
  long rp = 0, rq = 1;  // right bound: ratio infinity, word "b"
  std::string lw = "a", rw = "b";
  if (nb == 0) return lw;
  if (na == 0) return rw;
  while (true) {
    const long mp = lp + rp, mq = lq + rq;
    const std::string mw = lw + rw;
    if (mp == na && mq == nb) return mw;
    if (nb * mp < mq * na) {
      rp = mp, rq = mq, rw = mw;
    } else {
      lp = mp, lq = mq, lw = mw;
    }
  }
}

// True if some conjugate of the axis of w crosses it transversally, searching
// conjugators up to the given length.
bool axis_self_crosses(const MarkedSurface& s, const GroupWord& w, const std::vector<GroupWord>& conjugators) {
  const Isometry m = s.holonomy(w);
  if (!m.is_hyperbolic()) return true;
  const Geodesic ax = axis_of(m).geodesic;
  for (const GroupWord& h : conjugators) {
    const Geodesic other = s.holonomy(h)(ax);
    if (other.same_line(ax, 1e-7)) continue;
    if (other.u().approx_equal(ax.u(), 1e-7) || other.u().approx_equal(ax.v(), 1e-7) ||
        other.v().approx_equal(ax.u(), 1e-7) || other.v().approx_equal(ax.v(), 1e-7))
      continue;
    if (geodesics_intersect(ax, other)) return true;
  }
  return false;
}

bool is_proper_power(const GroupWord& w) {
  const auto& l = w.letters();
  for (std::size_t d = 1; d < l.size(); ++d) {
    if (l.size() % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < l.size() && periodic; ++i) periodic = l[i] == l[i - d];
    if (periodic) return true;
  }
  return false;
}

}  // namespace

TEST(Slope, Canonicalization) {
  EXPECT_EQ(Slope(2, 4), Slope(1, 2));
  EXPECT_EQ(Slope(-1, -2), Slope(1, 2));
  EXPECT_EQ(Slope(-3, 0), Slope(1, 0));
  EXPECT_EQ(Slope(1, -1).to_string(), "-1/1");
  EXPECT_THROW(Slope(0, 0), Error);
  EXPECT_TRUE(Slope(5, 1) < Slope(1, 0));
  EXPECT_TRUE(Slope(-1, 1) < Slope(0, 1));
}

TEST(Slope, IntersectionNumber) {
  EXPECT_EQ(intersection_number(Slope(1, 0), Slope(0, 1)), 1);
  EXPECT_EQ(intersection_number(Slope(2, 3), Slope(2, 3)), 0);
  EXPECT_EQ(intersection_number(Slope(2, 3), Slope(-1, 1)), 5);
}

TEST(ChristoffelWord, MatchesSternBrocotOracle) {
  for (const Slope& s : slopes_up_to(9)) {
    std::string expected = stern_brocot_word(std::labs(s.p()), s.q());
    if (s.p() < 0) std::replace(expected.begin(), expected.end(), 'b', 'B');
    EXPECT_EQ(christoffel_word(s).to_string(), expected) << s.to_string();
  }
}

TEST(EnumerateScc, PantsIsBoundaryOnly) {
  for (int n : {1, 5, 20}) {
    const auto cs = enumerate_scc(Topology::pants(), EnumerationBound(n));
    EXPECT_EQ(words_of(cs), (std::vector<std::string>{"a", "b", "BA"}));
    for (const CurveClass& c : cs) EXPECT_EQ(c.kind, CurveKind::Boundary);
  }
}

TEST(EnumerateScc, PantsExhaustiveSimplicityOracle) {
  // Every cyclically reduced word of length <= 6 that is not a boundary class
  // is a proper power or has a self-crossing axis; boundary classes have none.
  const MarkedSurface s = pants_from_lengths(2.0, 2.3, 2.7);
  const std::vector<GroupWord> conjugators = reduced_words(2, 5);
  std::set<GroupWord> boundary;
  for (const CurveClass& c : enumerate_scc(Topology::pants(), EnumerationBound(1))) boundary.insert(c.canonical());
  for (const GroupWord& b : boundary) EXPECT_FALSE(axis_self_crosses(s, b, conjugators)) << b.to_string();
  std::set<GroupWord> seen;
  for (const GroupWord& w : reduced_words(2, 6)) {
    if (!w.is_cyclically_reduced()) continue;
    const GroupWord c = w.canonical_class();
    if (!seen.insert(c).second || boundary.count(c)) continue;
    EXPECT_TRUE(is_proper_power(c) || axis_self_crosses(s, c, conjugators)) << c.to_string();
  }
  EXPECT_GT(seen.size(), 100u);
}

TEST(EnumerateScc, TorusBaseTriangle) {
  const auto cs = enumerate_scc(Topology::one_holed_torus(), EnumerationBound(1));
  ASSERT_EQ(cs.size(), 5u);
  EXPECT_EQ(cs[0].kind, CurveKind::Boundary);
  EXPECT_EQ(cs[0].word.to_string(), "abAB");
  std::map<std::string, std::string> by_id;
  for (const CurveClass& c : cs) by_id[c.id] = c.word.to_string();
  EXPECT_EQ(by_id["slope 1/0"], "a");
  EXPECT_EQ(by_id["slope 0/1"], "b");
  EXPECT_EQ(by_id["slope 1/1"], "ab");
  EXPECT_EQ(by_id["slope -1/1"], "aB");
}

TEST(EnumerateScc, TorusHeightTwo) {
  const auto cs = enumerate_scc(Topology::one_holed_torus(), EnumerationBound(2));
  std::map<std::string, std::string> by_id;
  for (const CurveClass& c : cs) by_id[c.id] = c.word.to_string();
  EXPECT_EQ(cs.size(), 9u);
  EXPECT_EQ(by_id["slope 1/2"], "abb");
  EXPECT_EQ(by_id["slope 2/1"], "aab");
  EXPECT_EQ(by_id["slope -1/2"], "aBB");
  EXPECT_EQ(by_id["slope -2/1"], "aaB");
}

TEST(EnumerateScc, CanonicalAndMonotone) {
  std::vector<CurveClass> prev;
  for (int n = 1; n <= 8; ++n) {
    const auto cs = enumerate_scc(Topology::one_holed_torus(), EnumerationBound(n));
    std::set<GroupWord> classes;
    for (const CurveClass& c : cs) EXPECT_TRUE(classes.insert(c.canonical()).second) << c.id;
    for (const CurveClass& c : prev) EXPECT_TRUE(classes.count(c.canonical())) << c.id;
    // Deterministic order: boundary first, then by slope value.
    for (std::size_t i = 2; i < cs.size(); ++i) EXPECT_TRUE(*cs[i - 1].slope < *cs[i].slope);
    prev = cs;
  }
}

TEST(EnumerateScc, UnsupportedTopology) {
  try {
    enumerate_scc(Topology{2, 1}, EnumerationBound(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnsupportedTopology);
  }
  EXPECT_THROW(enumerate_arcs(Topology{0, 4}, EnumerationBound(1)), Error);
  EXPECT_THROW(filling_arc_family(Topology{0, 4}), Error);
  EXPECT_THROW(EnumerationBound(0), Error);
}

TEST(EnumerateArcs, PantsSixDistinctClasses) {
  const auto arcs = enumerate_arcs(Topology::pants(), EnumerationBound(3));
  ASSERT_EQ(arcs.size(), 6u);
  const MarkedSurface s = pants_from_lengths(2.0, 2.3, 2.7);
  std::vector<double> lengths;
  for (const ArcClass& a : arcs) lengths.push_back(arc_geodesic(s, a).length);
  std::sort(lengths.begin(), lengths.end());
  for (std::size_t i = 1; i < lengths.size(); ++i) EXPECT_GT(lengths[i] - lengths[i - 1], 1e-3);
}

TEST(EnumerateArcs, TorusSlopes) {
  const auto arcs = enumerate_arcs(Topology::one_holed_torus(), EnumerationBound(1));
  std::vector<std::string> ids;
  for (const ArcClass& a : arcs) ids.push_back(a.id);
  EXPECT_EQ(ids, (std::vector<std::string>{"arc slope -1/1", "arc slope 0/1", "arc slope 1/1", "arc slope 1/0"}));
}

TEST(EnumerateArcs, TorusArcLengthsMatchPentagonOracle) {
  // Cutting along the slope curve gives pants (l, l, boundary); the arc of the
  // same slope is the self-arc of the boundary separating the two copies.
  for (const MarkedSurface& s : {torus_from_traces(4, 4, 4), torus_from_traces(4.2, 3.3, 5.1)}) {
    const double lb = curve_length(s, s.boundary_words()[0]);
    for (const ArcClass& a : enumerate_arcs(s.topology(), EnumerationBound(4))) {
      const double lc = curve_length(s, christoffel_word(*a.slope));
      const double seam = hexagon_seam(lc, lb, lc);
      const double expected = 2 * std::acosh(std::sinh(seam) * std::sinh(lc / 2));
      EXPECT_NEAR(arc_geodesic(s, a).length, expected, 1e-8 * expected) << s.label() << " " << a.id;
    }
  }
}

TEST(FillingArcFamily, Members) {
  const auto p = filling_arc_family(Topology::pants());
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0].id, "arc 12");
  EXPECT_EQ(p[1].id, "arc 13");
  const auto t = filling_arc_family(Topology::one_holed_torus());
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(*t[0].slope, Slope(1, 0));
  EXPECT_EQ(*t[1].slope, Slope(0, 1));
}

TEST(FillingArcFamily, TorusIntersectionCount) {
  // Combinatorial certificate; the geometric one lives with the peeling tests.
  for (const Slope& s : slopes_up_to(10)) {
    const long i0 = intersection_number(s, Slope(0, 1));
    const long i1 = intersection_number(s, Slope(1, 0));
    EXPECT_GT(i0 + i1, 0) << s.to_string();
    if (s != Slope(0, 1)) EXPECT_GT(i0, 0);
  }
}

TEST(ArcByName, Parses) {
  EXPECT_EQ(arc_by_name(Topology::pants(), "23").id, "arc 23");
  EXPECT_EQ(arc_by_name(Topology::pants(), "32").id, "arc 23");
  EXPECT_EQ(arc_by_name(Topology::one_holed_torus(), "2/-3").id, "arc slope -2/3");
  EXPECT_THROW(arc_by_name(Topology::pants(), "14"), Error);
  EXPECT_THROW(arc_by_name(Topology::one_holed_torus(), "x/y"), Error);
}
