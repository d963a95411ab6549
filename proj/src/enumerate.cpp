#include "hypstrip/enumerate.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "hypstrip/error.hpp"

namespace hypstrip {

namespace {

const GroupWord& torus_corner() {
  // Loop around the puncture at the lower-left corner of the square, read
  // counterclockwise from the center of the square.
  static const GroupWord corner = GroupWord::parse("ABab");
  return corner;
}

void require_supported(const Topology& t) {
  if (!t.supported()) throw Error(Errc::UnsupportedTopology, t.name() + " has no closed-form enumeration");
}

}  // namespace

EnumerationBound::EnumerationBound(int n_) : n(n_) {
  if (n < 1) throw Error(Errc::InvalidArgument, "enumeration bound must be >= 1");
}

GroupWord christoffel_word(const Slope& s) {
  const long p = std::labs(s.p());
  const long q = s.q();
  const int b = s.p() < 0 ? -2 : 2;
  std::vector<int> letters;
  long x = 0, y = 0;
  while (x < p || y < q) {
    // Step up when the lattice point above stays on or below the line qx = py.
    if (y < q && (y + 1) * p <= q * x) {
      letters.push_back(b);
      ++y;
    } else {
      letters.push_back(1);
      ++x;
    }
  }
  return GroupWord(std::move(letters));
}

GroupWord arc_translation_word(const Slope& s) {
  // Straight path from (d, d^2) to (p + d, q + d^2) with d -> 0+. A vertical
  // line x = k is crossed at t = (k - d)/p, a horizontal line y = j at
  // t = (j - d^2)/q; order by the first-order expansion in d.
  const long p = s.p();
  const long q = s.q();
  struct Event {
    long num, den;  // main term num/den
    long tie;       // sign of the O(d) term: -1/p for verticals, 0 for horizontals
    int letter;
  };
  std::vector<Event> events;
  if (p > 0) {
    for (long k = 1; k <= p; ++k) events.push_back({k, p, -1, 1});
  } else if (p < 0) {
    for (long k = 0; k >= p + 1; --k) events.push_back({-k, -p, 1, -1});
  }
  for (long j = 1; j <= q; ++j) events.push_back({j, q, 0, 2});
  std::sort(events.begin(), events.end(), [](const Event& l, const Event& r) {
    const long lhs = l.num * r.den;
    const long rhs = r.num * l.den;
    if (lhs != rhs) return lhs < rhs;
    return l.tie < r.tie;
  });
  std::vector<int> letters;
  for (const Event& e : events) letters.push_back(e.letter);
  return GroupWord(std::move(letters));
}

std::vector<Slope> slopes_up_to(int n) {
  std::vector<Slope> out;
  for (long q = 0; q <= n; ++q) {
    for (long p = -n; p <= n; ++p) {
      if (q == 0 && p != 1) continue;
      if (std::gcd(p, q) != 1) continue;
      out.emplace_back(p, q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CurveClass> enumerate_scc(const Topology& t, EnumerationBound bound) {
  require_supported(t);
  std::vector<CurveClass> out;
  if (t.is_pants()) {
    out.push_back(CurveClass::make(GroupWord::parse("a"), CurveKind::Boundary, "boundary1"));
    out.push_back(CurveClass::make(GroupWord::parse("b"), CurveKind::Boundary, "boundary2"));
    out.push_back(CurveClass::make(GroupWord::parse("BA"), CurveKind::Boundary, "boundary3"));
    return out;
  }
  out.push_back(CurveClass::make(GroupWord::parse("abAB"), CurveKind::Boundary, "boundary"));
  for (const Slope& s : slopes_up_to(bound.n))
    out.push_back(CurveClass::make(christoffel_word(s), CurveKind::Interior, "slope " + s.to_string(), s));
  return out;
}

ArcClass pants_arc(int i, int j) {
  if (i > j) std::swap(i, j);
  static const GroupWord boundary[3] = {GroupWord::parse("a"), GroupWord::parse("b"), GroupWord::parse("BA")};
  if (i < 1 || j > 3) throw Error(Errc::InvalidArgument, "pants boundary index must be 1, 2 or 3");
  const std::string id = "arc " + std::to_string(i) + std::to_string(j);
  if (i != j) return {boundary[i - 1], boundary[j - 1], id, std::nullopt};
  // Return arc from boundary i around the next boundary: double coset <g_i> g_k <g_i>.
  static const GroupWord around[3] = {GroupWord::parse("b"), GroupWord::parse("a"), GroupWord::parse("a")};
  const GroupWord& c = boundary[i - 1];
  return {c, c.conjugated_by(around[i - 1]), id, std::nullopt};
}

ArcClass torus_arc(const Slope& s) {
  const GroupWord& k = torus_corner();
  return {k, k.conjugated_by(arc_translation_word(s)), "arc slope " + s.to_string(), s};
}

std::vector<ArcClass> enumerate_arcs(const Topology& t, EnumerationBound bound) {
  require_supported(t);
  std::vector<ArcClass> out;
  if (t.is_pants()) {
    for (auto [i, j] : {std::pair{1, 2}, {1, 3}, {2, 3}, {1, 1}, {2, 2}, {3, 3}}) out.push_back(pants_arc(i, j));
    return out;
  }
  for (const Slope& s : slopes_up_to(bound.n)) out.push_back(torus_arc(s));
  return out;
}

std::vector<ArcClass> filling_arc_family(const Topology& t) {
  require_supported(t);
  if (t.is_pants()) return {pants_arc(1, 2), pants_arc(1, 3)};
  return {torus_arc(Slope(1, 0)), torus_arc(Slope(0, 1))};
}

ArcClass arc_by_name(const Topology& t, const std::string& name) {
  require_supported(t);
  if (t.is_pants()) {
    if (name.size() == 2 && name[0] >= '1' && name[0] <= '3' && name[1] >= '1' && name[1] <= '3')
      return pants_arc(name[0] - '0', name[1] - '0');
    throw Error(Errc::InvalidArgument, "pants arc name must be two boundary indices, e.g. \"12\"");
  }
  const auto slash = name.find('/');
  if (slash == std::string::npos) throw Error(Errc::InvalidArgument, "torus arc name must be a slope p/q");
  try {
    return torus_arc(Slope(std::stol(name.substr(0, slash)), std::stol(name.substr(slash + 1))));
  } catch (const std::logic_error&) {
    throw Error(Errc::InvalidArgument, "torus arc name must be a slope p/q, got \"" + name + "\"");
  }
}

}  // namespace hypstrip
