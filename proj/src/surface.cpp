#include "hypstrip/surface.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>

#include "hypstrip/error.hpp"

namespace hypstrip {

namespace {

// a < A < b < B < ...
int letter_key(int letter) noexcept { return 2 * (std::abs(letter) - 1) + (letter < 0 ? 1 : 0); }

bool key_less(const std::vector<int>& l, const std::vector<int>& r) {
  return std::lexicographical_compare(l.begin(), l.end(), r.begin(), r.end(),
                                      [](int x, int y) { return letter_key(x) < letter_key(y); });
}

std::vector<int> rotation(const std::vector<int>& w, std::size_t k) {
  std::vector<int> out(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

// Shortlex-ordered letters of a free group of rank n: a, A, b, B, ...
std::vector<int> alphabet(int n) {
  std::vector<int> letters;
  for (int g = 1; g <= n; ++g) {
    letters.push_back(g);
    letters.push_back(-g);
  }
  return letters;
}

// Depth-first visit of all reduced words up to max_length with their
// holonomy; stops descending when the visitor returns false.
template <class Visitor>
void visit_words(std::span<const Isometry> gens, int max_length, Visitor&& visit) {
  const std::vector<int> letters = alphabet(static_cast<int>(gens.size()));
  std::vector<Isometry> images;
  for (int l : letters) images.push_back(l > 0 ? gens[l - 1] : gens[-l - 1].inverse());
  std::vector<int> word;
  auto rec = [&](auto&& self, const Isometry& m) -> void {
    if (static_cast<int>(word.size()) == max_length) return;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      if (!word.empty() && word.back() == -letters[i]) continue;
      word.push_back(letters[i]);
      const Isometry next = m * images[i];
      if (visit(word, next)) self(self, next);
      word.pop_back();
    }
  };
  rec(rec, Isometry::identity());
}

}  // namespace

// ---------------------------------------------------------------------------

std::string Topology::name() const {
  if (is_pants()) return "pants";
  if (is_one_holed_torus()) return "torus";
  std::ostringstream os;
  os << "genus " << genus << " with " << boundary_count << " boundary components";
  return os.str();
}

GroupWord::GroupWord(std::vector<int> letters) {
  for (int l : letters) {
    if (l == 0) throw Error(Errc::InvalidArgument, "word letter 0 is not a generator");
    if (!letters_.empty() && letters_.back() == -l) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
}

GroupWord GroupWord::parse(std::string_view text) {
  std::vector<int> letters;
  if (text == "1" || text == "e") return GroupWord();
  for (char ch : text) {
    if (ch == ' ' || ch == '\t') continue;
    if (ch >= 'a' && ch <= 'z') {
      letters.push_back(ch - 'a' + 1);
    } else if (ch >= 'A' && ch <= 'Z') {
      letters.push_back(-(ch - 'A' + 1));
    } else {
      throw Error(Errc::InvalidArgument, "bad letter '" + std::string(1, ch) + "' in word \"" + std::string(text) + "\"");
    }
  }
  return GroupWord(std::move(letters));
}

GroupWord GroupWord::inverse() const {
  std::vector<int> out(letters_.rbegin(), letters_.rend());
  for (int& l : out) l = -l;
  return GroupWord(std::move(out));
}

GroupWord GroupWord::operator*(const GroupWord& rhs) const {
  std::vector<int> out = letters_;
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return GroupWord(std::move(out));
}

GroupWord GroupWord::power(int n) const {
  const GroupWord base = n < 0 ? inverse() : *this;
  GroupWord out;
  for (int i = 0; i < std::abs(n); ++i) out = out * base;
  return out;
}

bool GroupWord::is_cyclically_reduced() const noexcept {
  return letters_.size() < 2 || letters_.front() != -letters_.back();
}

GroupWord GroupWord::cyclically_reduced() const {
  std::size_t lo = 0;
  std::size_t hi = letters_.size();
  while (hi - lo >= 2 && letters_[lo] == -letters_[hi - 1]) {
    ++lo;
    --hi;
  }
  return GroupWord(std::vector<int>(letters_.begin() + static_cast<std::ptrdiff_t>(lo),
                                    letters_.begin() + static_cast<std::ptrdiff_t>(hi)));
}

GroupWord GroupWord::canonical_class() const {
  const GroupWord w = cyclically_reduced();
  if (w.empty()) return w;
  const GroupWord inv = w.inverse();
  std::vector<int> best = w.letters_;
  for (const GroupWord* src : {&w, &inv}) {
    for (std::size_t k = 0; k < src->letters_.size(); ++k) {
      std::vector<int> r = rotation(src->letters_, k);
      if (key_less(r, best)) best = std::move(r);
    }
  }
  GroupWord out;
  out.letters_ = std::move(best);
  return out;
}

std::string GroupWord::to_string() const {
  if (letters_.empty()) return "1";
  std::string out;
  for (int l : letters_) out.push_back(l > 0 ? static_cast<char>('a' + l - 1) : static_cast<char>('A' - l - 1));
  return out;
}

// ---------------------------------------------------------------------------

Slope::Slope(long p, long q) {
  if (p == 0 && q == 0) throw Error(Errc::InvalidArgument, "slope 0/0");
  const long g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (q < 0 || (q == 0 && p < 0)) {
    p = -p;
    q = -q;
  }
  p_ = p;
  q_ = q;
}

std::string Slope::to_string() const { return std::to_string(p_) + "/" + std::to_string(q_); }

bool operator<(const Slope& l, const Slope& r) noexcept {
  if (l.q_ == 0) return false;
  if (r.q_ == 0) return true;
  return l.p_ * r.q_ < r.p_ * l.q_;
}

long intersection_number(const Slope& s, const Slope& t) noexcept {
  return std::labs(s.p() * t.q() - s.q() * t.p());
}

CurveClass CurveClass::make(GroupWord word, CurveKind kind, std::string id, std::optional<Slope> slope) {
  if (word.empty()) throw Error(Errc::InvalidArgument, "curve class of the trivial word");
  if (!word.is_cyclically_reduced()) throw Error(Errc::InvalidArgument, "curve word must be cyclically reduced");
  return CurveClass{std::move(word), kind, std::move(id), slope};
}

void WeightedMulticurve::validate() const {
  std::set<GroupWord> seen;
  for (const auto& [c, w] : components) {
    if (!(w > 0.0) || !std::isfinite(w)) throw Error(Errc::InvalidArgument, "multicurve weights must be positive and finite");
    if (!seen.insert(c.canonical()).second)
      throw Error(Errc::InvalidArgument, "multicurve repeats the class " + c.word.to_string());
  }
}

// ---------------------------------------------------------------------------

MarkedSurface::MarkedSurface(Topology topology, std::vector<Isometry> holonomy, std::string label, Point basepoint)
    : topology_(topology), holonomy_(std::move(holonomy)), basepoint_(basepoint), label_(std::move(label)) {
  if (!topology_.supported())
    throw Error(Errc::UnsupportedTopology, topology_.name() + " is not supported (pants and one-holed torus only)");
  if (topology_.euler_characteristic() >= 0) throw Error(Errc::UnsupportedTopology, "Euler characteristic must be negative");
  generators_ = {"a", "b"};
  if (holonomy_.size() != generators_.size())
    throw Error(Errc::InvalidArgument, "expected one holonomy matrix per generator");
  if (topology_.is_pants()) {
    boundary_words_ = {GroupWord::parse("a"), GroupWord::parse("b"), GroupWord::parse("BA")};
  } else {
    boundary_words_ = {GroupWord::parse("abAB")};
  }
  for (const GroupWord& w : boundary_words_) {
    if (!this->holonomy(w).is_hyperbolic())
      throw Error(Errc::BoundaryNotHyperbolic, "boundary word " + w.to_string() + " has non-hyperbolic holonomy");
  }
  std::string elliptic;
  visit_words(holonomy_, 8, [&](const std::vector<int>& word, const Isometry& m) {
    if (elliptic.empty() && m.is_elliptic()) elliptic = GroupWord(word).to_string();
    return elliptic.empty();
  });
  if (!elliptic.empty()) throw Error(Errc::NotDiscrete, "word " + elliptic + " has elliptic holonomy");
}

Isometry MarkedSurface::holonomy(const GroupWord& w) const {
  Isometry m;
  for (int l : w.letters()) {
    const std::size_t g = static_cast<std::size_t>(std::abs(l) - 1);
    if (g >= holonomy_.size()) throw Error(Errc::UnknownGenerator, "word " + w.to_string() + " uses an unknown generator");
    m = m * (l > 0 ? holonomy_[g] : holonomy_[g].inverse());
  }
  return m;
}

MarkedSurface MarkedSurface::with_basepoint(const Point& p) const {
  MarkedSurface out = *this;
  out.basepoint_ = p;
  return out;
}

MarkedSurface MarkedSurface::conjugated(const Isometry& g, std::string label) const {
  std::vector<Isometry> h;
  for (const Isometry& m : holonomy_) h.push_back(g * m * g.inverse());
  return MarkedSurface(topology_, std::move(h), std::move(label), basepoint_);
}

bool MarkedSurface::same_marking_schema(const MarkedSurface& other) const noexcept {
  return topology_ == other.topology_ && generators_ == other.generators_ && boundary_words_ == other.boundary_words_;
}

// ---------------------------------------------------------------------------

double translation_length(const Isometry& m) {
  if (!m.is_hyperbolic()) {
    std::ostringstream os;
    os << "|trace| = " << std::abs(m.trace()) << " <= 2";
    throw Error(Errc::NotHyperbolic, os.str());
  }
  return 2.0 * std::acosh(0.5 * std::abs(m.trace()));
}

MarkedSurface pants_from_lengths(double l1, double l2, double l3) {
  for (double l : {l1, l2, l3})
    if (!(l > 0.0) || !std::isfinite(l)) throw Error(Errc::NonPositiveLength, "boundary lengths must be positive");
  const double c1 = std::cosh(0.5 * l1), c2 = std::cosh(0.5 * l2), c3 = std::cosh(0.5 * l3);
  const double s1 = std::sinh(0.5 * l1), s2 = std::sinh(0.5 * l2);
  // Distance between the axes of a and b: the seam of the right-angled hexagon.
  const double seam = std::acosh((c3 + c1 * c2) / (s1 * s2));
  const double e1 = std::exp(0.5 * l1), e2 = std::exp(0.5 * l2);
  const Isometry a(e1, 0.0, 0.0, 1.0 / e1);
  const double ch = std::cosh(0.5 * seam), sh = std::sinh(0.5 * seam);
  const Isometry shift = Isometry::normalized(ch, sh, sh, ch);
  // b translates opposite to a so that tr(ab) = -2 cosh(l3/2).
  const Isometry b = shift * Isometry(1.0 / e2, 0.0, 0.0, e2) * shift.inverse();
  std::ostringstream label;
  label.precision(15);
  label << "pants(" << l1 << "," << l2 << "," << l3 << ")";
  return MarkedSurface(Topology::pants(), {a, b}, label.str());
}

double fricke_boundary_trace(double x, double y, double z) noexcept { return x * x + y * y + z * z - x * y * z - 2.0; }

MarkedSurface torus_from_traces(double x, double y, double z) {
  const double kappa = fricke_boundary_trace(x, y, z);
  if (!(std::abs(kappa) > 2.0)) {
    std::ostringstream os;
    os << "boundary trace " << kappa << " has |trace| <= 2";
    throw Error(Errc::BoundaryNotHyperbolic, os.str());
  }
  if (!(std::abs(x) > 2.0) || !(std::abs(y) > 2.0))
    throw Error(Errc::NotHyperbolic, "generator traces must satisfy |x|, |y| > 2");
  const double lambda = 0.5 * (x + std::copysign(std::sqrt(x * x - 4.0), x));
  const Isometry a(lambda, 0.0, 0.0, 1.0 / lambda);
  const double p = (z - y / lambda) / (lambda - 1.0 / lambda);
  const double s = y - p;
  const double off = p * s - 1.0;
  const double q = off == 0.0 ? 1.0 : std::sqrt(std::abs(off));
  const double r = off == 0.0 ? 0.0 : std::copysign(std::sqrt(std::abs(off)), off);
  const Isometry b = Isometry::normalized(p, q, r, s);
  std::ostringstream label;
  label.precision(15);
  label << "torus(" << x << "," << y << "," << z << ")";
  return MarkedSurface(Topology::one_holed_torus(), {a, b}, label.str());
}

Isometry holonomy(const MarkedSurface& s, const GroupWord& w) { return s.holonomy(w); }

double curve_length(const MarkedSurface& s, const GroupWord& w) {
  try {
    // Length is a class function; the cyclic reduction avoids the
    // cancellation in the trace of a long conjugate.
    return translation_length(s.holonomy(w.cyclically_reduced()));
  } catch (const Error& e) {
    if (e.code() != Errc::NotHyperbolic) throw;
    throw Error(Errc::NotHyperbolic, "class " + w.to_string() + " is not realized by a closed geodesic");
  }
}

double curve_length(const MarkedSurface& s, const CurveClass& c) { return curve_length(s, c.word); }

std::pair<IdealPoint, IdealPoint> axis_endpoints(const MarkedSurface& s, const GroupWord& w) {
  const auto& l = w.letters();
  std::size_t k = 0;
  while (2 * k + 2 < l.size() && l[k] == -l[l.size() - 1 - k]) ++k;
  const GroupWord core(std::vector<int>(l.begin() + static_cast<std::ptrdiff_t>(k),
                                        l.end() - static_cast<std::ptrdiff_t>(k)));
  const Geodesic g = axis_of(s.holonomy(core)).geodesic;
  IdealPoint u = g.u(), v = g.v();
  for (std::size_t i = k; i-- > 0;) {
    const Isometry m = s.holonomy(GroupWord({l[i]}));
    u = m(u);
    v = m(v);
  }
  return {u, v};
}

ArcRealization arc_geodesic(const MarkedSurface& s, const ArcClass& arc) {
  const auto [u1, v1] = axis_endpoints(s, arc.carrier1);
  const auto [u2, v2] = axis_endpoints(s, arc.carrier2);
  const Geodesic g1(u1, v1), g2(u2, v2);
  if (g1.same_line(g2))
    throw Error(Errc::NotHyperparallel, "arc " + arc.id + ": carriers share an axis");
  try {
    Segment seg = common_perpendicular(g1, g2);
    return {std::move(seg), arc_length(s, arc)};
  } catch (const Error& e) {
    throw Error(e.code(), "arc " + arc.id + ": " + e.what());
  }
}

double arc_length(const MarkedSurface& s, const ArcClass& arc) {
  // Conjugates and products are evaluated as cyclically reduced words: the
  // matrix of a long conjugate cancels catastrophically in its trace.
  auto trace_of = [&](const GroupWord& w) { return std::abs(s.holonomy(w.cyclically_reduced()).trace()); };
  const double ta = trace_of(arc.carrier1) / 2, tb = trace_of(arc.carrier2) / 2;
  if (!(ta > 1.0) || !(tb > 1.0)) throw Error(Errc::NotHyperbolic, "arc " + arc.id + ": carrier is not hyperbolic");
  const double t =
      std::max(trace_of(arc.carrier1 * arc.carrier2), trace_of(arc.carrier1 * arc.carrier2.inverse())) / 2;
  // cosh(l/2) = trace/2 for each carrier.
  const double c = (t - ta * tb) / (std::sqrt(ta * ta - 1) * std::sqrt(tb * tb - 1));
  if (!(c > 1.0 + kTolerance)) throw Error(Errc::NotHyperparallel, "arc " + arc.id + ": carriers are not hyperparallel");
  return std::acosh(c);
}

double multicurve_length(const MarkedSurface& s, const WeightedMulticurve& m) {
  m.validate();
  double total = 0.0;
  for (const auto& [c, w] : m.components) total += w * curve_length(s, c);
  return total;
}

std::vector<GroupWord> reduced_words(int generator_count, int max_length) {
  std::vector<std::vector<GroupWord>> by_length(static_cast<std::size_t>(std::max(max_length, 0)) + 1);
  by_length[0].push_back(GroupWord());
  const std::vector<int> letters = alphabet(generator_count);
  for (int len = 1; len <= max_length; ++len) {
    for (const GroupWord& w : by_length[static_cast<std::size_t>(len - 1)]) {
      for (int l : letters) {
        if (!w.empty() && w.letters().back() == -l) continue;
        std::vector<int> next = w.letters();
        next.push_back(l);
        by_length[static_cast<std::size_t>(len)].push_back(GroupWord(std::move(next)));
      }
    }
  }
  std::vector<GroupWord> out;
  for (std::size_t len = 1; len < by_length.size(); ++len)
    out.insert(out.end(), by_length[len].begin(), by_length[len].end());
  return out;
}

}  // namespace hypstrip
