#include "hypstrip/peel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <iostream>
#include <numbers>
#include <sstream>

#include "hypstrip/error.hpp"

namespace hypstrip {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kWallMergeTolerance = 1e-7;
constexpr int kMaxTangencyRetries = 3;
constexpr double kTangencyNudge = 1e-6;

WarningHandler& warning_handler() {
  static WarningHandler handler = [](const std::string& msg) { std::cerr << "warning: " << msg << '\n'; };
  return handler;
}

void warn(const std::string& msg) {
  if (warning_handler()) warning_handler()(msg);
}

// Upper half-plane point stored without validation; words of length up to
// the search radius push points extremely close to the real axis.
struct HP {
  double x;
  double y;
  double r2() const noexcept { return x * x + y * y; }
};

HP move(const Isometry& m, HP p) noexcept {
  const double wr = m.c() * p.x + m.d();
  const double wi = m.c() * p.y;
  const double nr = m.a() * p.x + m.b();
  const double ni = m.a() * p.y;
  const double den = wr * wr + wi * wi;
  return {(nr * wr + ni * wi) / den, p.y / den};
}

HP to_hp(const Point& p) noexcept { return {p.x(), p.y()}; }
Point to_point(HP p) { return Point(p.x, p.y); }

int letter_index(int letter) noexcept { return 2 * (std::abs(letter) - 1) + (letter < 0 ? 1 : 0); }
constexpr std::array<int, 4> kLetters = {1, -1, 2, -2};

// The surface's generators conjugated into the normalized frame of a strip.
struct Frame {
  Isometry n;                         // strip frame
  std::array<Isometry, 4> forward;    // N rho(l) N^-1
  std::array<Isometry, 4> backward;   // N rho(l)^-1 N^-1
  double half;                        // eps / 2
  double r2_lo;                       // exp(-eps)
  double r2_hi;                       // exp(eps)

  Frame(const MarkedSurface& s, const Strip& b0) : n(b0.frame()), half(0.5 * b0.width()) {
    const Isometry ninv = n.inverse();
    for (int i = 0; i < 4; ++i) {
      const Isometry m = s.holonomy(GroupWord({kLetters[static_cast<std::size_t>(i)]}));
      forward[static_cast<std::size_t>(i)] = n * m * ninv;
      backward[static_cast<std::size_t>(i)] = n * m.inverse() * ninv;
    }
    r2_lo = std::exp(-b0.width());
    r2_hi = std::exp(b0.width());
  }

  HP pull(int letter, HP p) const noexcept { return move(backward[static_cast<std::size_t>(letter_index(letter))], p); }
  HP push(int letter, HP p) const noexcept { return move(forward[static_cast<std::size_t>(letter_index(letter))], p); }
  HP local(const Point& p) const noexcept { return move(n, to_hp(p)); }
  double level(HP p) const noexcept { return 0.5 * std::log(p.r2()); }
};

// Visits h = prefix * s for every reduced s with |s| <= depth; `p` and `q`
// are the segment endpoints already pulled back by the prefix, in the frame.
template <class Visit>
void dfs(const Frame& f, std::vector<int>& word, HP p, HP q, int depth, int s_len, Visit& visit) {
  visit(static_cast<const std::vector<int>&>(word), p, q, s_len);
  if (s_len == depth) return;
  for (int l : kLetters) {
    if (!word.empty() && word.back() == -l) continue;
    word.push_back(l);
    dfs(f, word, f.pull(l, p), f.pull(l, q), depth, s_len + 1, visit);
    word.pop_back();
  }
}

// Pulled-back endpoints of the segment [p, rho(path) p] for every prefix of
// the path, computed one letter at a time.
struct PrefixPoints {
  std::vector<std::vector<int>> words;
  std::vector<HP> p;
  std::vector<HP> q;
};

PrefixPoints walk_path(const Frame& f, const Point& start, const GroupWord& path) {
  const auto& letters = path.letters();
  const std::size_t n = letters.size();
  PrefixPoints out;
  out.p.resize(n + 1);
  out.q.resize(n + 1);
  out.p[0] = f.local(start);
  for (std::size_t k = 0; k < n; ++k) out.p[k + 1] = f.pull(letters[k], out.p[k]);
  out.q[n] = f.local(start);
  for (std::size_t k = n; k-- > 0;) out.q[k] = f.push(letters[k], out.q[k + 1]);
  for (std::size_t k = 0; k <= n; ++k) out.words.emplace_back(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

// Intersection of the geodesic through p and q (frame coordinates) with the
// circle |z| = rho; nullopt if they do not meet.
std::optional<Point> meet_circle(HP p, HP q, double rho) {
  const Geodesic g = geodesic_through(to_point(p), to_point(q));
  double x;
  if (g.is_vertical()) {
    x = g.u().is_infinite() ? g.v().value() : g.u().value();
  } else {
    const double c = g.center(), r = g.radius();
    if (std::abs(c) < 1e-300) return std::nullopt;
    x = (rho * rho - r * r + c * c) / (2.0 * c);
  }
  const double y2 = rho * rho - x * x;
  if (!(y2 > 0.0)) return std::nullopt;
  return Point(x, std::sqrt(y2));
}

// Distance from p to where the segment [p, q] meets the middle leaf |z| = 1.
double middle_param(HP p, HP q) {
  const auto m = meet_circle(p, q, 1.0);
  return m ? dist(to_point(p), *m) : 0.0;
}

Point apply_word(const MarkedSurface& s, const std::vector<int>& word, Point x) {
  for (std::size_t k = word.size(); k-- > 0;) x = s.holonomy(GroupWord({word[k]}))(x);
  return x;
}

IdealPoint apply_word(const MarkedSurface& s, const std::vector<int>& word, IdealPoint x) {
  for (std::size_t k = word.size(); k-- > 0;) x = s.holonomy(GroupWord({word[k]}))(x);
  return x;
}

bool in_cyclic_interval(double start, double end, double a, double b, double margin) {
  const auto pos = [start](double x) { return std::fmod(std::fmod(x - start, 2 * kPi) + 2 * kPi, 2 * kPi); };
  const double len = pos(end);
  const double pa = pos(a);
  double pb = pos(b);
  // Images of short arcs under long words can round to a reversed pair.
  if (pb < pa && pa - pb < 1e-9) pb = pa;
  return pa > margin && pb < len - margin && pa <= pb;
}

double ideal_angle(const Isometry& m, double x) noexcept {
  return 2.0 * std::atan2(m.a() * x + m.b(), m.c() * x + m.d());
}

struct BasepointStatus {
  bool inside = false;
  bool tangent = false;
  bool clear() const noexcept { return !inside && !tangent; }
};

struct WallScan {
  std::vector<std::vector<Wall>> walls;  // per generator, ordered from x0
  std::vector<bool> saturated;
  BasepointStatus base;
};

// One depth-first pass over reduced words h, |h| <= radius, carrying the
// pulled-back basepoint and the pulled-back end of each generator segment.
// With no generators the pass only locates the basepoint and stops at the
// first wall that contains or touches it.
WallScan scan_walls(const MarkedSurface& s, const Strip& b0, double twist_length, const Point& x0,
                    const std::vector<GroupWord>& gens, int radius, double tol) {
  constexpr std::size_t kMaxEnds = 8;
  if (gens.size() + 1 > kMaxEnds) throw Error(Errc::InvalidArgument, "too many generators for the wall scan");
  const Frame f(s, b0);
  const std::size_t n = gens.size() + 1;
  std::array<HP, kMaxEnds> start{};
  start[0] = f.local(x0);
  for (std::size_t i = 1; i < n; ++i) {
    HP q = start[0];
    const auto& letters = gens[i - 1].letters();
    for (std::size_t k = letters.size(); k-- > 0;) q = f.push(letters[k], q);
    start[i] = q;
  }
  const double slack = std::exp(2.0 * tol);
  const double lo_out = f.r2_lo / slack, lo_in = f.r2_lo * slack;
  const double hi_in = f.r2_hi / slack, hi_out = f.r2_hi * slack;

  struct Hit {
    std::vector<int> word;
    double param;
    bool below;  // x0 on the near side of the wall
  };
  std::vector<std::vector<Hit>> hits(gens.size());
  WallScan out;
  out.saturated.assign(gens.size(), true);
  std::vector<int> word;
  bool stop = false;

  auto rec = [&](auto&& self, const std::array<HP, kMaxEnds>& pts, int depth) -> void {
    // -1 below the strip, +1 above, 0 inside or on the boundary.
    std::array<int, kMaxEnds> side{};
    for (std::size_t i = 0; i < n; ++i) {
      const double r2 = pts[i].r2();
      if (r2 < lo_out) {
        side[i] = -1;
      } else if (r2 > hi_out) {
        side[i] = 1;
      } else {
        if (r2 <= lo_in || r2 >= hi_in) out.base.tangent = true;
        else out.base.inside = true;
        if (gens.empty()) {
          stop = true;
          return;
        }
      }
    }
    for (std::size_t g = 0; g + 1 < n; ++g) {
      if (side[0] == 0 || side[g + 1] == 0 || side[0] == side[g + 1]) continue;
      if (depth >= radius - 1) out.saturated[g] = false;
      const double t = middle_param(pts[0], pts[g + 1]);
      bool dup = false;
      for (const Hit& h : hits[g]) dup = dup || std::abs(h.param - t) < kWallMergeTolerance;
      if (!dup) hits[g].push_back({word, t, side[0] < 0});
    }
    if (depth == radius) return;
    for (int l : kLetters) {
      if (stop) return;
      if (!word.empty() && word.back() == -l) continue;
      std::array<HP, kMaxEnds> next{};
      for (std::size_t i = 0; i < n; ++i) next[i] = f.pull(l, pts[i]);
      word.push_back(l);
      self(self, next, depth + 1);
      word.pop_back();
    }
  };
  rec(rec, start, 0);

  const Geodesic axis0 = b0.axis();
  for (auto& list : hits) {
    std::sort(list.begin(), list.end(), [](const Hit& l, const Hit& r) { return l.param < r.param; });
    std::vector<Wall> walls;
    for (const Hit& h : list) {
      const Geodesic axis(apply_word(s, h.word, axis0.u()), apply_word(s, h.word, axis0.v()));
      Strip strip(axis, apply_word(s, h.word, b0.center()), b0.width());
      walls.push_back({GroupWord(h.word), std::move(strip), translation_along(axis, twist_length), h.param, h.below ? -1 : 1});
    }
    out.walls.push_back(std::move(walls));
  }
  return out;
}

// Candidate basepoints in the strip frame: the surface basepoint first, then
// points on either side of the strip at increasing distance.
std::vector<Point> basepoint_candidates(const MarkedSurface& s, const Strip& b0) {
  std::vector<Point> out{s.basepoint()};
  const Isometry back = b0.frame().inverse();
  for (double r : {0.4, 0.8, 1.2, 1.6}) {
    for (double sign : {1.0, -1.0}) {
      for (double th : {kPi / 2, kPi / 3, 2 * kPi / 3, kPi / 6, 5 * kPi / 6}) {
        const double rad = std::exp(sign * (0.5 * b0.width() + r));
        out.push_back(back(Point(rad * std::cos(th), rad * std::sin(th))));
      }
    }
  }
  return out;
}

void require_translation(const Strip& b0, const Isometry& t0, double tol) {
  const Axis ax = axis_of(t0);
  if (!ax.geodesic.same_line(b0.axis(), std::max(tol, kIncidenceTolerance)))
    throw Error(Errc::InvalidArgument, "twist must translate along the strip axis");
}

MarkedSurface peel_one(const MarkedSurface& s, const ArcClass& arc, const PeelConfig& cfg, std::vector<PeelStep>& steps) {
  double eps = cfg.eps;
  for (int attempt = 0;; ++attempt) {
    const Strip b0 = base_strip(s, arc, eps);
    if (!check_embedded(s, b0, cfg.embed_check_radius)) {
      std::ostringstream os;
      os << "strip of width " << eps << " around " << arc.id << " is not embedded (radius " << cfg.embed_check_radius << ")";
      throw Error(Errc::StripNotEmbedded, os.str());
    }
    std::optional<Point> x0;
    bool tangent = false;
    for (const Point& cand : basepoint_candidates(s, b0)) {
      const WallScan probe = scan_walls(s, b0, eps, cand, {}, cfg.wall_radius, cfg.tolerance);
      tangent = tangent || probe.base.tangent;
      if (probe.base.clear()) {
        x0 = cand;
        break;
      }
    }
    if (!x0) {
      if (tangent && attempt < kMaxTangencyRetries) {
        eps += kTangencyNudge;
        continue;
      }
      throw Error(Errc::BasepointInWall, "no basepoint candidate lies outside every wall of " + arc.id);
    }

    std::vector<GroupWord> gens;
    for (std::size_t gi = 0; gi < s.generators().size(); ++gi) gens.push_back(GroupWord::generator(static_cast<int>(gi)));
    const WallScan found = scan_walls(s, b0, eps, *x0, gens, cfg.wall_radius, cfg.tolerance);
    if (!found.base.clear()) {
      if (attempt >= kMaxTangencyRetries) throw Error(Errc::TangentWall, "segment tangent to a wall of " + arc.id);
      eps += kTangencyNudge;
      continue;
    }
    PeelStep step{arc, s, b0, *x0, eps, {}};
    std::vector<Isometry> holonomy;
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      if (!found.saturated[gi]) {
        std::ostringstream os;
        os << "walls crossed by generator " << gens[gi].to_string() << " still appear at word length " << cfg.wall_radius
           << "; raise wall_radius";
        throw Error(Errc::NonConvergedWalls, os.str());
      }
      Isometry m = Isometry::identity();
      for (const Wall& w : found.walls[gi]) m = m * (w.sign > 0 ? w.twist : w.twist.inverse());
      holonomy.push_back(m * s.generator_holonomy()[gi]);
      step.generator_walls.push_back({found.walls[gi], true});
    }
    MarkedSurface out(s.topology(), std::move(holonomy), s.label() + "/peel[" + arc.id + "]", s.basepoint());
    steps.push_back(std::move(step));
    return out;
  }
}

}  // namespace

void PeelConfig::validate() const {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(Errc::NonPositiveWidth, "eps must be positive");
  if (wall_radius < 1) throw Error(Errc::InvalidArgument, "wall_radius must be >= 1");
  if (embed_check_radius < 1) throw Error(Errc::InvalidArgument, "embed_check_radius must be >= 1");
  if (!(tolerance > 0.0)) throw Error(Errc::InvalidArgument, "tolerance must be positive");
}

void set_warning_handler(WarningHandler handler) { warning_handler() = std::move(handler); }

Strip base_strip(const MarkedSurface& s, const ArcClass& arc, double eps) {
  if (!(eps > 0.0)) throw Error(Errc::NonPositiveWidth, "strip width must be positive");
  return strip_around(arc_geodesic(s, arc).segment, eps);
}

bool check_embedded(const MarkedSurface& s, const Strip& b0, int radius) {
  if (radius <= 0) {
    warn("check_embedded with radius 0 checks nothing");
    return true;
  }
  const Frame f(s, b0);
  const double r = std::exp(-f.half), big = std::exp(f.half);
  const double th_r = 2.0 * std::atan(r), th_big = 2.0 * std::atan(big);
  const double margin = 1e-13;
  bool embedded = true;
  std::vector<int> word;
  // Depth-first over reduced words carrying rho~(h) in the strip frame.
  auto rec = [&](auto&& self, const Isometry& m, int depth) -> void {
    if (!embedded) return;
    if (!word.empty()) {
      // Ideal arcs of the translate: images of [r, big] and [-big, -r].
      const double a1 = ideal_angle(m, r), b1 = ideal_angle(m, big);
      const double a2 = ideal_angle(m, -big), b2 = ideal_angle(m, -r);
      const bool same = std::abs(std::remainder(a1 - th_r, 2 * kPi)) < 1e-10 &&
                        std::abs(std::remainder(b1 - th_big, 2 * kPi)) < 1e-10;
      if (!same) {
        const bool inner = in_cyclic_interval(-th_r, th_r, a1, b1, margin) && in_cyclic_interval(-th_r, th_r, a2, b2, margin);
        const bool outer =
            in_cyclic_interval(th_big, -th_big, a1, b1, margin) && in_cyclic_interval(th_big, -th_big, a2, b2, margin);
        if (!inner && !outer) {
          embedded = false;
          return;
        }
      }
    }
    if (static_cast<int>(word.size()) == radius) return;
    for (int l : kLetters) {
      if (!word.empty() && word.back() == -l) continue;
      word.push_back(l);
      self(self, m * f.forward[static_cast<std::size_t>(letter_index(l))], depth + 1);
      word.pop_back();
    }
  };
  rec(rec, Isometry::identity(), 0);
  return embedded;
}

WallSearch walls_crossed(const MarkedSurface& s, const Strip& b0, const Isometry& t0, const GroupWord& g, int radius,
                         double tolerance) {
  if (g.empty()) return {};
  require_translation(b0, t0, tolerance);
  const double length = translation_length(t0);
  const WallScan found = scan_walls(s, b0, length, s.basepoint(), {g}, radius, tolerance);
  if (found.base.inside) throw Error(Errc::BasepointInWall, "basepoint lies inside a wall");
  if (found.base.tangent) throw Error(Errc::TangentWall, "basepoint lies on a wall boundary");
  WallSearch out{found.walls[0], found.saturated[0]};
  // Orient each twist as h T0 h^-1 rather than along the stored axis.
  const bool forward = axis_of(t0).geodesic.u().approx_equal(b0.axis().u());
  if (!forward)
    for (Wall& w : out.walls) w.twist = w.twist.inverse();
  return out;
}

PeelReport peel_with_report(const MarkedSurface& s, const std::vector<ArcClass>& arcs, const PeelConfig& cfg) {
  cfg.validate();
  if (arcs.empty()) throw Error(Errc::InvalidArgument, "no arcs to peel");
  PeelReport report{s, {}};
  for (const ArcClass& arc : arcs) report.result = peel_one(report.result, arc, cfg, report.steps);
  return report;
}

MarkedSurface peel(const MarkedSurface& s, const std::vector<ArcClass>& arcs, const PeelConfig& cfg) {
  return peel_with_report(s, arcs, cfg).result;
}

namespace {

struct LocalCrossing {
  double param;
  double chord;
  double collapsed;
};

// Walls h*b0, h = prefix * s, met by the segment [x, rho(path) x]. Returns
// nullopt if an endpoint falls inside a wall (caller moves the segment).
template <class OnHit>
bool scan_path(const Frame& f, const Point& start, const GroupWord& path, int depth, double tol, OnHit on_hit) {
  const PrefixPoints pre = walk_path(f, start, path);
  bool clean = true;
  auto visit = [&](const std::vector<int>&, HP p, HP q, int) {
    if (!clean) return;
    const double lp = f.level(p), lq = f.level(q);
    if (std::abs(lp) < f.half + tol || std::abs(lq) < f.half + tol) {
      clean = false;
      return;
    }
    if ((lp < 0) != (lq < 0)) on_hit(p, q);
  };
  for (std::size_t k = 0; k < pre.p.size() && clean; ++k) {
    std::vector<int> word = pre.words[k];
    dfs(f, word, pre.p[k], pre.q[k], depth, 0, visit);
  }
  return clean;
}

}  // namespace

StripCrossings curve_crossings(const MarkedSurface& s, const Strip& b0, const GroupWord& w0, int depth) {
  const GroupWord w = w0.cyclically_reduced();
  if (w.empty()) throw Error(Errc::InvalidArgument, "curve word is trivial");
  const Frame f(s, b0);
  const Axis ax = axis_of(s.holonomy(w));
  const Isometry af = normalizing_frame(ax.geodesic);
  const double foot = std::abs(af.apply(s.basepoint().z()));
  const Isometry back = af.inverse();
  for (int attempt = 0; attempt < 64; ++attempt) {
    // Slide the start point along the axis until it avoids every wall.
    const double shift = attempt == 0 ? 0.0 : (attempt % 2 ? 1.0 : -1.0) * 0.037 * ((attempt + 1) / 2) * std::max(ax.translation_length, 0.1);
    const Point p = back(Point(0.0, foot * std::exp(shift)));
    std::vector<LocalCrossing> hits;
    const bool clean = scan_path(f, p, w, depth, kTolerance, [&](HP a, HP b) {
      const double t = middle_param(a, b);
      for (const LocalCrossing& h : hits)
        if (std::abs(h.param - t) < kWallMergeTolerance) return;
      const auto lo = meet_circle(a, b, std::exp(-f.half));
      const auto hi = meet_circle(a, b, std::exp(f.half));
      if (!lo || !hi) return;
      const double ratio = std::exp(-2.0 * f.half);
      const Point c(hi->x() * ratio, hi->y() * ratio);
      hits.push_back({t, dist(*lo, *hi), dist(*lo, c)});
    });
    if (!clean) continue;
    StripCrossings out;
    std::sort(hits.begin(), hits.end(), [](const LocalCrossing& l, const LocalCrossing& r) { return l.param < r.param; });
    for (const LocalCrossing& h : hits) {
      ++out.count;
      out.chords.push_back(h.chord);
      out.collapsed.push_back(h.collapsed);
      out.max_collapsed_chord = std::max(out.max_collapsed_chord, h.collapsed);
    }
    return out;
  }
  throw Error(Errc::BasepointInWall, "could not place a start point on the axis of " + w.to_string() + " outside the walls");
}

namespace {

using Cx = std::complex<double>;

// Point in frame coordinates with a unit Euclidean direction.
struct Ray {
  HP p;
  Cx dir;
};

Cx transport(const Isometry& m, HP p, Cx dir) {
  const Cx den(m.c() * p.x + m.d(), m.c() * p.y);
  const Cx w = dir * std::conj(den * den);
  return w / std::abs(w);
}

Ray move_ray(const Isometry& m, const Ray& r) { return {move(m, r.p), transport(m, r.p, r.dir)}; }

// Point at distance t along the geodesic leaving r.p in direction r.dir: the
// image of i e^t under z -> x + y R(z), R the rotation about i turning the
// upward direction into r.dir.
Ray advance(const Ray& r, double t) {
  const double th = std::arg(r.dir) - 0.5 * kPi;
  const double c = std::cos(0.5 * th), s = std::sin(0.5 * th);
  const Cx zeta(0.0, std::exp(t));
  const Cx den = -s * zeta + c;
  const Cx q = Cx(r.p.x, 0.0) + r.p.y * ((c * zeta + s) / den);
  const Cx d = Cx(0.0, 1.0) / (den * den);
  return {{q.real(), q.imag()}, d / std::abs(d)};
}

// cosh of the distance from p to i, less one, times two.
double spread(HP p) noexcept { return (p.x * p.x + (p.y - 1.0) * (p.y - 1.0)) / p.y; }

}  // namespace

bool arc_meets_strip(const MarkedSurface& s, const Strip& b0, const ArcClass& arc, int depth) {
  const Frame f(s, b0);
  // Start at the foot of the arc on the first carrier's axis. In the frame of
  // that axis the far carrier has endpoints lo, hi of one sign and the arc is
  // the circle |z| = sqrt(lo hi), which stays accurate when lo and hi agree
  // to every printed digit.
  const auto [u1, v1] = axis_endpoints(s, arc.carrier1);
  const Isometry g = normalizing_frame(Geodesic(u1, v1));
  const auto [u2, v2] = axis_endpoints(s, arc.carrier2);
  const IdealPoint lo = g(u2), hi = g(v2);
  if (lo.is_infinite() || hi.is_infinite() || !(lo.value() * hi.value() > 0.0))
    throw Error(Errc::NotHyperparallel, "arc " + arc.id + ": carriers are not hyperparallel");
  const double rho = std::sqrt(lo.value() * hi.value());
  const Isometry to_frame = f.n * g.inverse();
  Ray r = move_ray(to_frame, {{0.0, rho}, Cx(lo.value() > 0 ? 1.0 : -1.0, 0.0)});
  const double length = arc_length(s, arc);

  bool meets = false;
  auto visit = [&](const std::vector<int>&, HP p, HP q, int) {
    if (meets) return;
    const double lp = f.level(p), lq = f.level(q);
    if (std::max(lp, lq) > -f.half && std::min(lp, lq) < f.half) meets = true;
  };
  for (double done = 0.0; done < length && !meets;) {
    const double step = std::min(1.0, length - done);
    const Ray next = advance(r, step);
    // The walk keeps each piece near the strip center, so the search starts
    // from an empty prefix and may move in every direction.
    std::vector<int> prefix;
    dfs(f, prefix, r.p, next.p, depth, 0, visit);
    done += step;
    r = next;
    // Pull the walk back toward the strip center one letter at a time.
    for (bool improved = true; improved;) {
      improved = false;
      int best = 0;
      double best_spread = spread(r.p) * (1.0 - 1e-12);
      for (int l : kLetters) {
        const double sp = spread(f.pull(l, r.p));
        if (sp < best_spread) best = l, best_spread = sp;
      }
      if (best != 0) {
        r = move_ray(f.backward[static_cast<std::size_t>(letter_index(best))], r);
        improved = true;
      }
    }
  }
  return meets;
}

double crossing_decrease_bound(const StripCrossings& c, double eps) {
  return c.count * std::log1p(std::exp(-c.max_collapsed_chord) * eps * eps);
}

}  // namespace hypstrip
