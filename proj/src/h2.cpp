#include "hypstrip/h2.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hypstrip/error.hpp"

namespace hypstrip {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NotHyperbolic: return "NotHyperbolic";
    case Errc::NotHyperparallel: return "NotHyperparallel";
    case Errc::NotPerpendicular: return "NotPerpendicular";
    case Errc::NonPositiveWidth: return "NonPositiveWidth";
    case Errc::NonPositiveLength: return "NonPositiveLength";
    case Errc::BoundaryNotHyperbolic: return "BoundaryNotHyperbolic";
    case Errc::NotDiscrete: return "NotDiscrete";
    case Errc::UnknownGenerator: return "UnknownGenerator";
    case Errc::UnsupportedTopology: return "UnsupportedTopology";
    case Errc::BasepointInWall: return "BasepointInWall";
    case Errc::TangentWall: return "TangentWall";
    case Errc::StripNotEmbedded: return "StripNotEmbedded";
    case Errc::NonConvergedWalls: return "NonConvergedWalls";
    case Errc::TopologyMismatch: return "TopologyMismatch";
    case Errc::EmptyClassSet: return "EmptyClassSet";
    case Errc::ConfigError: return "ConfigError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) noexcept {
  a = std::fmod(a, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  return a;
}

// Log-radius of an ideal point in a normalized frame.
double ideal_level(const IdealPoint& x) noexcept {
  if (x.is_infinite()) return std::numeric_limits<double>::infinity();
  if (x.value() == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(x.value()));
}

Crossing classify(double lo, double hi, double half, double tol) noexcept {
  if (lo < -half - tol && hi > half + tol) return Crossing::Crosses;
  if (hi < -half - tol || lo > half + tol) return Crossing::Disjoint;
  if (hi <= -half + tol || lo >= half - tol) return Crossing::Tangent;
  return Crossing::Meets;
}

}  // namespace

// ---------------------------------------------------------------------------
// Point / IdealPoint / Geodesic / Segment

Point::Point(double x, double y) : x_(x), y_(y) {
  if (!std::isfinite(x) || !std::isfinite(y) || !(y > 0.0)) {
    std::ostringstream os;
    os << "point (" << x << ", " << y << ") is not in the upper half-plane";
    throw Error(Errc::InvalidArgument, os.str());
  }
}

IdealPoint::IdealPoint(double value) : value_(value), infinite_(false) {
  if (!std::isfinite(value)) throw Error(Errc::InvalidArgument, "ideal point must be finite or infinity()");
}

double IdealPoint::angle() const noexcept { return infinite_ ? kPi : 2.0 * std::atan(value_); }

bool IdealPoint::approx_equal(const IdealPoint& other, double tol) const noexcept {
  if (infinite_ && other.infinite_) return true;
  if (!infinite_ && !other.infinite_) {
    const double scale = std::max({1.0, std::abs(value_), std::abs(other.value_)});
    if (std::abs(value_ - other.value_) <= tol * scale) return true;
  }
  const double diff = wrap_angle(angle() - other.angle());
  return std::min(diff, 2.0 * kPi - diff) <= tol;
}

Geodesic::Geodesic(IdealPoint u, IdealPoint v) : u_(u), v_(v) {
  if (u_.approx_equal(v_, 1e-15)) throw Error(Errc::InvalidArgument, "geodesic endpoints coincide");
}

double Geodesic::radius() const noexcept { return 0.5 * std::abs(v_.value() - u_.value()); }

bool Geodesic::same_line(const Geodesic& other, double tol) const noexcept {
  return (u_.approx_equal(other.u_, tol) && v_.approx_equal(other.v_, tol)) ||
         (u_.approx_equal(other.v_, tol) && v_.approx_equal(other.u_, tol));
}

bool Geodesic::contains(const Point& p, double tol) const noexcept {
  const Complex w = normalizing_frame(*this).apply(p.z());
  // sinh of the distance from p to the line.
  return std::abs(w.real()) / w.imag() <= tol;
}

Segment::Segment(Geodesic carrier_, Point a_, Point b_) : carrier(carrier_), a(a_), b(b_) {
  if (!carrier.contains(a) || !carrier.contains(b))
    throw Error(Errc::InvalidArgument, "segment endpoints are not on the carrier geodesic");
  if (dist(a, b) == 0.0) throw Error(Errc::InvalidArgument, "degenerate segment");
}

double Segment::length() const noexcept { return dist(a, b); }

Point Segment::midpoint() const {
  const Isometry frame = normalizing_frame(carrier, a);
  const double t = std::abs(frame.apply(b.z()));
  return frame.inverse()(Point(0.0, std::sqrt(t)));
}

// ---------------------------------------------------------------------------
// Isometry

Isometry::Isometry(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d) ||
      std::abs(determinant() - 1.0) > kDeterminantTolerance) {
    std::ostringstream os;
    os << "matrix determinant " << determinant() << " is not 1";
    throw Error(Errc::InvalidArgument, os.str());
  }
}

Isometry Isometry::normalized(double a, double b, double c, double d) {
  const double det = a * d - b * c;
  if (!(det > 0.0) || !std::isfinite(det))
    throw Error(Errc::InvalidArgument, "matrix must have positive determinant");
  const double s = 1.0 / std::sqrt(det);
  return raw(a * s, b * s, c * s, d * s);
}

Isometry Isometry::operator*(const Isometry& r) const noexcept {
  return raw(a_ * r.a_ + b_ * r.c_, a_ * r.b_ + b_ * r.d_, c_ * r.a_ + d_ * r.c_,
             c_ * r.b_ + d_ * r.d_);
}

Point Isometry::operator()(const Point& p) const {
  const Complex z = p.z();
  const Complex den = c_ * z + d_;
  const Complex w = (a_ * z + b_) / den;
  // Im w = Im z / |cz+d|^2 keeps full relative accuracy for det = 1.
  return Point(w.real(), p.y() / std::norm(den));
}

IdealPoint Isometry::operator()(const IdealPoint& x) const {
  if (x.is_infinite()) return c_ == 0.0 ? IdealPoint::infinity() : IdealPoint(a_ / c_);
  const double den = c_ * x.value() + d_;
  if (den == 0.0) return IdealPoint::infinity();
  const double w = (a_ * x.value() + b_) / den;
  return std::isfinite(w) ? IdealPoint(w) : IdealPoint::infinity();
}

Geodesic Isometry::operator()(const Geodesic& g) const { return Geodesic((*this)(g.u()), (*this)(g.v())); }

bool Isometry::is_hyperbolic() const noexcept { return std::abs(trace()) > 2.0 + kDeterminantTolerance; }
bool Isometry::is_elliptic() const noexcept { return std::abs(trace()) < 2.0 - kDeterminantTolerance; }
bool Isometry::is_parabolic() const noexcept { return !is_hyperbolic() && !is_elliptic(); }

bool Isometry::approx_equal(const Isometry& o, double tol) const noexcept {
  const auto close = [tol](double s, const Isometry& x, const Isometry& y) {
    return std::abs(x.a_ - s * y.a_) <= tol && std::abs(x.b_ - s * y.b_) <= tol &&
           std::abs(x.c_ - s * y.c_) <= tol && std::abs(x.d_ - s * y.d_) <= tol;
  };
  return close(1.0, *this, o) || close(-1.0, *this, o);
}

// ---------------------------------------------------------------------------
// Strip

Strip::Strip(Geodesic axis, Point center, double width) : axis_(axis), center_(center), width_(width) {
  if (!(width > 0.0) || !std::isfinite(width))
    throw Error(Errc::NonPositiveWidth, "strip width must be a positive finite number");
  if (!axis_.contains(center_)) throw Error(Errc::InvalidArgument, "strip center is not on the axis");
  frame_ = normalizing_frame(axis_, center_);
}

Geodesic Strip::near_boundary() const {
  const double r = std::exp(-0.5 * width_);
  return frame_.inverse()(Geodesic(IdealPoint(-r), IdealPoint(r)));
}

Geodesic Strip::far_boundary() const {
  const double r = std::exp(0.5 * width_);
  return frame_.inverse()(Geodesic(IdealPoint(-r), IdealPoint(r)));
}

Segment Strip::core() const {
  const Isometry back = frame_.inverse();
  return Segment(axis_, back(Point(0.0, std::exp(-0.5 * width_))), back(Point(0.0, std::exp(0.5 * width_))));
}

double Strip::level(const Point& p) const { return std::log(std::abs(frame_.apply(p.z()))); }

const char* crossing_name(Crossing c) noexcept {
  switch (c) {
    case Crossing::Disjoint: return "Disjoint";
    case Crossing::Crosses: return "Crosses";
    case Crossing::Tangent: return "Tangent";
    case Crossing::Meets: return "Meets";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Operations

double dist(const Point& p, const Point& q) noexcept {
  const double dx = p.x() - q.x();
  const double dy = p.y() - q.y();
  // cosh d - 1 = 2 sinh^2(d/2); the asinh form stays accurate for tiny d.
  return 2.0 * std::asinh(0.5 * std::sqrt((dx * dx + dy * dy) / (p.y() * q.y())));
}

Point apply(const Isometry& m, const Point& p) { return m(p); }

Isometry normalizing_frame(const Geodesic& g, std::optional<Point> center) {
  Isometry t;
  const IdealPoint& u = g.u();
  const IdealPoint& v = g.v();
  if (v.is_infinite()) {
    t = Isometry(1.0, -u.value(), 0.0, 1.0);
  } else if (u.is_infinite()) {
    t = Isometry(0.0, -1.0, 1.0, -v.value());
  } else if (u.value() > v.value()) {
    t = Isometry::normalized(1.0, -u.value(), 1.0, -v.value());
  } else {
    t = Isometry::normalized(1.0, -u.value(), -1.0, v.value());
  }
  if (!center) return t;
  const double s = std::abs(t.apply(center->z()));
  const double r = std::sqrt(s);
  return Isometry(1.0 / r, 0.0, 0.0, r) * t;
}

Geodesic geodesic_through(const Point& p, const Point& q) {
  const double dx = q.x() - p.x();
  const double scale = std::max({std::abs(p.x()), std::abs(q.x()), p.y(), q.y()});
  if (std::abs(dx) <= 1e-15 * scale) {
    if (q.y() == p.y()) throw Error(Errc::InvalidArgument, "geodesic through a single point");
    const IdealPoint foot(0.5 * (p.x() + q.x()));
    return q.y() > p.y() ? Geodesic(foot, IdealPoint::infinity()) : Geodesic(IdealPoint::infinity(), foot);
  }
  const double np = p.x() * p.x() + p.y() * p.y();
  const double nq = q.x() * q.x() + q.y() * q.y();
  const double c = (nq - np) / (2.0 * dx);
  const double r = std::hypot(p.x() - c, p.y());
  // Endpoints c -+ r; recover the small one from the product c^2 - r^2 = 2 c p.x - |p|^2.
  const double big = c >= 0.0 ? c + r : c - r;
  const double small = (2.0 * c * p.x() - np) / big;
  const double lo = std::min(big, small);
  const double hi = std::max(big, small);
  return dx > 0.0 ? Geodesic(IdealPoint(lo), IdealPoint(hi)) : Geodesic(IdealPoint(hi), IdealPoint(lo));
}

Point point_along(const Segment& s, double t) {
  const Isometry frame = normalizing_frame(s.carrier, s.a);
  const double tb = std::abs(frame.apply(s.b.z()));
  const double y = tb >= 1.0 ? std::exp(t) : std::exp(-t);
  return frame.inverse()(Point(0.0, y));
}

Axis axis_of(const Isometry& m) {
  if (!m.is_hyperbolic()) {
    std::ostringstream os;
    os << "|trace| = " << std::abs(m.trace()) << " <= 2";
    throw Error(Errc::NotHyperbolic, os.str());
  }
  const double a = m.a(), b = m.b(), c = m.c(), d = m.d();
  const double length = 2.0 * std::acosh(0.5 * std::abs(m.trace()));
  if (c == 0.0) {
    const IdealPoint finite(b / (d - a));
    // z -> (a/d) z + b/d expands toward infinity when |a/d| > 1.
    if (std::abs(a / d) > 1.0) return {Geodesic(finite, IdealPoint::infinity()), length};
    return {Geodesic(IdealPoint::infinity(), finite), length};
  }
  // c z^2 + (d - a) z - b = 0, discriminant trace^2 - 4.
  const double bq = d - a;
  const double sq = std::sqrt(m.trace() * m.trace() - 4.0);
  const double q = -0.5 * (bq + std::copysign(sq, bq));
  const double z1 = q / c;
  const double z2 = -b / q;
  const auto attracting = [&](double z) { return std::abs(c * z + d) > 1.0; };
  const auto ideal = [](double z) { return std::isfinite(z) ? IdealPoint(z) : IdealPoint::infinity(); };
  if (attracting(z1)) return {Geodesic(ideal(z2), ideal(z1)), length};
  return {Geodesic(ideal(z1), ideal(z2)), length};
}

Segment common_perpendicular(const Geodesic& g1, const Geodesic& g2) {
  Isometry frame = normalizing_frame(g1);
  IdealPoint x1 = frame(g2.u());
  IdealPoint x2 = frame(g2.v());
  const IdealPoint zero(0.0);
  for (const IdealPoint& x : {x1, x2}) {
    if (x.is_infinite() || x.approx_equal(zero, 1e-13) || x.approx_equal(IdealPoint::infinity(), 1e-13))
      throw Error(Errc::NotHyperparallel, "geodesics share an ideal endpoint");
  }
  if (x1.value() * x2.value() < 0.0) throw Error(Errc::NotHyperparallel, "geodesics intersect");
  if (x1.value() < 0.0) {
    // z -> -1/z keeps the imaginary axis and moves g2 to the positive side.
    frame = Isometry(0.0, -1.0, 1.0, 0.0) * frame;
    x1 = IdealPoint(-1.0 / x1.value());
    x2 = IdealPoint(-1.0 / x2.value());
  }
  const double lo = std::min(x1.value(), x2.value());
  const double hi = std::max(x1.value(), x2.value());
  const double rho = std::sqrt(lo * hi);
  const double c = 0.5 * (lo + hi);
  const double r = 0.5 * (hi - lo);
  const Isometry back = frame.inverse();
  const Point foot1 = back(Point(0.0, rho));
  const Point foot2 = back(Point(rho * rho / c, rho * r / c));
  const Geodesic carrier = back(Geodesic(IdealPoint(-rho), IdealPoint(rho)));
  return Segment(carrier, foot1, foot2);
}

Isometry translation_along(const Geodesic& line, double t) {
  if (!std::isfinite(t)) throw Error(Errc::InvalidArgument, "translation distance must be finite");
  if (t == 0.0) return Isometry::identity();
  const Isometry frame = normalizing_frame(line);
  const double s = std::exp(0.5 * t);
  return frame.inverse() * Isometry(s, 0.0, 0.0, 1.0 / s) * frame;
}

Point equidistant_project(const Geodesic& line, const Geodesic& g0, const Point& p) {
  const Isometry frame = normalizing_frame(line);
  const IdealPoint y1 = frame(g0.u());
  const IdealPoint y2 = frame(g0.v());
  if (y1.is_infinite() || y2.is_infinite())
    throw Error(Errc::NotPerpendicular, "target geodesic is not perpendicular to the line");
  const double scale = std::max(std::abs(y1.value()), std::abs(y2.value()));
  if (std::abs(y1.value() + y2.value()) > kIncidenceTolerance * scale)
    throw Error(Errc::NotPerpendicular, "target geodesic is not perpendicular to the line");
  const double rho = std::sqrt(std::abs(y1.value() * y2.value()));
  const double s = std::sqrt(rho);
  const Isometry normal = Isometry(1.0 / s, 0.0, 0.0, s) * frame;
  const Complex w = normal.apply(p.z());
  return normal.inverse()(Point(w / std::abs(w)));
}

Strip strip_around(const Segment& alpha, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(Errc::NonPositiveWidth, "strip width must be positive");
  const Point mid = alpha.midpoint();
  const Isometry back = normalizing_frame(alpha.carrier, mid).inverse();
  const Geodesic axis = back(Geodesic(IdealPoint(-1.0), IdealPoint(1.0)));
  return Strip(axis, mid, eps);
}

Point strip_collapse(const Strip& strip, const Point& p) {
  const Isometry& frame = strip.frame();
  const Complex w = frame.apply(p.z());
  const double r = std::abs(w);
  const double half = 0.5 * strip.width();
  Complex image;
  if (r <= std::exp(-half)) {
    return p;
  } else if (r >= std::exp(half)) {
    image = std::exp(-strip.width()) * w;
  } else {
    image = std::exp(-half) * w / r;
  }
  return frame.inverse()(Point(image));
}

Crossing crossing(const Strip& strip, const Segment& s, double tol) {
  const double la = strip.level(s.a);
  const double lb = strip.level(s.b);
  return classify(std::min(la, lb), std::max(la, lb), 0.5 * strip.width(), tol);
}

Crossing crossing(const Strip& strip, const Geodesic& g, double tol) {
  const double lu = ideal_level(strip.frame()(g.u()));
  const double lv = ideal_level(strip.frame()(g.v()));
  return classify(std::min(lu, lv), std::max(lu, lv), 0.5 * strip.width(), tol);
}

bool geodesics_intersect(const Geodesic& g1, const Geodesic& g2, double tol) {
  for (const IdealPoint& x : {g2.u(), g2.v()})
    if (x.approx_equal(g1.u(), tol) || x.approx_equal(g1.v(), tol)) return false;
  const double a = g1.u().angle();
  const double span = wrap_angle(g1.v().angle() - a);
  const auto inside = [&](const IdealPoint& x) { return wrap_angle(x.angle() - a) < span; };
  return inside(g2.u()) != inside(g2.v());
}

}  // namespace hypstrip
