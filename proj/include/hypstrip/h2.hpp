#pragma once

// Upper half-plane primitives: points, ideal points, geodesics, isometries,
// epsilon-strips and the strip collapse.
//
// Every strip computation is done in a normalized frame where the strip axis
// is the imaginary axis (oriented 0 -> infinity) and the strip center is i.
// In that frame the geodesics perpendicular to the axis are the half-circles
// |z| = const, and the curves equidistant from the axis are the rays arg z =
// const, so the strip of width eps is {exp(-eps/2) <= |z| <= exp(eps/2)}.

#include <complex>
#include <optional>
#include <utility>

namespace hypstrip {

using Complex = std::complex<double>;

inline constexpr double kTolerance = 1e-9;
inline constexpr double kIncidenceTolerance = 1e-8;
inline constexpr double kDeterminantTolerance = 1e-12;

class Point {
 public:
  Point(double x, double y);
  explicit Point(Complex z) : Point(z.real(), z.imag()) {}

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  Complex z() const noexcept { return {x_, y_}; }

 private:
  double x_;
  double y_;
};

class IdealPoint {
 public:
  explicit IdealPoint(double value);
  static IdealPoint infinity() noexcept { return IdealPoint(); }

  bool is_infinite() const noexcept { return infinite_; }
  // Undefined for the point at infinity.
  double value() const noexcept { return value_; }

  // Position on the circle R u {inf} as an angle in (-pi, pi]; increasing
  // angle is the positive (counterclockwise) direction of the boundary.
  double angle() const noexcept;

  bool approx_equal(const IdealPoint& other, double tol = kIncidenceTolerance) const noexcept;

 private:
  IdealPoint() : value_(0.0), infinite_(true) {}
  double value_;
  bool infinite_;
};

// Oriented complete geodesic, stored by its endpoints (from u to v).
class Geodesic {
 public:
  Geodesic(IdealPoint u, IdealPoint v);

  const IdealPoint& u() const noexcept { return u_; }
  const IdealPoint& v() const noexcept { return v_; }

  bool is_vertical() const noexcept { return u_.is_infinite() || v_.is_infinite(); }
  // Half-circle data; only meaningful when !is_vertical().
  double center() const noexcept { return 0.5 * (u_.value() + v_.value()); }
  double radius() const noexcept;

  Geodesic reversed() const { return Geodesic(v_, u_); }
  // Same point set, either orientation.
  bool same_line(const Geodesic& other, double tol = kIncidenceTolerance) const noexcept;
  bool contains(const Point& p, double tol = kIncidenceTolerance) const noexcept;

 private:
  IdealPoint u_;
  IdealPoint v_;
};

struct Segment {
  Segment(Geodesic carrier, Point a, Point b);

  Geodesic carrier;
  Point a;
  Point b;

  double length() const noexcept;
  Point midpoint() const;
};

// Orientation-preserving isometry z -> (az+b)/(cz+d), ad - bc = 1, up to sign.
class Isometry {
 public:
  Isometry() = default;
  // Throws InvalidArgument unless |ad - bc - 1| <= 1e-12.
  Isometry(double a, double b, double c, double d);
  // Rescales by 1/sqrt(det); det must be positive.
  static Isometry normalized(double a, double b, double c, double d);
  static Isometry identity() noexcept { return {}; }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }
  double d() const noexcept { return d_; }

  double trace() const noexcept { return a_ + d_; }
  double determinant() const noexcept { return a_ * d_ - b_ * c_; }

  Isometry operator*(const Isometry& rhs) const noexcept;
  Isometry inverse() const noexcept { return raw(d_, -b_, -c_, a_); }

  Point operator()(const Point& p) const;
  IdealPoint operator()(const IdealPoint& x) const;
  Geodesic operator()(const Geodesic& g) const;
  Complex apply(Complex z) const noexcept { return (a_ * z + b_) / (c_ * z + d_); }

  bool is_hyperbolic() const noexcept;
  bool is_elliptic() const noexcept;
  bool is_parabolic() const noexcept;

  // Entrywise comparison modulo the sign ambiguity of PSL(2,R).
  bool approx_equal(const Isometry& other, double tol) const noexcept;

 private:
  static Isometry raw(double a, double b, double c, double d) noexcept {
    Isometry m;
    m.a_ = a;
    m.b_ = b;
    m.c_ = c;
    m.d_ = d;
    return m;
  }

  double a_ = 1.0;
  double b_ = 0.0;
  double c_ = 0.0;
  double d_ = 1.0;
};

struct Axis {
  Geodesic geodesic;           // oriented from repelling to attracting point
  double translation_length;   // 2 arccosh(|trace| / 2)
};

class Strip {
 public:
  Strip(Geodesic axis, Point center, double width);

  const Geodesic& axis() const noexcept { return axis_; }
  const Point& center() const noexcept { return center_; }
  double width() const noexcept { return width_; }

  // Maps the axis to the imaginary axis (u -> 0, v -> inf) and the center to i.
  const Isometry& frame() const noexcept { return frame_; }

  // Bounding geodesic at signed distance -width/2 (toward u) and +width/2.
  Geodesic near_boundary() const;
  Geodesic far_boundary() const;
  Segment core() const;

  // Signed log-radius of p in the normalized frame: negative on the u side,
  // |value| < width/2 inside the strip.
  double level(const Point& p) const;

 private:
  Geodesic axis_;
  Point center_;
  double width_;
  Isometry frame_;
};

enum class Crossing { Disjoint, Crosses, Tangent, Meets };

const char* crossing_name(Crossing c) noexcept;

double dist(const Point& p, const Point& q) noexcept;
Point apply(const Isometry& m, const Point& p);

// Frame sending g.u() -> 0 and g.v() -> inf; if `center` is given it is first
// projected to g and then sent to i.
Isometry normalizing_frame(const Geodesic& g, std::optional<Point> center = std::nullopt);

Geodesic geodesic_through(const Point& p, const Point& q);
// Point at hyperbolic distance t from s.a toward s.b (t may exceed the length).
Point point_along(const Segment& s, double t);

Axis axis_of(const Isometry& m);
Segment common_perpendicular(const Geodesic& g1, const Geodesic& g2);
Isometry translation_along(const Geodesic& line, double t);
Point equidistant_project(const Geodesic& line, const Geodesic& g0, const Point& p);
Strip strip_around(const Segment& alpha, double eps);
Point strip_collapse(const Strip& strip, const Point& p);

Crossing crossing(const Strip& strip, const Segment& s, double tol = kIncidenceTolerance);
Crossing crossing(const Strip& strip, const Geodesic& g, double tol = kIncidenceTolerance);

// True iff the two complete geodesics meet in H^2 (interleaved endpoints).
bool geodesics_intersect(const Geodesic& g1, const Geodesic& g2, double tol = kIncidenceTolerance);

}  // namespace hypstrip
