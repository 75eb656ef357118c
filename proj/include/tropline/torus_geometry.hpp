#pragma once

// Planar primitives on the angular fundamental domain [0, 2*pi]^2 plus a
// bracketed bisection kernel. Rays and distances are computed in the flat
// plane; the few torus-aware helpers at the bottom handle the 2*pi
// identifications where a membership test genuinely needs them.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace tropline {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Thrown when a bracketed solve is asked for an interval with no sign change.
struct bracket_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a ray construction cannot meet the requested line.
struct degenerate_geometry_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Angle;
inline Angle normalize_angle(double theta);

/// An angle on S^1, stored by its canonical representative in [0, 2*pi).
class Angle {
 public:
  constexpr Angle() = default;
  constexpr double radians() const { return value_; }

  friend Angle normalize_angle(double theta);

 private:
  constexpr explicit Angle(double normalized) : value_(normalized) {}
  double value_ = 0.0;
};

/// theta mod 2*pi in [0, 2*pi). Non-finite input is a domain error.
inline Angle normalize_angle(double theta) {
  if (!std::isfinite(theta)) {
    throw std::domain_error("normalize_angle: non-finite angle");
  }
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // Adding 2*pi to a tiny negative remainder can round up to exactly 2*pi.
  if (r >= kTwoPi) r = 0.0;
  return Angle{r};
}

/// Geodesic distance on S^1.
inline double circle_distance(Angle a, Angle b) {
  const double d = std::fabs(a.radians() - b.radians());
  return std::min(d, kTwoPi - d);
}

/// A point of the fundamental domain [0, 2*pi]^2 treated as planar.
struct PlanePoint {
  double u = 0.0;
  double v = 0.0;
};

/// Euclidean distance inside the fundamental domain (no wrap-around).
inline double flat_distance(const PlanePoint& p, const PlanePoint& q) {
  return std::hypot(p.u - q.u, p.v - q.v);
}

/// The unique point on the ray from `center` through `through` whose
/// v-coordinate equals `level`. The ray must actually reach the line:
/// a parallel ray, a ray pointing away from it, or `through == center`
/// is a degenerate_geometry_error.
inline PlanePoint ray_hit_horizontal(const PlanePoint& center,
                                     const PlanePoint& through,
                                     double level) {
  const double du = through.u - center.u;
  const double dv = through.v - center.v;
  if (du == 0.0 && dv == 0.0) {
    throw degenerate_geometry_error("ray_hit_horizontal: through == center");
  }
  if (dv == 0.0) {
    throw degenerate_geometry_error(
        "ray_hit_horizontal: ray parallel to the target line");
  }
  const double s = (level - center.v) / dv;
  if (s < 0.0) {
    throw degenerate_geometry_error(
        "ray_hit_horizontal: target line behind the ray origin");
  }
  return PlanePoint{center.u + s * du, level};
}

/// Plain bisection on [s_lo, s_hi]. Requires f(s_lo)*f(s_hi) <= 0; returns an
/// endpoint immediately when it is an exact root, otherwise the midpoint of a
/// bracket of width <= tol.
template <typename F>
double bisect_root(F&& f, double s_lo, double s_hi, double tol) {
  if (!std::isfinite(s_lo) || !std::isfinite(s_hi) || !(s_lo <= s_hi)) {
    throw std::domain_error("bisect_root: invalid interval");
  }
  if (!(tol > 0.0)) {
    throw std::domain_error("bisect_root: tolerance must be positive");
  }
  double f_lo = f(s_lo);
  double f_hi = f(s_hi);
  if (f_lo == 0.0) return s_lo;
  if (f_hi == 0.0) return s_hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw bracket_error("bisect_root: no sign change on bracket");
  }
  for (int iter = 0; iter < 200 && (s_hi - s_lo) > tol; ++iter) {
    const double mid = 0.5 * (s_lo + s_hi);
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      s_lo = mid;
      f_lo = f_mid;
    } else {
      s_hi = mid;
      f_hi = f_mid;
    }
  }
  return 0.5 * (s_lo + s_hi);
}

/// Distance from p to the closed segment [a, b].
inline double point_segment_distance(const PlanePoint& p, const PlanePoint& a,
                                     const PlanePoint& b) {
  const double abu = b.u - a.u;
  const double abv = b.v - a.v;
  const double len2 = abu * abu + abv * abv;
  if (len2 == 0.0) return flat_distance(p, a);
  double s = ((p.u - a.u) * abu + (p.v - a.v) * abv) / len2;
  s = std::clamp(s, 0.0, 1.0);
  return flat_distance(p, PlanePoint{a.u + s * abu, a.v + s * abv});
}

struct Triangle2 {
  PlanePoint a;
  PlanePoint b;
  PlanePoint c;
};

/// Distance from p to the closed triangle t; zero inside.
inline double point_triangle_distance(const PlanePoint& p,
                                      const Triangle2& t) {
  const auto cross = [](const PlanePoint& o, const PlanePoint& q,
                        const PlanePoint& r) {
    return (q.u - o.u) * (r.v - o.v) - (q.v - o.v) * (r.u - o.u);
  };
  const double d1 = cross(t.a, t.b, p);
  const double d2 = cross(t.b, t.c, p);
  const double d3 = cross(t.c, t.a, p);
  const bool has_neg = (d1 < 0.0) || (d2 < 0.0) || (d3 < 0.0);
  const bool has_pos = (d1 > 0.0) || (d2 > 0.0) || (d3 > 0.0);
  if (!(has_neg && has_pos)) return 0.0;
  return std::min({point_segment_distance(p, t.a, t.b),
                   point_segment_distance(p, t.b, t.c),
                   point_segment_distance(p, t.c, t.a)});
}

/// Triangle distance with the 2*pi identifications: the minimum over the nine
/// translates of p by (2*pi*i, 2*pi*j), i, j in {-1, 0, 1}.
inline double torus_triangle_distance(const PlanePoint& p,
                                      const Triangle2& t) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      const PlanePoint q{p.u + kTwoPi * i, p.v + kTwoPi * j};
      best = std::min(best, point_triangle_distance(q, t));
    }
  }
  return best;
}

}  // namespace tropline
