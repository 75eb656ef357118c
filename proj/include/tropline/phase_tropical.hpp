#pragma once

// The phase tropical line as an explicit union of four strata in R^2 x T^2:
// circle fibers with one pinned argument over the three rays of the tropical
// line, and the whole closed coamoeba over the vertex.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tropline/complex_line.hpp"
#include "tropline/torus_geometry.hpp"

namespace tropline {

enum class TropStratum {
  Leg1,    // x <= 0, y = 0, psi = pi, phi free
  Leg2,    // x = 0, y <= 0, phi = pi, psi free
  Leg3,    // x = y >= 0, psi = phi + pi, phi free
  Vertex,  // x = y = 0, (phi, psi) in the closed coamoeba
};

struct TropProximity {
  double distance = 0.0;
  TropStratum nearest = TropStratum::Leg1;
};

namespace detail {

inline double leg1_distance(const AmbientPoint& p) {
  const double du = std::max(p.x, 0.0);
  const double dpsi = circle_distance(p.psi, normalize_angle(kPi));
  return std::sqrt(du * du + p.y * p.y + dpsi * dpsi);
}

inline double leg2_distance(const AmbientPoint& p) {
  const double dv = std::max(p.y, 0.0);
  const double dphi = circle_distance(p.phi, normalize_angle(kPi));
  return std::sqrt(p.x * p.x + dv * dv + dphi * dphi);
}

inline double leg3_distance(const AmbientPoint& p) {
  // Nearest point on the diagonal ray {(s, s) : s >= 0}.
  const double s = std::max(0.5 * (p.x + p.y), 0.0);
  const double dx = p.x - s;
  const double dy = p.y - s;
  // Angular part: distance to the closed geodesic {psi = phi + pi}. The
  // optimal fiber argument splits the offset evenly between the two circles.
  const double off = circle_distance(
      normalize_angle(p.psi.radians() - p.phi.radians()), normalize_angle(kPi));
  return std::sqrt(dx * dx + dy * dy + 0.5 * off * off);
}

inline double vertex_distance(const AmbientPoint& p) {
  const PlanePoint a{p.phi.radians(), p.psi.radians()};
  const double dang =
      std::min(torus_triangle_distance(a, closed_coamoeba_triangle(Side::Lower)),
               torus_triangle_distance(a, closed_coamoeba_triangle(Side::Upper)));
  return std::sqrt(p.x * p.x + p.y * p.y + dang * dang);
}

}  // namespace detail

/// Distance from P to the phase tropical line together with the nearest
/// stratum (first stratum in declaration order on ties). Zero exactly on the
/// phase tropical line.
inline TropProximity htrop_distance(const AmbientPoint& p) {
  const double d[4] = {detail::leg1_distance(p), detail::leg2_distance(p),
                       detail::leg3_distance(p), detail::vertex_distance(p)};
  TropProximity out{d[0], TropStratum::Leg1};
  if (d[1] < out.distance) out = {d[1], TropStratum::Leg2};
  if (d[2] < out.distance) out = {d[2], TropStratum::Leg3};
  if (d[3] < out.distance) out = {d[3], TropStratum::Vertex};
  return out;
}

/// Which pieces of the three-part subdivision of the phase tropical line
/// contain P (piece i sits over the i-th tropical ray, with arguments in the
/// closed argument image of the matching piece of the line). Overlaps happen
/// on shared boundaries. P must be on the phase tropical line within tol.
struct TropSubdivision {
  bool h1trop = false;
  bool h2trop = false;
  bool h3trop = false;
  bool operator==(const TropSubdivision&) const = default;
};

inline TropSubdivision cycle_trop(const TropSubdivision& t) {
  return TropSubdivision{t.h3trop, t.h1trop, t.h2trop};
}

inline TropSubdivision htrop_subdivision(const AmbientPoint& p,
                                         double tol = 1e-8) {
  if (htrop_distance(p).distance > tol) {
    throw std::domain_error(
        "htrop_subdivision: point is not on the phase tropical line");
  }
  TropSubdivision out;
  out.h1trop = std::fabs(p.y) <= tol && p.x <= tol &&
               arg_closure_distance(Major::H1, p.phi, p.psi) <= tol;
  out.h2trop = std::fabs(p.x) <= tol && p.y <= tol &&
               arg_closure_distance(Major::H2, p.phi, p.psi) <= tol;
  out.h3trop = std::fabs(p.x - p.y) <= tol && p.x >= -tol &&
               arg_closure_distance(Major::H3, p.phi, p.psi) <= tol;
  return out;
}

}  // namespace tropline
