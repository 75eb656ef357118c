#pragma once

// The deformation of the line onto the phase tropical line: a radial flow on
// the coamoeba that pushes arguments away from the triangle barycenters, a
// pair of affine collapses in (x, y), and the assembly over the three pieces
// by conjugation with the order-3 symmetry.

#include <cmath>
#include <optional>
#include <stdexcept>

#include "tropline/complex_line.hpp"
#include "tropline/torus_geometry.hpp"

namespace tropline {

/// Thrown when two overlapping branch definitions disagree beyond seam_tol.
/// This is a verification failure and is surfaced, never averaged away.
struct seam_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Per-point data for the radial coamoeba flow. The ray from `center`
/// through the argument pair hits the line psi = pi in `qprime`;
/// b = d(center, qprime). For Triangle points a is the distance from the
/// center to the Leg/Triangle seam curve along the ray; for Leg points a is
/// the distance to the argument pair itself. Always 0 < a <= b.
struct RadialFrame {
  PlanePoint center;
  PlanePoint qprime;
  double b = 0.0;
  double a = 0.0;
};

namespace detail {
inline void check_unit_time(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::domain_error("deformation time must lie in [0, 1]");
  }
}
}  // namespace detail

/// Radial frame of an argument pair in the closed H1 coamoeba, for one side.
/// The pair must differ from the center (the caller owns the fixed point).
/// The Triangle bracket is guaranteed: the seam residual is 3/8 at the center
/// and <= 0 on psi = pi; a failed bracket would contradict the uniqueness of
/// the radial crossing and is surfaced as a logic error.
inline RadialFrame radial_frame(Angle phi, Angle psi, Sub sub, Side side,
                                const IsotopyParams& params = {}) {
  const PlanePoint center = flow_center(side);
  const PlanePoint p{phi.radians(), psi.radians()};
  if (p.u == center.u && p.v == center.v) {
    throw degenerate_geometry_error("radial_frame: argument pair is the center");
  }
  RadialFrame frame;
  frame.center = center;
  frame.qprime = ray_hit_horizontal(center, p, kPi);
  frame.b = flat_distance(center, frame.qprime);
  if (sub == Sub::Leg) {
    frame.a = flat_distance(center, p);
    return frame;
  }
  // Rays toward (0, pi), (pi, pi) or (2*pi, pi) end on the seam curve itself;
  // the bracket degenerates and the crossing is the endpoint.
  if (std::fabs(wc_argument_residual(frame.qprime.u, frame.qprime.v, kLn2)) <
      1e-12) {
    frame.a = frame.b;
    return frame;
  }
  const PlanePoint d{frame.qprime.u - center.u, frame.qprime.v - center.v};
  const auto seam_along_ray = [&](double s) {
    return wc_argument_residual(center.u + s * d.u, center.v + s * d.v, kLn2);
  };
  double s_root = 0.0;
  try {
    s_root = bisect_root(seam_along_ray, 0.0, 1.0, params.root_tol);
  } catch (const bracket_error&) {
    throw std::logic_error(
        "radial_frame: no seam crossing on a radial segment; "
        "this contradicts the uniqueness of the radial intersection");
  }
  frame.a = s_root * frame.b;
  return frame;
}

/// Side-resolving overload; the lower side wins on the (pi, pi) tie, where
/// both frames agree anyway.
inline RadialFrame radial_frame(Angle phi, Angle psi, Sub sub,
                                const IsotopyParams& params = {}) {
  const SideSet sides = classify_side(phi, psi, params);
  return radial_frame(phi, psi, sub,
                      sides.lower ? Side::Lower : Side::Upper, params);
}

/// The radial flow on the closed H1 coamoeba at time t:
///   (phi, psi) -> center + (b/a)^t ((phi, psi) - center),
/// with the center as fixed point. t = 0 is the identity; at t = 1 Leg
/// points land on psi = pi. Images stay in the closed H1 coamoeba.
inline std::pair<Angle, Angle> coamoeba_flow(Angle phi, Angle psi, Sub sub,
                                             double t,
                                             const IsotopyParams& params = {}) {
  detail::check_unit_time(t);
  const SideSet sides = classify_side(phi, psi, params);
  const Side side = sides.lower ? Side::Lower : Side::Upper;
  const PlanePoint center = flow_center(side);
  const PlanePoint p{phi.radians(), psi.radians()};
  if (flat_distance(p, center) < 1e-13) {
    return {normalize_angle(center.u), normalize_angle(center.v)};
  }
  const RadialFrame frame = radial_frame(phi, psi, sub, side, params);
  const double scale = std::pow(frame.b / frame.a, t);
  return {normalize_angle(center.u + scale * (p.u - center.u)),
          normalize_angle(center.v + scale * (p.v - center.v))};
}

/// The deformation of the H1 piece at time t. Triangle branch:
///   (x, y, phi, psi) -> (x (1-t), y (1-t), flow_t(phi, psi)).
/// Leg branch:
///   (x, y, phi, psi) -> (x - t (y - ln 2)/2, y (1-t), flow_t(phi, psi)).
/// On the seam y = 2x + ln 2 both branches are evaluated and must agree
/// within seam_tol; the Triangle branch is returned. When `seam_gap` is
/// given, the largest branch disagreement seen is accumulated into it.
inline AmbientPoint phi1(const AmbientPoint& p, double t,
                         const IsotopyParams& params = {},
                         double* seam_gap = nullptr) {
  detail::check_unit_time(t);
  if (!classify_major(p, params).h1) {
    throw std::domain_error("phi1: point is not in the H1 piece");
  }
  const SubSet subs = classify_sub(p, params);
  std::optional<AmbientPoint> triangle_image;
  std::optional<AmbientPoint> leg_image;
  if (subs.triangle) {
    const auto [f, s] = coamoeba_flow(p.phi, p.psi, Sub::Triangle, t, params);
    triangle_image = AmbientPoint{p.x * (1.0 - t), p.y * (1.0 - t), f, s};
  }
  if (subs.leg) {
    const auto [f, s] = coamoeba_flow(p.phi, p.psi, Sub::Leg, t, params);
    leg_image = AmbientPoint{p.x - t * (p.y - kLn2) / 2.0, p.y * (1.0 - t), f, s};
  }
  if (triangle_image && leg_image) {
    const double gap = ambient_distance(*triangle_image, *leg_image);
    if (seam_gap) *seam_gap = std::max(*seam_gap, gap);
    if (gap > params.seam_tol) {
      throw seam_error("phi1: Triangle and Leg branches disagree on the seam");
    }
  }
  return triangle_image ? *triangle_image : *leg_image;
}

/// The assembled deformation of the whole line at time t: the H1 branch is
/// phi1, the H2 branch conjugates it with the order-3 symmetry one way, the
/// H3 branch the other way. Every applicable branch is evaluated; they must
/// agree within seam_tol on shared boundaries, and the first branch in the
/// order H1 < H2 < H3 is returned.
inline AmbientPoint psi_t(const AmbientPoint& p, double t,
                          const IsotopyParams& params = {},
                          double* seam_gap = nullptr) {
  detail::check_unit_time(t);
  const MajorSet majors = classify_major(p, params);
  std::optional<AmbientPoint> result;
  const auto consider = [&](const AmbientPoint& image) {
    if (result) {
      const double gap = ambient_distance(*result, image);
      if (seam_gap) *seam_gap = std::max(*seam_gap, gap);
      if (gap > params.seam_tol) {
        throw seam_error("psi_t: piece branches disagree on a shared boundary");
      }
    } else {
      result = image;
    }
  };
  if (majors.h1) {
    consider(phi1(p, t, params, seam_gap));
  }
  if (majors.h2) {
    consider(lambda_map(phi1(lambda_inv(p), t, params, seam_gap)));
  }
  if (majors.h3) {
    consider(lambda_inv(phi1(lambda_map(p), t, params, seam_gap)));
  }
  if (!result) {
    throw std::domain_error("psi_t: point carries no piece tag");
  }
  return *result;
}

}  // namespace tropline
