#pragma once

// The complex line 1 + z1 + z2 = 0 in (C*)^2, seen in log/angle coordinates
// (x, y, phi, psi) = (ln|z1|, ln|z2|, arg z1, arg z2). Membership residuals,
// the amoeba and coamoeba, fiber parametrizations, the three-piece
// subdivision with its order-3 symmetry, and the analytic curves cut out by
// the lines y = 2x + c.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "tropline/torus_geometry.hpp"

namespace tropline {

inline constexpr double kLn2 = std::numbers::ln2;

/// A point of R^2 x T^2; angles are kept normalized to [0, 2*pi).
struct AmbientPoint {
  double x = 0.0;
  double y = 0.0;
  Angle phi;
  Angle psi;
};

/// Product metric: Euclidean in (x, y), geodesic on each circle factor.
inline double ambient_distance(const AmbientPoint& p, const AmbientPoint& q) {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  const double dphi = circle_distance(p.phi, q.phi);
  const double dpsi = circle_distance(p.psi, q.psi);
  return std::sqrt(dx * dx + dy * dy + dphi * dphi + dpsi * dpsi);
}

/// The fiberwise complex conjugate (x, y, 2*pi - phi, 2*pi - psi).
inline AmbientPoint conjugate_point(const AmbientPoint& p) {
  return AmbientPoint{p.x, p.y, normalize_angle(-p.phi.radians()),
                      normalize_angle(-p.psi.radians())};
}

/// |e^{x+i*phi} + e^{y+i*psi} + 1|; zero exactly on the line.
inline double line_residual(const AmbientPoint& p) {
  const std::complex<double> z1 = std::polar(std::exp(p.x), p.phi.radians());
  const std::complex<double> z2 = std::polar(std::exp(p.y), p.psi.radians());
  return std::abs(z1 + z2 + 1.0);
}

/// Residuals of the two squared-modulus identities
///   e^{2x} = 1 + 2 e^y cos(psi) + e^{2y}
///   e^{2y} = 1 + 2 e^x cos(phi) + e^{2x}
/// both of which hold on the line.
inline std::pair<double, double> eq1_residuals(const AmbientPoint& p) {
  const double e2x = std::exp(2.0 * p.x);
  const double e2y = std::exp(2.0 * p.y);
  const double ex = std::exp(p.x);
  const double ey = std::exp(p.y);
  const double r1 = e2x - 1.0 - 2.0 * ey * std::cos(p.psi.radians()) - e2y;
  const double r2 = e2y - 1.0 - 2.0 * ex * std::cos(p.phi.radians()) - e2x;
  return {std::fabs(r1), std::fabs(r2)};
}

/// Amoeba membership: e^x - e^y <= 1, e^y - e^x <= 1, e^x + e^y >= 1.
inline bool amoeba_contains(double x, double y) {
  const double ex = std::exp(x);
  const double ey = std::exp(y);
  return ex - ey <= 1.0 && ey - ex <= 1.0 && ex + ey >= 1.0;
}

/// Largest violation of the three amoeba inequalities; zero inside.
inline double amoeba_violation(double x, double y) {
  const double ex = std::exp(x);
  const double ey = std::exp(y);
  return std::max({ex - ey - 1.0, ey - ex - 1.0, 1.0 - ex - ey, 0.0});
}

enum class BoundaryCurve { XminusY, YminusX, XplusY, None };

/// Which amoeba boundary equation (x, y) satisfies within tol, if any.
/// On XminusY the fiber argument pair is forced to (pi, 0), on YminusX to
/// (0, pi), on XplusY to (pi, pi).
inline BoundaryCurve amoeba_boundary_class(double x, double y, double tol) {
  const double ex = std::exp(x);
  const double ey = std::exp(y);
  const double r_xy = std::fabs(ex - ey - 1.0);
  const double r_yx = std::fabs(ey - ex - 1.0);
  const double r_sum = std::fabs(ex + ey - 1.0);
  const double best = std::min({r_xy, r_yx, r_sum});
  if (best > tol) return BoundaryCurve::None;
  if (best == r_xy) return BoundaryCurve::XminusY;
  if (best == r_yx) return BoundaryCurve::YminusX;
  return BoundaryCurve::XplusY;
}

/// The forced argument pair on a boundary stratum.
inline std::pair<Angle, Angle> boundary_arguments(BoundaryCurve kind) {
  switch (kind) {
    case BoundaryCurve::XminusY:
      return {normalize_angle(kPi), normalize_angle(0.0)};
    case BoundaryCurve::YminusX:
      return {normalize_angle(0.0), normalize_angle(kPi)};
    case BoundaryCurve::XplusY:
      return {normalize_angle(kPi), normalize_angle(kPi)};
    case BoundaryCurve::None:
      break;
  }
  throw std::domain_error("boundary_arguments: not a boundary stratum");
}

namespace detail {
// Open-triangle tests for the two coamoeba triangles, with an optional
// safety margin in angle.
inline bool in_open_triangle_lower(double phi, double psi, double margin) {
  return phi > margin && phi < kPi - margin && psi > kPi + margin &&
         psi < phi + kPi - margin;
}
inline bool in_open_triangle_upper(double phi, double psi, double margin) {
  return phi > kPi + margin && phi < kTwoPi - margin &&
         psi > phi - kPi + margin && psi < kPi - margin;
}
}  // namespace detail

/// Coamoeba membership: the two open triangles plus the three isolated
/// argument pairs (0, pi), (pi, 0), (pi, pi). The isolated points are matched
/// within 1e-12 on each circle.
inline bool coamoeba_contains(Angle phi, Angle psi) {
  const double f = phi.radians();
  const double s = psi.radians();
  if (detail::in_open_triangle_lower(f, s, 0.0)) return true;
  if (detail::in_open_triangle_upper(f, s, 0.0)) return true;
  constexpr double kIsolatedTol = 1e-12;
  const Angle zero = normalize_angle(0.0);
  const Angle pi = normalize_angle(kPi);
  const auto near = [&](Angle a, Angle b) {
    return circle_distance(a, b) <= kIsolatedTol;
  };
  return (near(phi, zero) && near(psi, pi)) ||
         (near(phi, pi) && near(psi, zero)) || (near(phi, pi) && near(psi, pi));
}

/// Inverse of the argument projection on the open part of the line:
/// (phi, psi) -> (ln(-sin psi / sin(psi - phi)), ln(sin phi / sin(psi - phi))).
/// Defined only on the two open triangles; elsewhere the sines violate the
/// sign conditions and this throws a domain error.
inline AmbientPoint coamoeba_lift(Angle phi, Angle psi) {
  const double f = phi.radians();
  const double s = psi.radians();
  if (!detail::in_open_triangle_lower(f, s, 0.0) &&
      !detail::in_open_triangle_upper(f, s, 0.0)) {
    throw std::domain_error("coamoeba_lift: arguments outside the open coamoeba");
  }
  const double denom = std::sin(s - f);
  const double ex = -std::sin(s) / denom;
  const double ey = std::sin(f) / denom;
  return AmbientPoint{std::log(ex), std::log(ey), phi, psi};
}

/// Global chart z -> (z, -1 - z): the point of the line over z in
/// C* \ {-1}. The two excluded values are domain errors.
inline AmbientPoint chart_from_complex(double re, double im) {
  if (re == 0.0 && im == 0.0) {
    throw std::domain_error("chart_from_complex: z = 0 is not on (C*)^2");
  }
  if (re == -1.0 && im == 0.0) {
    throw std::domain_error("chart_from_complex: z = -1 makes z2 vanish");
  }
  const std::complex<double> z{re, im};
  const std::complex<double> w = -1.0 - z;
  return AmbientPoint{std::log(std::abs(z)), std::log(std::abs(w)),
                      normalize_angle(std::arg(z)), normalize_angle(std::arg(w))};
}

// ---------------------------------------------------------------------------
// Three-piece subdivision and the coamoeba side split.
// ---------------------------------------------------------------------------

enum class Major { H1, H2, H3 };
enum class Sub { Triangle, Leg };
enum class Side { Lower, Upper };

struct MajorSet {
  bool h1 = false;
  bool h2 = false;
  bool h3 = false;
  bool contains(Major m) const {
    switch (m) {
      case Major::H1: return h1;
      case Major::H2: return h2;
      case Major::H3: return h3;
    }
    return false;
  }
  int count() const { return int(h1) + int(h2) + int(h3); }
  bool operator==(const MajorSet&) const = default;
};

struct SubSet {
  bool triangle = false;
  bool leg = false;
  bool operator==(const SubSet&) const = default;
};

struct SideSet {
  bool lower = false;
  bool upper = false;
  bool operator==(const SideSet&) const = default;
};

/// The cyclic image of a major tag set under the order-3 symmetry.
inline MajorSet cycle_majors(const MajorSet& m) {
  return MajorSet{m.h3, m.h1, m.h2};
}

/// Tolerances shared by the classification and deformation routines.
struct IsotopyParams {
  double root_tol = 1e-10;        // bisection tolerance along radial segments
  double seam_tol = 1e-8;         // allowed disagreement of overlapping branches
  double membership_tol = 1e-9;   // |line residual| gate for "is on the line"
  double tie_tol = 1e-12;         // slack for closed-inequality boundary ties
};

/// The closed pieces containing P:
///   H1: x <= y, x <= 0;  H2: y <= x, y <= 0;  H3: x >= 0, y >= 0.
/// Ties within tie_tol keep every applicable tag. P must satisfy the line
/// residual gate, else a domain error.
inline MajorSet classify_major(const AmbientPoint& p,
                               const IsotopyParams& params = {}) {
  if (!(line_residual(p) < params.membership_tol)) {
    throw std::domain_error("classify_major: point is not on the line");
  }
  const double tol = params.tie_tol;
  MajorSet out;
  out.h1 = (p.x <= p.y + tol) && (p.x <= tol);
  out.h2 = (p.y <= p.x + tol) && (p.y <= tol);
  out.h3 = (p.x >= -tol) && (p.y >= -tol);
  return out;
}

/// Leg/Triangle split of the x <= y, x <= 0 piece by the line y = 2x + ln 2:
/// Leg above, Triangle below, both on the seam. Requires an H1 tag.
inline SubSet classify_sub(const AmbientPoint& p,
                           const IsotopyParams& params = {}) {
  if (!classify_major(p, params).h1) {
    throw std::domain_error("classify_sub: point is not in the H1 piece");
  }
  const double d = p.y - 2.0 * p.x - kLn2;
  SubSet out;
  out.leg = d >= -params.tie_tol;
  out.triangle = d <= params.tie_tol;
  return out;
}

/// Flow center of the lower (phi <= pi) and upper (phi >= pi) coamoeba side:
/// the barycenters (2*pi/3, 4*pi/3) and (4*pi/3, 2*pi/3) of the two closed
/// coamoeba triangles.
inline PlanePoint flow_center(Side side) {
  return side == Side::Lower ? PlanePoint{2.0 * kPi / 3.0, 4.0 * kPi / 3.0}
                             : PlanePoint{4.0 * kPi / 3.0, 2.0 * kPi / 3.0};
}

/// The closed coamoeba triangle of one side, drawn in the fundamental domain
/// with vertex representatives (0,pi),(pi,pi),(pi,2pi) and
/// (pi,0),(pi,pi),(2pi,pi).
inline Triangle2 closed_coamoeba_triangle(Side side) {
  if (side == Side::Lower) {
    return Triangle2{{0.0, kPi}, {kPi, kPi}, {kPi, kTwoPi}};
  }
  return Triangle2{{kPi, 0.0}, {kPi, kPi}, {kTwoPi, kPi}};
}

/// The two closed triangles forming the closure of the argument image of one
/// piece of the subdivision; each piece meets both coamoeba triangles.
inline std::array<Triangle2, 2> arg_closure_triangles(Major m) {
  const PlanePoint o = flow_center(Side::Lower);
  const PlanePoint op = flow_center(Side::Upper);
  switch (m) {
    case Major::H1:
      return {Triangle2{{0.0, kPi}, o, {kPi, kPi}},
              Triangle2{{kPi, kPi}, op, {kTwoPi, kPi}}};
    case Major::H2:
      return {Triangle2{o, {kPi, kPi}, {kPi, kTwoPi}},
              Triangle2{{kPi, 0.0}, op, {kPi, kPi}}};
    case Major::H3:
      return {Triangle2{{0.0, kPi}, o, {kPi, kTwoPi}},
              Triangle2{{kPi, 0.0}, {kTwoPi, kPi}, op}};
  }
  throw std::logic_error("arg_closure_triangles: bad major");
}

/// Distance (with torus identifications) from an argument pair to the closure
/// of the argument image of a piece.
inline double arg_closure_distance(Major m, Angle phi, Angle psi) {
  const PlanePoint p{phi.radians(), psi.radians()};
  const auto tris = arg_closure_triangles(m);
  return std::min(torus_triangle_distance(p, tris[0]),
                  torus_triangle_distance(p, tris[1]));
}

/// Coamoeba side of an argument pair in the closure of the H1 argument image:
/// Lower for phi < pi, Upper for phi > pi, both within tie_tol of pi (inside
/// that closure this happens only at (pi, pi)). Arguments outside the closure
/// are a domain error.
inline SideSet classify_side(Angle phi, Angle psi,
                             const IsotopyParams& params = {}) {
  if (arg_closure_distance(Major::H1, phi, psi) > 1e-9) {
    throw std::domain_error(
        "classify_side: arguments outside the closed H1 coamoeba");
  }
  const double f = phi.radians();
  SideSet out;
  out.lower = f <= kPi + params.tie_tol;
  out.upper = f >= kPi - params.tie_tol;
  return out;
}

// ---------------------------------------------------------------------------
// The order-3 automorphism.
// ---------------------------------------------------------------------------

/// (x, y, phi, psi) -> (-y, x - y, -psi + 2*pi, phi - psi + 2*pi). Maps the
/// line to itself and cycles the three pieces H1 -> H2 -> H3 -> H1.
inline AmbientPoint lambda_map(const AmbientPoint& p) {
  return AmbientPoint{-p.y, p.x - p.y,
                      normalize_angle(-p.psi.radians()),
                      normalize_angle(p.phi.radians() - p.psi.radians())};
}

/// Inverse of lambda_map: (x, y, phi, psi) -> (y - x, -x, psi - phi + 2*pi,
/// -phi + 2*pi). Equals lambda_map applied twice.
inline AmbientPoint lambda_inv(const AmbientPoint& p) {
  return AmbientPoint{p.y - p.x, -p.x,
                      normalize_angle(p.psi.radians() - p.phi.radians()),
                      normalize_angle(-p.phi.radians())};
}

// ---------------------------------------------------------------------------
// The curves cut out by y = 2x + c, c >= ln 2, and their argument images.
// ---------------------------------------------------------------------------

/// sin^2(psi) - k sin(phi) sin(psi - phi) with k = e^{-c}: vanishes on the
/// argument image of the slice y = 2x + c (away from the triangle corners).
inline double wc_argument_residual(double phi, double psi, double c) {
  const double k = std::exp(-c);
  return std::sin(psi) * std::sin(psi) -
         k * std::sin(phi) * std::sin(psi - phi);
}

/// The c = ln 2 case: vanishes on the argument image of the Leg/Triangle seam
/// plus its two endpoints (0, pi) and (pi, pi).
inline double gamma1_residual(Angle phi, Angle psi) {
  return wc_argument_residual(phi.radians(), psi.radians(), kLn2);
}

struct WcBoundary {
  double x_plus;   // intersection of y = 2x + c with e^y - e^x = 1
  double x_minus;  // intersection of y = 2x + c with e^y + e^x = 1
};

/// Closed forms for the two amoeba-boundary hits of the line y = 2x + c:
///   x_plus  = ln((1 + sqrt(1 + 4 e^c)) / (2 e^c)),
///   x_minus = ln((-1 + sqrt(1 + 4 e^c)) / (2 e^c)),
/// with x_minus < x_plus. Requires c >= ln 2 (below that the slice also meets
/// the third boundary curve and the slice geometry changes).
inline WcBoundary wc_boundary_x(double c) {
  if (!(c >= kLn2 - 1e-12)) {
    throw std::domain_error("wc_boundary_x: requires c >= ln 2");
  }
  const double ec = std::exp(c);
  const double root = std::sqrt(1.0 + 4.0 * ec);
  return WcBoundary{std::log((1.0 + root) / (2.0 * ec)),
                    std::log((-1.0 + root) / (2.0 * ec))};
}

/// dpsi/dphi along the argument image of y = 2x + c, written in the x
/// coordinate of the slice:
///   (2 e^{4x} - 2 k^2) / (3 e^{4x} - k^2 e^{2x} + k^2),  k = e^{-c}.
/// Valid for x in [x_minus, x_plus]. A vanishing denominator (never reached
/// on that range) is reported, not masked.
inline double argwc_slope(double x, double c) {
  const double k = std::exp(-c);
  const double e2x = std::exp(2.0 * x);
  const double e4x = e2x * e2x;
  const double num = 2.0 * e4x - 2.0 * k * k;
  const double den = 3.0 * e4x - k * k * e2x + k * k;
  if (den == 0.0 || !std::isfinite(1.0 / den)) {
    throw std::runtime_error("argwc_slope: singular denominator");
  }
  return num / den;
}

/// Sign of d/dx of the slope above. The derivative equals
///   4 k^2 e^{2x} (-e^{4x} + 8 e^{2x} - k^2) / (den)^2,
/// so the sign is that of the quadratic factor; it is positive exactly when
/// 4 - sqrt(16 - k^2) < e^{2x} < 4 + sqrt(16 - k^2).
inline int argwc_slope_derivative_sign(double x, double c) {
  const double k = std::exp(-c);
  const double q = std::exp(2.0 * x);
  const double factor = -q * q + 8.0 * q - k * k;
  return (factor > 0.0) - (factor < 0.0);
}

// ---------------------------------------------------------------------------
// Combined region tags.
// ---------------------------------------------------------------------------

/// Full classification of a point of the line. Sub and side describe the
/// point after pulling it into the H1 piece with the order-3 symmetry (H1
/// points are used as-is, H2 points through the inverse map, H3 through the
/// forward map; the first applicable major wins for seam points).
struct RegionTags {
  MajorSet major;
  SubSet sub;
  SideSet side;
  bool operator==(const RegionTags&) const = default;
};

/// The H1 representative used for sub/side classification.
inline AmbientPoint h1_representative(const AmbientPoint& p,
                                      const MajorSet& majors) {
  if (majors.h1) return p;
  if (majors.h2) return lambda_inv(p);
  return lambda_map(p);
}

inline RegionTags classify_point(const AmbientPoint& p,
                                 const IsotopyParams& params = {}) {
  RegionTags tags;
  tags.major = classify_major(p, params);
  const AmbientPoint rep = h1_representative(p, tags.major);
  tags.sub = classify_sub(rep, params);
  tags.side = classify_side(rep.phi, rep.psi, params);
  return tags;
}

}  // namespace tropline
