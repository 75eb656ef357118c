#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "tropline/isotopy.hpp"
#include "tropline/phase_tropical.hpp"
#include "tropline/sampling.hpp"

using namespace tropline;

namespace {
AmbientPoint make_point(double x, double y, double phi, double psi) {
  return AmbientPoint{x, y, normalize_angle(phi), normalize_angle(psi)};
}
const double kLnSqrt3Half = std::log(std::sqrt(3.0) / 2.0);
}  // namespace

TEST_CASE("radial_frame on a vertical leg ray") {
  const RadialFrame f = radial_frame(normalize_angle(2.0 * kPi / 3.0),
                                     normalize_angle(7.0 * kPi / 6.0), Sub::Leg);
  CHECK(f.center.u == Catch::Approx(2.0 * kPi / 3.0));
  CHECK(f.center.v == Catch::Approx(4.0 * kPi / 3.0));
  CHECK(f.qprime.u == Catch::Approx(2.0 * kPi / 3.0));
  CHECK(f.qprime.v == kPi);
  CHECK(f.b == Catch::Approx(kPi / 3.0).margin(1e-15));
  CHECK(f.a == Catch::Approx(kPi / 6.0).margin(1e-15));
}

TEST_CASE("radial_frame at a point already on psi = pi") {
  // (0, pi) lies on the seam-curve closure, so a' = b and the flow fixes it.
  const RadialFrame f =
      radial_frame(normalize_angle(0.0), normalize_angle(kPi), Sub::Leg);
  CHECK(f.qprime.u == Catch::Approx(0.0).margin(1e-12));
  CHECK(f.a == Catch::Approx(f.b));
  CHECK(f.b == Catch::Approx(kPi * std::sqrt(5.0) / 3.0).margin(1e-12));
}

TEST_CASE("radial_frame picks the upper center on the upper side") {
  const RadialFrame f = radial_frame(normalize_angle(4.0 * kPi / 3.0),
                                     normalize_angle(5.0 * kPi / 6.0), Sub::Leg);
  CHECK(f.center.u == Catch::Approx(4.0 * kPi / 3.0));
  CHECK(f.center.v == Catch::Approx(2.0 * kPi / 3.0));
  CHECK(f.qprime.v == kPi);
}

TEST_CASE("radial_frame triangle bisection agrees with the leg rule on the seam") {
  // Arguments of seam points satisfy the seam residual; the triangle-side
  // bisection must find them at the same radius as the leg rule.
  for (const AmbientPoint& p : sample_wc(kLn2, 50)) {
    const RadialFrame leg = radial_frame(p.phi, p.psi, Sub::Leg);
    const RadialFrame tri = radial_frame(p.phi, p.psi, Sub::Triangle);
    CHECK(std::fabs(leg.a - tri.a) < 1e-9);
  }
}

TEST_CASE("radial_frame rejects the center itself") {
  CHECK_THROWS_AS(radial_frame(normalize_angle(2.0 * kPi / 3.0),
                               normalize_angle(4.0 * kPi / 3.0), Sub::Triangle),
                  degenerate_geometry_error);
}

TEST_CASE("coamoeba_flow examples") {
  {
    const auto [f, s] = coamoeba_flow(normalize_angle(2.0 * kPi / 3.0),
                                      normalize_angle(7.0 * kPi / 6.0), Sub::Leg, 1.0);
    CHECK(circle_distance(f, normalize_angle(2.0 * kPi / 3.0)) < 1e-14);
    CHECK(circle_distance(s, normalize_angle(kPi)) < 1e-14);
  }
  {
    const auto [f, s] = coamoeba_flow(normalize_angle(1.1), normalize_angle(3.5),
                                      Sub::Triangle, 0.0);
    CHECK(circle_distance(f, normalize_angle(1.1)) < 1e-14);
    CHECK(circle_distance(s, normalize_angle(3.5)) < 1e-14);
  }
  {
    const auto [f, s] = coamoeba_flow(normalize_angle(2.0 * kPi / 3.0),
                                      normalize_angle(4.0 * kPi / 3.0), Sub::Triangle, 0.7);
    CHECK(circle_distance(f, normalize_angle(2.0 * kPi / 3.0)) == 0.0);
    CHECK(circle_distance(s, normalize_angle(4.0 * kPi / 3.0)) == 0.0);
  }
}

TEST_CASE("coamoeba_flow keeps the fixed argument pairs pinned") {
  for (const double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    for (const Sub sub : {Sub::Leg, Sub::Triangle}) {
      const auto [f0, s0] = coamoeba_flow(normalize_angle(0.0), normalize_angle(kPi), sub, t);
      CHECK(circle_distance(f0, normalize_angle(0.0)) < 1e-13);
      CHECK(circle_distance(s0, normalize_angle(kPi)) < 1e-13);
      const auto [f1, s1] = coamoeba_flow(normalize_angle(kPi), normalize_angle(kPi), sub, t);
      CHECK(circle_distance(f1, normalize_angle(kPi)) < 1e-13);
      CHECK(circle_distance(s1, normalize_angle(kPi)) < 1e-13);
    }
  }
}

TEST_CASE("the worked leg point maps to its closed-form endpoint") {
  const AmbientPoint p =
      make_point(-kLn2, kLnSqrt3Half, 2.0 * kPi / 3.0, 7.0 * kPi / 6.0);
  REQUIRE(line_residual(p) < 1e-15);

  // Two independent routes to the endpoint value of x:
  //   the leg formula x - (y - ln 2)/2 evaluated directly, and
  //   the slice collapse (ln 2 - c)/2 with c = y - 2x = ln(2*sqrt(3)).
  const double direct = p.x - (p.y - kLn2) / 2.0;
  const double c = p.y - 2.0 * p.x;
  const double via_slice = (kLn2 - c) / 2.0;
  const double closed_form = -0.25 * std::log(3.0);
  REQUIRE(std::fabs(direct - closed_form) < 1e-14);
  REQUIRE(std::fabs(via_slice - closed_form) < 1e-14);

  const AmbientPoint image = phi1(p, 1.0);
  CHECK(std::fabs(image.x - closed_form) < 1e-12);
  CHECK(std::fabs(image.y) < 1e-12);
  CHECK(circle_distance(image.phi, normalize_angle(2.0 * kPi / 3.0)) < 1e-12);
  CHECK(circle_distance(image.psi, normalize_angle(kPi)) < 1e-12);
}

TEST_CASE("phi1 is the identity at t = 0") {
  for (const AmbientPoint& p : sample_wc(1.0, 25)) {
    CHECK(ambient_distance(phi1(p, 0.0), p) < 1e-12);
  }
}

TEST_CASE("phi1 sends the triangle piece to the vertex fiber at t = 1") {
  const auto seam_pts = sample_line(Strategy::SeamCurves, 8, 0);
  std::size_t triangle_count = 0;
  for (std::size_t i = 0; i < seam_pts.points.size(); ++i) {
    const AmbientPoint& p = seam_pts.points[i];
    if (!seam_pts.tags[i].major.h1 || !seam_pts.tags[i].sub.triangle) continue;
    if (seam_pts.tags[i].major.count() > 1) continue;
    const AmbientPoint image = phi1(p, 1.0);
    CHECK(std::fabs(image.x) < 1e-12);
    CHECK(std::fabs(image.y) < 1e-12);
    CHECK(arg_closure_distance(Major::H1, image.phi, image.psi) < 1e-9);
    ++triangle_count;
  }
  CHECK(triangle_count > 0);
}

TEST_CASE("phi1 rejects points outside its piece") {
  const AmbientPoint h2_point = make_point(kLn2, 0.0, kPi, 0.0);
  CHECK_THROWS_AS(phi1(h2_point, 0.5), std::domain_error);
  CHECK_THROWS_AS(phi1(make_point(0.0, 0.0, 2.0 * kPi / 3.0, 4.0 * kPi / 3.0), 1.5),
                  std::domain_error);
}

TEST_CASE("psi_t fixes the origin fiber") {
  const AmbientPoint o = make_point(0.0, 0.0, 2.0 * kPi / 3.0, 4.0 * kPi / 3.0);
  const AmbientPoint op = make_point(0.0, 0.0, 4.0 * kPi / 3.0, 2.0 * kPi / 3.0);
  for (const double t : {0.0, 0.3, 0.5, 1.0}) {
    CHECK(ambient_distance(psi_t(o, t), o) < 1e-12);
    CHECK(ambient_distance(psi_t(op, t), op) < 1e-12);
  }
}

TEST_CASE("psi_t is the identity at t = 0 and lands on the tropical line at t = 1") {
  const auto grid = sample_line(Strategy::CoamoebaGrid, 12, 0);
  REQUIRE(grid.points.size() > 50);
  for (const AmbientPoint& p : grid.points) {
    CHECK(ambient_distance(psi_t(p, 0.0), p) < 1e-12);
    CHECK(htrop_distance(psi_t(p, 1.0)).distance < 1e-8);
  }
}

TEST_CASE("endpoint images reach every stratum kind") {
  const auto chart = sample_line(Strategy::ComplexChart, 16, 0);
  bool saw[4] = {false, false, false, false};
  for (const AmbientPoint& p : chart.points) {
    const TropProximity prox = htrop_distance(psi_t(p, 1.0));
    REQUIRE(prox.distance < 1e-8);
    saw[static_cast<int>(prox.nearest)] = true;
  }
  CHECK(saw[static_cast<int>(TropStratum::Leg1)]);
  CHECK(saw[static_cast<int>(TropStratum::Leg2)]);
  CHECK(saw[static_cast<int>(TropStratum::Leg3)]);
  CHECK(saw[static_cast<int>(TropStratum::Vertex)]);
}

TEST_CASE("psi_t maps the second piece onto the second tropical piece") {
  const auto grid = sample_line(Strategy::CoamoebaGrid, 10, 0);
  std::size_t h2_count = 0;
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    if (!grid.tags[i].major.h2 || grid.tags[i].major.count() > 1) continue;
    const AmbientPoint image = psi_t(grid.points[i], 1.0);
    CHECK(htrop_distance(image).distance < 1e-8);
    CHECK(htrop_subdivision(image, 1e-7).h2trop);
    ++h2_count;
  }
  CHECK(h2_count > 0);
}

TEST_CASE("branch agreement on the Leg/Triangle seam") {
  const IsotopyParams params;
  for (const AmbientPoint& p : sample_wc(kLn2, 40)) {
    REQUIRE(classify_sub(p) == SubSet{true, true});
    for (const double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      double gap = 0.0;
      (void)phi1(p, t, params, &gap);
      CHECK(gap < 1e-8);
    }
  }
}

TEST_CASE("branch agreement on piece seams") {
  const IsotopyParams params;
  const auto seams = sample_line(Strategy::SeamCurves, 20, 0);
  std::size_t multi = 0;
  for (std::size_t i = 0; i < seams.points.size(); ++i) {
    if (seams.tags[i].major.count() < 2) continue;
    for (const double t : {0.0, 0.5, 1.0}) {
      double gap = 0.0;
      (void)psi_t(seams.points[i], t, params, &gap);
      CHECK(gap < 1e-8);
    }
    ++multi;
  }
  CHECK(multi > 0);
}

TEST_CASE("both side branches agree at the shared argument pair") {
  // (pi, pi) belongs to both coamoeba sides; the flow fixes it from either
  // center.
  for (const Sub sub : {Sub::Leg, Sub::Triangle}) {
    const RadialFrame lower = radial_frame(normalize_angle(kPi), normalize_angle(kPi),
                                           sub, Side::Lower);
    const RadialFrame upper = radial_frame(normalize_angle(kPi), normalize_angle(kPi),
                                           sub, Side::Upper);
    CHECK(lower.a == Catch::Approx(lower.b));
    CHECK(upper.a == Catch::Approx(upper.b));
  }
}

TEST_CASE("a sloppy radial tolerance surfaces as a seam error") {
  // With the bisection tolerance ruined, the Triangle and Leg branches
  // disagree on the seam beyond seam_tol; that must throw, not average.
  IsotopyParams sloppy;
  sloppy.root_tol = 1e-2;
  bool threw = false;
  for (const AmbientPoint& p : sample_wc(kLn2, 40)) {
    try {
      (void)phi1(p, 1.0, sloppy);
    } catch (const seam_error&) {
      threw = true;
      break;
    }
  }
  CHECK(threw);
}

TEST_CASE("slice collapse at the endpoint") {
  for (const double c : {kLn2, 2.0, 6.0}) {
    const double target = (kLn2 - c) / 2.0;
    for (const AmbientPoint& p : sample_wc(c, 60)) {
      const AmbientPoint image = psi_t(p, 1.0);
      CHECK(std::fabs(image.x - target) < 1e-8);
      CHECK(std::fabs(image.y) < 1e-8);
      CHECK(circle_distance(image.psi, normalize_angle(kPi)) < 1e-8);
    }
  }
}

TEST_CASE("conjugation symmetry intertwines the two sides") {
  // The upper-side frame of the conjugate argument pair must mirror the
  // lower-side frame, and the flow must commute with conjugation. This pins
  // down the upper-side construction (center and target line) against the
  // line's own symmetry (phi, psi) -> (2*pi - phi, 2*pi - psi).
  const auto conj = [](Angle a) { return normalize_angle(-a.radians()); };
  for (const double c : {kLn2, 1.0, 3.0}) {
    for (const AmbientPoint& p : sample_wc(c, 25)) {
      if (!classify_side(p.phi, p.psi).lower) continue;
      for (const Sub sub : {Sub::Leg, Sub::Triangle}) {
        const RadialFrame lower = radial_frame(p.phi, p.psi, sub, Side::Lower);
        const RadialFrame upper =
            radial_frame(conj(p.phi), conj(p.psi), sub, Side::Upper);
        CHECK(std::fabs(lower.b - upper.b) < 1e-12);
        CHECK(std::fabs(lower.a - upper.a) < 1e-9);
        CHECK(std::fabs((kTwoPi - lower.qprime.u) - upper.qprime.u) < 1e-12);
        for (const double t : {0.3, 1.0}) {
          const auto [lf, ls] = coamoeba_flow(p.phi, p.psi, sub, t);
          const auto [uf, us] = coamoeba_flow(conj(p.phi), conj(p.psi), sub, t);
          CHECK(circle_distance(conj(lf), uf) < 1e-9);
          CHECK(circle_distance(conj(ls), us) < 1e-9);
        }
      }
    }
  }
}

TEST_CASE("flow images remain in the closed coamoeba of the piece") {
  const auto grid = sample_line(Strategy::CoamoebaGrid, 10, 0);
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    const AmbientPoint rep = h1_representative(grid.points[i], grid.tags[i].major);
    const Sub sub = grid.tags[i].sub.triangle ? Sub::Triangle : Sub::Leg;
    for (const double t : {0.25, 0.75, 1.0}) {
      const auto [f, s] = coamoeba_flow(rep.phi, rep.psi, sub, t);
      CHECK(arg_closure_distance(Major::H1, f, s) < 1e-9);
    }
  }
}
