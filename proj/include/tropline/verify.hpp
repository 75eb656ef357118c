#pragma once

// The executable verification sweep: every numeric claim the library rests on
// is run over sample sets and reported as a named check with its worst
// residual, tolerance and sample count. Checks with no applicable samples
// fail rather than pass vacuously.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tropline/complex_line.hpp"
#include "tropline/isotopy.hpp"
#include "tropline/phase_tropical.hpp"
#include "tropline/sampling.hpp"

namespace tropline {

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::size_t sample_count = 0;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool overall = false;
};

struct SuiteOptions {
  IsotopyParams params;
  std::vector<double> t_grid{0.0, 0.25, 0.5, 0.75, 1.0};
  std::uint64_t seed = 0;
  std::size_t random_points = 10000;
  // Fault-injection knob: perturbs the order-3 map inside its own check, so
  // the harness can demonstrate that a broken symmetry is actually caught.
  double lambda_corruption = 0.0;
};

/// Largest mesh-edge stretch factor of the deformation at time t:
/// max over adjacency edges of image length / domain length.
inline double continuity_proxy(const SampleSet& samples, double t,
                               const IsotopyParams& params = {}) {
  if (samples.adjacency.empty()) {
    throw std::domain_error("continuity_proxy: sample set has no adjacency");
  }
  IsotopyParams relaxed = params;
  relaxed.seam_tol = std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const auto& [i, j] : samples.adjacency) {
    const double domain_len =
        ambient_distance(samples.points[i], samples.points[j]);
    if (domain_len == 0.0) continue;
    const double image_len = ambient_distance(psi_t(samples.points[i], t, relaxed),
                                              psi_t(samples.points[j], t, relaxed));
    worst = std::max(worst, image_len / domain_len);
  }
  return worst;
}

namespace detail {

class ReportBuilder {
 public:
  /// A residual-style check: passes when the worst residual is within
  /// tolerance and at least one sample applied.
  void residual(std::string name, double max_residual, double tolerance,
                std::size_t count) {
    CheckResult c;
    c.name = std::move(name);
    c.max_residual = max_residual;
    c.tolerance = tolerance;
    c.sample_count = count;
    c.pass = count > 0 && max_residual <= tolerance;
    checks_.push_back(std::move(c));
  }

  /// A counting check: the residual is the number of violations.
  void violations(std::string name, std::size_t violations, std::size_t count) {
    residual(std::move(name), static_cast<double>(violations), 0.0, count);
  }

  VerificationReport finish() {
    VerificationReport report;
    report.checks = std::move(checks_);
    report.overall = !report.checks.empty();
    for (const CheckResult& c : report.checks) report.overall &= c.pass;
    return report;
  }

 private:
  std::vector<CheckResult> checks_;
};

// Quantized spatial hash over (x, y, phi, psi) used by the injectivity
// check; angles near the wrap get duplicate keys so that circle-close pairs
// always share adjacent cells.
class ImageHash {
 public:
  explicit ImageHash(double cell) : cell_(cell) {}

  void insert(const AmbientPoint& p, std::size_t id) {
    for (const auto& key : keys(p)) {
      cells_[mix(key[0], key[1], key[2], key[3])].push_back(id);
    }
  }

  template <typename Visit>
  void for_near(const AmbientPoint& p, Visit&& visit) const {
    const auto base = keys(p);
    for (const auto& key : base) {
      for (long dx = -1; dx <= 1; ++dx) {
        for (long dy = -1; dy <= 1; ++dy) {
          for (long df = -1; df <= 1; ++df) {
            for (long ds = -1; ds <= 1; ++ds) {
              const auto it =
                  cells_.find(mix(key[0] + dx, key[1] + dy, key[2] + df,
                                  key[3] + ds));
              if (it == cells_.end()) continue;
              for (const std::size_t id : it->second) visit(id);
            }
          }
        }
      }
    }
  }

 private:
  using Key = std::array<long, 4>;

  static std::uint64_t mix(long a, long b, long c, long d) {
    std::uint64_t h = 1469598103934665603ull;
    for (const long v : {a, b, c, d}) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
    return h;
  }

  std::vector<Key> keys(const AmbientPoint& p) const {
    const long qx = static_cast<long>(std::floor(p.x / cell_));
    const long qy = static_cast<long>(std::floor(p.y / cell_));
    std::vector<Key> out;
    for (const double f : wrap_reps(p.phi)) {
      for (const double s : wrap_reps(p.psi)) {
        out.push_back(Key{qx, qy, static_cast<long>(std::floor(f / cell_)),
                          static_cast<long>(std::floor(s / cell_))});
      }
    }
    return out;
  }

  // A canonical angle within one cell of the wrap also appears shifted by
  // 2*pi, so neighbors across 0 ~ 2*pi meet in the hash.
  std::vector<double> wrap_reps(Angle a) const {
    std::vector<double> reps{a.radians()};
    if (a.radians() < cell_) reps.push_back(a.radians() + kTwoPi);
    if (a.radians() > kTwoPi - cell_) reps.push_back(a.radians() - kTwoPi);
    return reps;
  }

  double cell_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;
};

// Traced station of the argument image of the slice y = 2x + c.
struct WcStation {
  double x;
  double phi;
  double psi;
};

inline std::vector<WcStation> trace_wc(double c, int stations) {
  const WcBoundary bounds = wc_boundary_x(c);
  const double span = bounds.x_plus - bounds.x_minus;
  const double lo = bounds.x_minus + 0.02 * span;
  const double hi = bounds.x_plus - 0.02 * span;
  std::vector<WcStation> out;
  out.reserve(static_cast<std::size_t>(stations));
  for (int i = 0; i < stations; ++i) {
    const double x = lo + (hi - lo) * i / (stations - 1);
    const AmbientPoint p = amoeba_fiber(x, 2.0 * x + c).first;
    out.push_back(WcStation{x, p.phi.radians(), p.psi.radians()});
  }
  return out;
}

inline AmbientPoint displaced(const AmbientPoint& p, int coord, double delta) {
  AmbientPoint q = p;
  switch (coord) {
    case 0: q.x += delta; break;
    case 1: q.y += delta; break;
    case 2: q.phi = normalize_angle(q.phi.radians() + delta); break;
    default: q.psi = normalize_angle(q.psi.radians() + delta); break;
  }
  return q;
}

}  // namespace detail

inline VerificationReport run_suite(const std::vector<SampleSet>& sample_sets,
                                    const SuiteOptions& raw_opts = {}) {
  detail::ReportBuilder out;
  SuiteOptions opts = raw_opts;
  // The identity and endpoint claims live at t = 0 and t = 1; they are
  // checked no matter what grid the caller asked for.
  opts.t_grid.push_back(0.0);
  opts.t_grid.push_back(1.0);
  std::sort(opts.t_grid.begin(), opts.t_grid.end());
  opts.t_grid.erase(std::unique(opts.t_grid.begin(), opts.t_grid.end()),
                    opts.t_grid.end());
  const IsotopyParams& params = opts.params;
  IsotopyParams relaxed = params;  // branch gaps are measured, not thrown
  relaxed.seam_tol = std::numeric_limits<double>::infinity();

  // Flattened view of all samples.
  std::vector<const SampleSet*> sets;
  std::vector<AmbientPoint> points;
  std::vector<RegionTags> tags;
  for (const SampleSet& set : sample_sets) {
    sets.push_back(&set);
    points.insert(points.end(), set.points.begin(), set.points.end());
    tags.insert(tags.end(), set.tags.begin(), set.tags.end());
  }
  const std::size_t n = points.size();

  // --- Membership and parametrization identities -------------------------
  {
    double worst = 0.0;
    for (const AmbientPoint& p : points) worst = std::max(worst, line_residual(p));
    out.residual("sample_on_line", worst, 1e-9, n);
  }
  {
    double worst = 0.0;
    for (const AmbientPoint& p : points) {
      const auto [r1, r2] = eq1_residuals(p);
      worst = std::max({worst, r1, r2});
    }
    out.residual("sample_squared_modulus_identities", worst, 1e-11, n);
  }
  {
    double worst_line = 0.0;
    double worst_eq1 = 0.0;
    std::size_t count = 0;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      if (sets[s]->strategy != Strategy::CoamoebaGrid) continue;
      for (const AmbientPoint& p : sets[s]->points) {
        worst_line = std::max(worst_line, line_residual(p));
        const auto [r1, r2] = eq1_residuals(p);
        worst_eq1 = std::max({worst_eq1, r1, r2});
        ++count;
      }
    }
    out.residual("coamoeba_lift_line_residual", worst_line, 1e-12, count);
    out.residual("coamoeba_lift_identities", worst_eq1, 1e-11, count);
  }
  {
    const PlanePoint o = flow_center(Side::Lower);
    const AmbientPoint lifted =
        coamoeba_lift(normalize_angle(o.u), normalize_angle(o.v));
    out.residual("origin_fiber_lift",
                 std::max(std::fabs(lifted.x), std::fabs(lifted.y)), 1e-14, 1);
  }
  {
    double worst = 0.0;
    for (const AmbientPoint& p : points) {
      worst = std::max(worst, amoeba_violation(p.x, p.y));
    }
    out.residual("amoeba_membership", worst, 1e-12, n);
  }
  {
    std::size_t bad = 0;
    for (const AmbientPoint& p : points) {
      if (!coamoeba_contains(p.phi, p.psi)) ++bad;
    }
    out.violations("coamoeba_membership", bad, n);
  }
  {
    double worst = 0.0;
    std::size_t count = 0;
    for (const AmbientPoint& p : points) {
      const BoundaryCurve kind = amoeba_boundary_class(p.x, p.y, 1e-12);
      if (kind == BoundaryCurve::None) continue;
      const auto [f, s] = boundary_arguments(kind);
      worst = std::max({worst, circle_distance(p.phi, f),
                        circle_distance(p.psi, s)});
      ++count;
    }
    out.residual("boundary_forced_arguments", worst, 1e-9, count);
  }
  {
    // Re-lifting the arguments of an interior point must reproduce (x, y).
    // This cross-validates the chart, the fiber solve and the coamoeba lift
    // against each other; a self-generated chart ring and a small fiber grid
    // keep the check meaningful whatever sample sets were passed in. Points
    // too close to the argument degeneracies are excluded: there the
    // comparison is ill-conditioned, not the map.
    double worst = 0.0;
    std::size_t count = 0;
    const auto relift_gap = [&](const AmbientPoint& p) {
      if (amoeba_boundary_class(p.x, p.y, 1e-12) != BoundaryCurve::None) return;
      const double f = p.phi.radians();
      const double s = p.psi.radians();
      const double conditioning = std::min(
          {std::fabs(std::sin(f)), std::fabs(std::sin(s)), std::fabs(std::sin(s - f))});
      if (conditioning < 1e-3) return;
      const AmbientPoint relift = coamoeba_lift(p.phi, p.psi);
      worst = std::max({worst, std::fabs(relift.x - p.x), std::fabs(relift.y - p.y)});
      ++count;
    };
    for (const AmbientPoint& p : points) relift_gap(p);
    for (int i = 0; i < 20; ++i) {
      for (int j = 0; j < 20; ++j) {
        const double r = std::exp(-1.5 + 3.0 * i / 19.0);
        const double theta = kTwoPi * (j + 0.5) / 20.0;
        relift_gap(chart_from_complex(r * std::cos(theta), r * std::sin(theta)));
      }
    }
    for (const AmbientPoint& p : sample_line(Strategy::AmoebaLift, 25, opts.seed).points) {
      relift_gap(p);
    }
    out.residual("fiber_relift_roundtrip", worst, 1e-10, count);
  }

  // --- Planar and root-finding primitives ---------------------------------
  {
    std::mt19937_64 rng(opts.seed + 1);
    std::uniform_real_distribution<double> wide(-50.0, 50.0);
    std::uniform_real_distribution<double> box(0.0, kTwoPi);
    std::uniform_real_distribution<double> unit(0.1, 0.9);
    const std::size_t m = std::max<std::size_t>(opts.random_points / 10, 100);

    double idempotence = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const Angle a = normalize_angle(wide(rng));
      idempotence = std::max(
          idempotence, std::fabs(normalize_angle(a.radians()).radians() -
                                 a.radians()));
    }
    out.residual("angle_normalization_idempotent", idempotence, 0.0, m);

    double metric_violation = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const PlanePoint a{box(rng), box(rng)};
      const PlanePoint b{box(rng), box(rng)};
      const PlanePoint c{box(rng), box(rng)};
      metric_violation =
          std::max(metric_violation,
                   std::fabs(flat_distance(a, b) - flat_distance(b, a)));
      metric_violation = std::max(
          metric_violation,
          flat_distance(a, c) - flat_distance(a, b) - flat_distance(b, c));
    }
    out.residual("flat_metric_axioms", metric_violation, 1e-12, m);

    double ray_residual = 0.0;
    std::size_t rays = 0;
    while (rays < m) {
      const PlanePoint c{box(rng), box(rng)};
      const PlanePoint p{box(rng), box(rng)};
      const double level = box(rng);
      if (p.v == c.v || (level - c.v) / (p.v - c.v) < 0.0) continue;
      const PlanePoint q = ray_hit_horizontal(c, p, level);
      const double cross = (p.u - c.u) * (q.v - c.v) - (p.v - c.v) * (q.u - c.u);
      ray_residual = std::max(ray_residual, std::fabs(q.v - level));
      ray_residual = std::max(
          ray_residual,
          std::fabs(cross) / (1.0 + std::fabs(q.u) + std::fabs(q.v)));
      ++rays;
    }
    out.residual("ray_intersection_collinear", ray_residual, 1e-12, rays);

    double bisect_err = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double target = unit(rng);
      const double tol = 1e-11;
      const double root = bisect_root(
          [&](double s) { return std::expm1(s - target); }, 0.0, 1.0, tol);
      bisect_err = std::max(bisect_err, std::fabs(root - target) / tol);
    }
    out.residual("bisection_error_within_tolerance", bisect_err, 1.0, m);
  }

  // --- The order-3 symmetry ----------------------------------------------
  {
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    const auto lambda_maybe_corrupted = [&](const AmbientPoint& p) {
      AmbientPoint q = lambda_map(p);
      if (opts.lambda_corruption != 0.0) {
        // A constant shift would cancel over the three-cycle (the map's
        // linear part satisfies M^2 + M + I = 0), so warp nonlinearly.
        q.phi = normalize_angle(
            q.phi.radians() +
            opts.lambda_corruption * (1.1 + std::sin(3.0 * q.phi.radians())));
      }
      return q;
    };
    double worst_order = 0.0;
    double worst_inverse = 0.0;
    for (std::size_t i = 0; i < opts.random_points; ++i) {
      const AmbientPoint p{coord(rng), coord(rng), normalize_angle(angle(rng)),
                           normalize_angle(angle(rng))};
      const AmbientPoint cubed =
          lambda_maybe_corrupted(lambda_maybe_corrupted(lambda_maybe_corrupted(p)));
      worst_order = std::max(worst_order, ambient_distance(cubed, p));
      worst_inverse =
          std::max(worst_inverse, ambient_distance(lambda_inv(lambda_map(p)), p));
    }
    out.residual("lambda_order_three", worst_order, 1e-12, opts.random_points);
    out.residual("lambda_inverse_roundtrip", worst_inverse, 1e-12,
                 opts.random_points);
  }
  {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const MajorSet mapped = classify_major(lambda_map(points[i]), params);
      if (!(mapped == cycle_majors(tags[i].major))) ++bad;
    }
    out.violations("lambda_cycles_pieces", bad, n);
  }

  // --- Phase tropical strata ----------------------------------------------
  {
    std::vector<AmbientPoint> strata;      // on-stratum witnesses
    std::vector<AmbientPoint> displaced;   // pushed off by 0.2 in one coordinate
    const Angle pi = normalize_angle(kPi);
    for (int i = 0; i < 6; ++i) {
      const double x = -5.0 + 4.5 * i / 5.0;  // stays <= -0.5
      for (int j = 0; j < 8; ++j) {
        const Angle free = normalize_angle(kTwoPi * (j + 0.5) / 8.0);
        strata.push_back(AmbientPoint{x, 0.0, free, pi});
        strata.push_back(AmbientPoint{0.0, x, pi, free});
        const double s = -x;  // >= 0.5
        strata.push_back(AmbientPoint{s, s, free,
                                      normalize_angle(free.radians() + kPi)});
        displaced.push_back(detail::displaced(strata[strata.size() - 3], 1, 0.2));
        displaced.push_back(detail::displaced(strata[strata.size() - 3], 3, 0.2));
        displaced.push_back(detail::displaced(strata[strata.size() - 2], 0, -0.2));
        displaced.push_back(detail::displaced(strata[strata.size() - 2], 2, 0.2));
        displaced.push_back(detail::displaced(strata[strata.size() - 1], 0, 0.2));
        displaced.push_back(detail::displaced(strata[strata.size() - 1], 3, -0.2));
      }
    }
    // Vertex fiber: barycentric grid over both closed coamoeba triangles.
    std::vector<AmbientPoint> vertex_interior;
    for (const Side side : {Side::Lower, Side::Upper}) {
      const Triangle2 tri = closed_coamoeba_triangle(side);
      const int m = 7;
      for (int i = 0; i <= m; ++i) {
        for (int j = 0; j + i <= m; ++j) {
          const double a = double(i) / m;
          const double b = double(j) / m;
          const double c = 1.0 - a - b;
          const double f = a * tri.a.u + b * tri.b.u + c * tri.c.u;
          const double s = a * tri.a.v + b * tri.b.v + c * tri.c.v;
          const AmbientPoint p{0.0, 0.0, normalize_angle(f), normalize_angle(s)};
          strata.push_back(p);
          // Displacements in (x, y) leave the set only when the arguments are
          // away from the pinned-argument fibers of the three legs.
          const double edge_margin =
              std::min({circle_distance(p.psi, pi), circle_distance(p.phi, pi),
                        circle_distance(normalize_angle(s - f), pi)});
          if (edge_margin > 0.3) {
            displaced.push_back(detail::displaced(p, 0, -0.2));
            displaced.push_back(detail::displaced(p, 1, 0.2));
          }
          vertex_interior.push_back(p);
        }
      }
    }
    double worst_on = 0.0;
    for (const AmbientPoint& p : strata) {
      worst_on = std::max(worst_on, htrop_distance(p).distance);
    }
    out.residual("htrop_zero_on_strata", worst_on, 1e-12, strata.size());

    std::size_t bad = 0;
    for (const AmbientPoint& p : displaced) {
      if (!(htrop_distance(p).distance > 0.1)) ++bad;
    }
    out.violations("htrop_separates_displaced_points", bad, displaced.size());

    // Identified torus vertices: (pi, 2*pi) ~ (pi, 0) and (2*pi, pi) ~ (0, pi).
    const AmbientPoint id_witnesses[4] = {
        {0.0, 0.0, pi, normalize_angle(0.0)},
        {0.0, 0.0, normalize_angle(0.0), pi},
        {0.0, 0.0, pi, normalize_angle(kTwoPi - 1e-13)},
        {0.0, 0.0, normalize_angle(kTwoPi - 1e-13), pi}};
    double worst_id = 0.0;
    for (const AmbientPoint& p : id_witnesses) {
      worst_id = std::max(worst_id, htrop_distance(p).distance);
    }
    out.residual("htrop_vertex_torus_identifications", worst_id, 1e-12, 4);

    std::size_t cycle_bad = 0;
    for (const AmbientPoint& p : strata) {
      const TropSubdivision before = htrop_subdivision(p, 1e-8);
      const TropSubdivision after = htrop_subdivision(lambda_map(p), 1e-8);
      if (!(after == cycle_trop(before))) ++cycle_bad;
    }
    out.violations("lambda_cycles_trop_pieces", cycle_bad, strata.size());
  }

  // --- Seam curve and slice analytics -------------------------------------
  {
    double worst_on = 0.0;
    std::size_t on_count = 0;
    std::size_t off_bad = 0;
    std::size_t off_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const AmbientPoint& p = points[i];
      const double seam = p.y - 2.0 * p.x - kLn2;
      const double g = gamma1_residual(p.phi, p.psi);
      if (std::fabs(seam) <= 1e-10) {
        worst_on = std::max(worst_on, std::fabs(g));
        ++on_count;
        continue;
      }
      if (!tags[i].major.h1) continue;
      const double f = p.phi.radians();
      const double s = p.psi.radians();
      const double size = std::sin(f) * std::sin(s - f);
      if (std::fabs(seam) >= 1e-4 && size >= 1e-3) {
        ++off_count;
        if (std::fabs(g) <= 1e-9) ++off_bad;
      }
    }
    out.residual("seam_curve_argument_residual_zero", worst_on, 1e-9, on_count);
    out.violations("seam_curve_argument_residual_nonzero_off_seam", off_bad,
                   off_count);
  }
  {
    const double cs[4] = {kLn2, 1.0, 2.0, 5.0};
    double worst_defining = 0.0;
    double worst_bisect = 0.0;
    for (const double c : cs) {
      const WcBoundary b = wc_boundary_x(c);
      worst_defining = std::max(
          worst_defining,
          std::fabs(std::exp(2.0 * b.x_plus + c) - std::exp(b.x_plus) - 1.0));
      worst_defining = std::max(
          worst_defining,
          std::fabs(std::exp(2.0 * b.x_minus + c) + std::exp(b.x_minus) - 1.0));
      const double plus_ref = bisect_root(
          [&](double x) { return std::exp(2.0 * x + c) - std::exp(x) - 1.0; },
          -20.0, 5.0, 1e-13);
      const double minus_ref = bisect_root(
          [&](double x) { return std::exp(2.0 * x + c) + std::exp(x) - 1.0; },
          -20.0, 5.0, 1e-13);
      worst_bisect = std::max({worst_bisect, std::fabs(b.x_plus - plus_ref),
                               std::fabs(b.x_minus - minus_ref)});
    }
    out.residual("slice_boundary_closed_forms", worst_defining, 1e-12, 8);
    out.residual("slice_boundary_vs_bisection", worst_bisect, 1e-10, 8);
    const WcBoundary b2 = wc_boundary_x(kLn2);
    out.residual("slice_boundary_at_ln2",
                 std::max(std::fabs(b2.x_plus), std::fabs(b2.x_minus + kLn2)),
                 1e-14, 2);
  }
  {
    double worst_rel = 0.0;
    double worst_monotone = 0.0;
    std::size_t s11_bad = 0;
    double worst_endpoint = 0.0;
    std::size_t fd_count = 0;
    std::size_t s11_count = 0;
    for (const double c : {kLn2, std::log(8.0)}) {
      const auto curve = detail::trace_wc(c, 4001);
      // Central differences of the traced curve against the closed form,
      // relative, away from the slope's zero crossing.
      std::size_t kept = 0;
      for (std::size_t i = 40; i + 40 < curve.size() && kept < 50; i += 78) {
        const double formula = argwc_slope(curve[i].x, c);
        if (std::fabs(formula) < 1e-2) continue;
        const double fd = (curve[i + 1].psi - curve[i - 1].psi) /
                          (curve[i + 1].phi - curve[i - 1].phi);
        worst_rel = std::max(worst_rel, std::fabs(fd - formula) /
                                            std::fabs(formula));
        ++kept;
        ++fd_count;
      }
      // The slope strictly decreases along increasing phi (phi decreases with
      // x on the traced branch, so the formula increases with x).
      double prev = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < curve.size(); i += 40) {
        const double slope = argwc_slope(curve[i].x, c);
        if (prev != -std::numeric_limits<double>::infinity()) {
          worst_monotone = std::max(worst_monotone, prev - slope);
        }
        prev = slope;
        if (argwc_slope_derivative_sign(curve[i].x, c) <= 0) ++s11_bad;
        ++s11_count;
      }
      const WcBoundary b = wc_boundary_x(c);
      worst_endpoint = std::max(worst_endpoint, argwc_slope(b.x_plus, c) - 0.5);
      worst_endpoint =
          std::max(worst_endpoint, -1.0 - argwc_slope(b.x_minus, c));
    }
    out.residual("slice_slope_matches_finite_differences", worst_rel, 1e-4,
                 fd_count);
    out.residual("slice_slope_decreasing_in_phi", worst_monotone, 0.0,
                 s11_count);
    out.violations("slice_slope_derivative_positive", s11_bad, s11_count);
    out.residual("slice_slope_endpoint_bounds", std::max(worst_endpoint, 0.0),
                 1e-9, 4);
  }
  {
    // Along each radial segment from a center to psi = pi, the slice
    // argument residual changes sign exactly once.
    std::size_t bad = 0;
    std::size_t count = 0;
    for (const double c : {kLn2, std::log(4.0), std::log(8.0)}) {
      for (const Side side : {Side::Lower, Side::Upper}) {
        const PlanePoint center = flow_center(side);
        const double lo = side == Side::Lower ? 0.0 : kPi;
        for (int r = 1; r < 50; ++r) {
          const PlanePoint target{lo + kPi * r / 50.0, kPi};
          int crossings = 0;
          double prev = wc_argument_residual(center.u, center.v, c);
          const int fine = 2000;
          for (int k = 1; k <= fine; ++k) {
            const double s = double(k) / fine;
            const double value = wc_argument_residual(
                center.u + s * (target.u - center.u),
                center.v + s * (target.v - center.v), c);
            if ((value > 0.0) != (prev > 0.0)) ++crossings;
            prev = value;
          }
          if (crossings != 1) ++bad;
          ++count;
        }
      }
    }
    out.violations("radial_crossing_unique", bad, count);
  }

  // --- The deformation -----------------------------------------------------
  // Images at every grid time, measured seam gaps along the way.
  std::vector<std::vector<AmbientPoint>> images(opts.t_grid.size());
  double gamma_seam_gap = 0.0;
  double major_seam_gap = 0.0;
  for (std::size_t ti = 0; ti < opts.t_grid.size(); ++ti) {
    images[ti].reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      double gap = 0.0;
      images[ti].push_back(psi_t(points[i], opts.t_grid[ti], relaxed, &gap));
      const bool on_gamma_seam =
          std::fabs(points[i].y - 2.0 * points[i].x - kLn2) < 1e-10;
      if (on_gamma_seam) gamma_seam_gap = std::max(gamma_seam_gap, gap);
      if (tags[i].major.count() > 1) major_seam_gap = std::max(major_seam_gap, gap);
    }
  }
  {
    std::size_t t0_index = opts.t_grid.size();
    std::size_t t1_index = opts.t_grid.size();
    for (std::size_t ti = 0; ti < opts.t_grid.size(); ++ti) {
      if (opts.t_grid[ti] == 0.0) t0_index = ti;
      if (opts.t_grid[ti] == 1.0) t1_index = ti;
    }
    if (t0_index < opts.t_grid.size()) {
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        worst = std::max(worst, ambient_distance(images[t0_index][i], points[i]));
      }
      out.residual("deformation_identity_at_zero", worst, 1e-12, n);
    }
    if (t1_index < opts.t_grid.size()) {
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        worst = std::max(worst, htrop_distance(images[t1_index][i]).distance);
      }
      out.residual("deformation_lands_on_htrop", worst, 1e-8, n);

      std::size_t tag_bad = 0;
      for (std::size_t i = 0; i < n; ++i) {
        TropSubdivision sub;
        try {
          sub = htrop_subdivision(images[t1_index][i], 1e-7);
        } catch (const std::domain_error&) {
          ++tag_bad;
          continue;
        }
        const MajorSet m = tags[i].major;
        if ((m.h1 && !sub.h1trop) || (m.h2 && !sub.h2trop) ||
            (m.h3 && !sub.h3trop)) {
          ++tag_bad;
        }
      }
      out.violations("deformation_respects_pieces", tag_bad, n);
    }
  }
  {
    const std::size_t gamma_count = [&] {
      std::size_t c = 0;
      for (const AmbientPoint& p : points) {
        if (std::fabs(p.y - 2.0 * p.x - kLn2) < 1e-10) ++c;
      }
      return c;
    }();
    std::size_t multi_count = 0;
    for (const RegionTags& t : tags) {
      if (t.major.count() > 1) ++multi_count;
    }
    out.residual("seam_branches_agree", gamma_seam_gap, params.seam_tol,
                 gamma_count);
    out.residual("piece_branches_agree", major_seam_gap, params.seam_tol,
                 multi_count);
  }
  {
    // Boundary argument pairs sit on the seam curve and must not move under
    // the flow at any time.
    const Angle zero = normalize_angle(0.0);
    const Angle pi = normalize_angle(kPi);
    double worst = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const AmbientPoint rep = h1_representative(points[i], tags[i].major);
      const bool fixed_pair =
          (circle_distance(rep.phi, zero) < 1e-12 &&
           circle_distance(rep.psi, pi) < 1e-12) ||
          (circle_distance(rep.phi, pi) < 1e-12 &&
           circle_distance(rep.psi, pi) < 1e-12);
      if (!fixed_pair) continue;
      ++count;
      for (const double t : opts.t_grid) {
        const SubSet subs = tags[i].sub;
        if (subs.leg) {
          const auto [f, s] = coamoeba_flow(rep.phi, rep.psi, Sub::Leg, t, relaxed);
          worst = std::max({worst, circle_distance(f, rep.phi),
                            circle_distance(s, rep.psi)});
        }
        if (subs.triangle) {
          const auto [f, s] =
              coamoeba_flow(rep.phi, rep.psi, Sub::Triangle, t, relaxed);
          worst = std::max({worst, circle_distance(f, rep.phi),
                            circle_distance(s, rep.psi)});
        }
      }
    }
    out.residual("boundary_arguments_fixed_by_flow", worst, 1e-12, count);
  }
  {
    // Flow images stay inside the closed H1 coamoeba.
    double worst = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const AmbientPoint rep = h1_representative(points[i], tags[i].major);
      for (const double t : opts.t_grid) {
        const Sub sub = tags[i].sub.triangle ? Sub::Triangle : Sub::Leg;
        const auto [f, s] = coamoeba_flow(rep.phi, rep.psi, sub, t, relaxed);
        worst = std::max(worst, arg_closure_distance(Major::H1, f, s));
        ++count;
      }
    }
    out.residual("flow_stays_in_closed_coamoeba", worst, 1e-9, count);
  }
  {
    // Sample-scale injectivity: image-close pairs must be domain-close.
    constexpr double kImageEps = 1e-6;
    constexpr double kDomainDelta = 0.05;
    std::size_t bad = 0;
    for (std::size_t ti = 0; ti < opts.t_grid.size(); ++ti) {
      detail::ImageHash hash(kImageEps);
      for (std::size_t i = 0; i < n; ++i) hash.insert(images[ti][i], i);
      for (std::size_t i = 0; i < n; ++i) {
        hash.for_near(images[ti][i], [&](std::size_t j) {
          if (j <= i) return;
          if (ambient_distance(images[ti][i], images[ti][j]) > kImageEps) return;
          if (ambient_distance(points[i], points[j]) >= kDomainDelta) ++bad;
        });
      }
    }
    out.violations("deformation_injective_at_sample_scale", bad,
                   n * opts.t_grid.size());
  }
  {
    // Every slice y = 2x + c collapses at t = 1 to the single leg point
    // x = (ln 2 - c)/2, y = 0, psi = pi.
    double worst = 0.0;
    std::size_t count = 0;
    for (const double c : {kLn2, 2.0, 6.0}) {
      const double target_x = (kLn2 - c) / 2.0;
      for (const AmbientPoint& p : sample_wc(c, 200)) {
        const AmbientPoint image = psi_t(p, 1.0, relaxed);
        worst = std::max({worst, std::fabs(image.x - target_x),
                          std::fabs(image.y),
                          circle_distance(image.psi, normalize_angle(kPi))});
        ++count;
      }
    }
    out.residual("slice_collapse_at_endpoint", worst, 1e-8, count);
  }
  {
    double worst_ratio = 0.0;
    double identity_gap = 0.0;
    std::size_t edges = 0;
    bool saw_t0 = false;
    for (const SampleSet* set : sets) {
      if (set->adjacency.empty()) continue;
      edges += set->adjacency.size();
      for (const double t : opts.t_grid) {
        const double ratio = continuity_proxy(*set, t, params);
        worst_ratio = std::max(worst_ratio, ratio);
        if (t == 0.0) {
          saw_t0 = true;
          identity_gap = std::max(identity_gap, std::fabs(ratio - 1.0));
        }
      }
    }
    out.residual("edge_stretch_bounded", worst_ratio, 1e3, edges);
    if (saw_t0) {
      out.residual("edge_stretch_identity_at_zero", identity_gap, 1e-9, edges);
    }
  }

  return out.finish();
}

}  // namespace tropline
