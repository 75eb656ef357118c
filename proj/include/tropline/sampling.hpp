#pragma once

// Deterministic sample families on the line, with mesh adjacency where the
// construction is a grid or a polyline. Every produced point is gated on the
// line residual at construction time.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tropline/complex_line.hpp"

namespace tropline {

enum class Strategy { CoamoebaGrid, AmoebaLift, ComplexChart, SeamCurves };

/// Legs of the line extend to x or y = -infinity; samples stop here, where
/// e^x effects are far below every tolerance in use.
inline constexpr double kLegTruncation = -10.0;

struct SampleSet {
  Strategy strategy = Strategy::CoamoebaGrid;
  std::uint64_t seed = 0;
  std::vector<AmbientPoint> points;
  std::vector<RegionTags> tags;
  std::vector<std::pair<std::size_t, std::size_t>> adjacency;
};

namespace detail {

inline std::size_t append_sample(SampleSet& set, const AmbientPoint& p,
                                 const IsotopyParams& params) {
  if (!(line_residual(p) < 1e-9)) {
    throw std::logic_error("append_sample: constructed point is off the line");
  }
  set.points.push_back(p);
  set.tags.push_back(classify_point(p, params));
  return set.points.size() - 1;
}

inline void connect(SampleSet& set, std::size_t i, std::size_t j) {
  if (i != j) set.adjacency.emplace_back(i, j);
}

}  // namespace detail

/// The two fiber points of the line over an interior amoeba point, solved
/// from the squared-modulus identities; the first has phi in [0, pi], the
/// second is its conjugate.
inline std::pair<AmbientPoint, AmbientPoint> amoeba_fiber(double x, double y) {
  const double ex = std::exp(x);
  const double ey = std::exp(y);
  const double e2x = ex * ex;
  const double e2y = ey * ey;
  const double cpsi = std::clamp((e2x - 1.0 - e2y) / (2.0 * ey), -1.0, 1.0);
  const double cphi = std::clamp((e2y - 1.0 - e2x) / (2.0 * ex), -1.0, 1.0);
  // On the line, e^x sin(phi) + e^y sin(psi) = 0, so phi in (0, pi) forces
  // sin(psi) < 0.
  const AmbientPoint plus{x, y, normalize_angle(std::acos(cphi)),
                          normalize_angle(kTwoPi - std::acos(cpsi))};
  return {plus, conjugate_point(plus)};
}

/// Both fiber branches of the slice y = 2x + c, c >= ln 2, at n interior
/// stations of its amoeba segment.
inline std::vector<AmbientPoint> sample_wc(double c, int n) {
  if (n < 1) throw std::domain_error("sample_wc: n must be >= 1");
  const WcBoundary bounds = wc_boundary_x(c);
  const double inset = 1e-6 * (bounds.x_plus - bounds.x_minus);
  const double lo = bounds.x_minus + inset;
  const double hi = bounds.x_plus - inset;
  std::vector<AmbientPoint> out;
  out.reserve(2 * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * (i + 0.5) / n;
    const auto [plus, minus] = amoeba_fiber(x, 2.0 * x + c);
    out.push_back(plus);
    out.push_back(minus);
  }
  return out;
}

namespace detail {

inline void build_coamoeba_grid(SampleSet& set, int n,
                                const IsotopyParams& params) {
  constexpr double kMargin = 1e-6;
  // Near the triangle corners the lifted coordinates grow like ln(n) and the
  // squared-modulus identities lose absolute accuracy as e^{2 max(x,y)} eps;
  // nodes beyond these bounds cannot meet the identity tolerances in double
  // precision, so they are not retained.
  constexpr double kMaxLift = 4.0;
  struct Box {
    double u0, u1, v0, v1;
    bool lower;
  };
  const Box boxes[2] = {{0.0, kPi, kPi, kTwoPi, true},
                        {kPi, kTwoPi, 0.0, kPi, false}};
  for (const Box& box : boxes) {
    std::map<std::pair<int, int>, std::size_t> index;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double f = box.u0 + (box.u1 - box.u0) * (i + 0.5) / n;
        const double s = box.v0 + (box.v1 - box.v0) * (j + 0.5) / n;
        const bool inside = box.lower
                                ? in_open_triangle_lower(f, s, kMargin)
                                : in_open_triangle_upper(f, s, kMargin);
        if (!inside) continue;
        const AmbientPoint lifted =
            coamoeba_lift(normalize_angle(f), normalize_angle(s));
        if (std::max(lifted.x, lifted.y) > kMaxLift ||
            std::min(lifted.x, lifted.y) < kLegTruncation) {
          continue;
        }
        const std::size_t id = append_sample(set, lifted, params);
        index[{i, j}] = id;
        if (auto it = index.find({i - 1, j}); it != index.end()) {
          connect(set, it->second, id);
        }
        if (auto it = index.find({i, j - 1}); it != index.end()) {
          connect(set, it->second, id);
        }
      }
    }
  }
}

inline void build_amoeba_lift(SampleSet& set, int n,
                              const IsotopyParams& params) {
  constexpr double kMargin = 1e-6;
  const double lo = -8.0;
  const double hi = 2.0;
  std::map<std::pair<int, int>, std::size_t> plus_index;
  std::map<std::pair<int, int>, std::size_t> minus_index;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = lo + (hi - lo) * (i + 0.5) / n;
      const double y = lo + (hi - lo) * (j + 0.5) / n;
      const double ex = std::exp(x);
      const double ey = std::exp(y);
      const bool interior = (ex - ey <= 1.0 - kMargin) &&
                            (ey - ex <= 1.0 - kMargin) &&
                            (ex + ey >= 1.0 + kMargin);
      if (!interior) continue;
      const auto [plus, minus] = amoeba_fiber(x, y);
      const std::size_t id_plus = append_sample(set, plus, params);
      const std::size_t id_minus = append_sample(set, minus, params);
      plus_index[{i, j}] = id_plus;
      minus_index[{i, j}] = id_minus;
      for (auto* index : {&plus_index, &minus_index}) {
        const std::size_t id = index == &plus_index ? id_plus : id_minus;
        if (auto it = index->find({i - 1, j}); it != index->end()) {
          connect(set, it->second, id);
        }
        if (auto it = index->find({i, j - 1}); it != index->end()) {
          connect(set, it->second, id);
        }
      }
    }
  }
}

inline void build_complex_chart(SampleSet& set, int n,
                                const IsotopyParams& params) {
  const double log_span = 2.5;
  const double step = 2.0 * log_span / n;
  const int unit_circle_index = n / 2;  // |z| = 1 is always a grid level
  std::map<std::pair<int, int>, std::size_t> index;
  for (int i = 0; i < n; ++i) {
    const double r = std::exp((i - unit_circle_index) * step);
    for (int j = 0; j < n; ++j) {
      const double theta = kTwoPi * j / n;
      const double re = r * std::cos(theta);
      const double im = r * std::sin(theta);
      if (std::hypot(re + 1.0, im) < 1e-6) continue;  // z2 degenerates at -1
      const std::size_t id = append_sample(set, chart_from_complex(re, im), params);
      index[{i, j}] = id;
      if (auto it = index.find({i - 1, j}); it != index.end()) {
        connect(set, it->second, id);
      }
      if (auto it = index.find({i, j - 1}); it != index.end()) {
        connect(set, it->second, id);
      }
      if (j == n - 1) {  // the angular grid wraps
        if (auto it = index.find({i, 0}); it != index.end()) {
          connect(set, it->second, id);
        }
      }
    }
  }
}

// 1-D interior stations of [lo, hi] with a small relative inset.
inline std::vector<double> interior_stations(double lo, double hi, int n) {
  const double inset = 1e-6 * (hi - lo);
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    xs.push_back((lo + inset) + (hi - lo - 2.0 * inset) * (i + 0.5) / n);
  }
  return xs;
}

inline void append_fiber_polyline(SampleSet& set,
                                  const std::vector<double>& stations,
                                  double (*x_of_s)(double),
                                  double (*y_of_s)(double),
                                  const IsotopyParams& params) {
  std::size_t prev_plus = SIZE_MAX;
  std::size_t prev_minus = SIZE_MAX;
  for (const double s : stations) {
    const auto [plus, minus] = amoeba_fiber(x_of_s(s), y_of_s(s));
    const std::size_t id_plus = append_sample(set, plus, params);
    const std::size_t id_minus = append_sample(set, minus, params);
    if (prev_plus != SIZE_MAX) connect(set, prev_plus, id_plus);
    if (prev_minus != SIZE_MAX) connect(set, prev_minus, id_minus);
    prev_plus = id_plus;
    prev_minus = id_minus;
  }
}

inline void build_seam_curves(SampleSet& set, int n,
                              const IsotopyParams& params) {
  const auto self = [](double s) { return s; };
  // Leg/Triangle seam y = 2x + ln 2, x in (-ln 2, 0).
  append_fiber_polyline(set, interior_stations(-kLn2, 0.0, n), self,
                        [](double x) { return 2.0 * x + kLn2; }, params);
  // Piece seams: x = y on H1/H2, y = 0 on H2/H3, x = 0 on H3/H1.
  append_fiber_polyline(set, interior_stations(-kLn2, 0.0, n), self, self,
                        params);
  append_fiber_polyline(set, interior_stations(0.0, kLn2, n), self,
                        [](double) { return 0.0; }, params);
  append_fiber_polyline(set, interior_stations(0.0, kLn2, n),
                        [](double) { return 0.0; }, self, params);
  // The three boundary strata, with their forced argument pairs.
  const Angle zero = normalize_angle(0.0);
  const Angle pi = normalize_angle(kPi);
  const auto polyline = [&](auto&& make_point, double lo, double hi) {
    std::size_t prev = SIZE_MAX;
    for (int i = 0; i < n; ++i) {
      const double s = lo + (hi - lo) * (i + 0.5) / n;
      const std::size_t id = append_sample(set, make_point(s), params);
      if (prev != SIZE_MAX) connect(set, prev, id);
      prev = id;
    }
  };
  polyline(
      [&](double x) {
        return AmbientPoint{x, std::log1p(std::exp(x)), zero, pi};
      },
      kLegTruncation, 3.0);
  polyline(
      [&](double y) {
        return AmbientPoint{std::log1p(std::exp(y)), y, pi, zero};
      },
      kLegTruncation, 3.0);
  polyline(
      [&](double x) {
        return AmbientPoint{x, std::log1p(-std::exp(x)), pi, pi};
      },
      kLegTruncation, std::log1p(-std::exp(kLegTruncation)));
  // Distinguished points: the seam-curve corners and the fiber over the
  // origin (the two flow centers).
  append_sample(set, AmbientPoint{-kLn2, -kLn2, pi, pi}, params);
  append_sample(set, AmbientPoint{0.0, kLn2, zero, pi}, params);
  append_sample(set, AmbientPoint{kLn2, 0.0, pi, zero}, params);
  const PlanePoint o = flow_center(Side::Lower);
  const PlanePoint op = flow_center(Side::Upper);
  append_sample(set,
                AmbientPoint{0.0, 0.0, normalize_angle(o.u), normalize_angle(o.v)},
                params);
  append_sample(
      set, AmbientPoint{0.0, 0.0, normalize_angle(op.u), normalize_angle(op.v)},
      params);
}

}  // namespace detail

/// Build a sample family. n is the per-axis (grids) or per-curve (seams)
/// resolution. The construction is fully deterministic; the seed is recorded
/// for downstream randomized sweeps.
inline SampleSet sample_line(Strategy strategy, int n, std::uint64_t seed,
                             const IsotopyParams& params = {}) {
  if (n < 1) throw std::domain_error("sample_line: n must be >= 1");
  SampleSet set;
  set.strategy = strategy;
  set.seed = seed;
  switch (strategy) {
    case Strategy::CoamoebaGrid:
      detail::build_coamoeba_grid(set, n, params);
      break;
    case Strategy::AmoebaLift:
      detail::build_amoeba_lift(set, n, params);
      break;
    case Strategy::ComplexChart:
      detail::build_complex_chart(set, n, params);
      break;
    case Strategy::SeamCurves:
      detail::build_seam_curves(set, n, params);
      break;
  }
  return set;
}

}  // namespace tropline
