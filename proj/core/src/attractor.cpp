#include "gdchfif/attractor.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>

#include "cell_table.hpp"
#include "gdchfif/rng.hpp"

namespace gdchfif {

namespace {

using detail::CellKey;

CellKey cell_of(const Point3& p, const SnapGrid& g) {
  return {static_cast<std::int64_t>(std::floor(p.x / g.cell_x)),
          static_cast<std::int64_t>(std::floor(p.y / g.cell_y)),
          static_cast<std::int64_t>(std::floor(p.z / g.cell_z))};
}

}  // namespace

SnapGrid snap_grid_for(const GDIFSystem& system, double fraction) {
  if (!(fraction >= 0.0) || !std::isfinite(fraction)) {
    throw Error(ErrorCode::InvalidArgument, "snap fraction must be >= 0");
  }
  if (fraction == 0.0) return {};
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::array<double, 3> lo{inf, inf, inf}, hi{-inf, -inf, -inf};
  for (const auto& ds : system.datasets()) {
    for (const Point3& p : ds.points()) {
      const std::array<double, 3> c{p.x, p.y, p.z};
      for (int k = 0; k < 3; ++k) {
        lo[k] = std::min(lo[k], c[k]);
        hi[k] = std::max(hi[k], c[k]);
      }
    }
  }
  auto cell = [&](int k) {
    const double range = hi[k] - lo[k];
    return fraction * (range > 0.0 ? range : 1.0);
  };
  return {cell(0), cell(1), cell(2)};
}

VertexSets knot_sets(const GDIFSystem& system) {
  VertexSets sets(system.vertex_count());
  for (std::size_t r = 0; r < sets.size(); ++r) {
    sets[r].vertex = r;
    const auto pts = system.dataset(r).points();
    sets[r].points.assign(pts.begin(), pts.end());
  }
  return sets;
}

VertexSets hutchinson_step(const GDIFSystem& system, const VertexSets& sets,
                           const SnapGrid& snap) {
  if (sets.size() != system.vertex_count()) {
    throw Error(ErrorCode::StructuralMismatch,
                "expected " + std::to_string(system.vertex_count()) +
                    " vertex sets, got " + std::to_string(sets.size()));
  }
  VertexSets out(sets.size());
  detail::CellTable seen;
  for (std::size_t u = 0; u < sets.size(); ++u) {
    out[u].vertex = u;
    auto& dst = out[u].points;
    std::size_t expected = 0;
    for (const AffineMap3& m : system.maps_of(u)) {
      expected += sets[m.source].points.size();
    }
    if (snap.enabled()) {
      const std::size_t guess = std::min(expected, 2 * sets[u].points.size());
      dst.reserve(guess);
      seen.reset(guess);
    } else {
      dst.reserve(expected);
    }
    for (const AffineMap3& m : system.maps_of(u)) {
      for (const Point3& p : sets[m.source].points) {
        const Point3 q = m.apply(p);
        bool fresh = true;
        if (snap.enabled()) seen.insert(cell_of(q, snap), fresh);
        if (fresh) dst.push_back(q);
      }
    }
    if (dst.empty()) {
      throw Error(ErrorCode::EmptySet,
                  "vertex " + std::to_string(u) + " produced an empty set");
    }
  }
  return out;
}

ConvergenceTrace make_trace(std::vector<double> distances) {
  ConvergenceTrace trace;
  trace.distances = std::move(distances);
  for (std::size_t i = 1; i < trace.distances.size(); ++i) {
    const double prev = trace.distances[i - 1];
    trace.ratios.push_back(prev > 0.0 ? trace.distances[i] / prev : 0.0);
  }
  const std::size_t k = std::min<std::size_t>(5, trace.ratios.size());
  if (k > 0) {
    double log_sum = 0.0;
    bool zero = false;
    for (std::size_t i = trace.ratios.size() - k; i < trace.ratios.size(); ++i) {
      if (trace.ratios[i] <= 0.0) {
        zero = true;
        break;
      }
      log_sum += std::log(trace.ratios[i]);
    }
    trace.tail_ratio = zero ? 0.0 : std::exp(log_sum / static_cast<double>(k));
  }
  return trace;
}

AttractorResult iterate_to_tolerance(const GDIFSystem& system,
                                     VertexSets initial,
                                     const IterateOptions& options) {
  if (!(options.tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  }
  const SnapGrid snap = snap_grid_for(system, options.snap_fraction);
  std::vector<double> distances;
  VertexSets current = std::move(initial);
  for (std::size_t it = 0; it < options.max_iters; ++it) {
    VertexSets next = hutchinson_step(system, current, snap);
    const double dist = hausdorff_distance(current, next);
    distances.push_back(dist);
    current = std::move(next);
    if (dist < options.tol) {
      return {std::move(current), make_trace(std::move(distances))};
    }
  }
  throw NoConvergenceError("attractor iteration did not reach tolerance " +
                               std::to_string(options.tol) + " in " +
                               std::to_string(options.max_iters) + " steps",
                           std::move(distances));
}

VertexSets chaos_game(const GDIFSystem& system, const ChaosOptions& options) {
  if (!(options.steps > options.burn_in)) {
    throw Error(ErrorCode::InvalidArgument, "steps must exceed burn_in");
  }
  const std::size_t v = system.vertex_count();
  Rng rng(options.seed);

  // Cumulative weights per vertex for the contraction-weighted mode.
  std::vector<std::vector<double>> cumulative(v);
  if (options.weighting == MapWeighting::ProportionalToContraction) {
    for (std::size_t u = 0; u < v; ++u) {
      double total = 0.0;
      for (const AffineMap3& m : system.maps_of(u)) {
        total += std::abs(m.a);
        cumulative[u].push_back(total);
      }
      for (double& c : cumulative[u]) c /= total;
    }
  }

  std::vector<Point3> current(v), next(v);
  VertexSets clouds(v);
  for (std::size_t u = 0; u < v; ++u) {
    current[u] = system.dataset(u).front();
    clouds[u].vertex = u;
    clouds[u].points.reserve(options.steps - options.burn_in);
  }
  for (std::uint64_t step = 0; step < options.steps; ++step) {
    for (std::size_t u = 0; u < v; ++u) {
      const auto maps = system.maps_of(u);
      std::size_t pick;
      if (options.weighting == MapWeighting::Uniform) {
        pick = static_cast<std::size_t>(uniform_below(rng, maps.size()));
      } else {
        const double r = uniform01(rng);
        const auto& cum = cumulative[u];
        pick = static_cast<std::size_t>(
            std::upper_bound(cum.begin(), cum.end(), r) - cum.begin());
        pick = std::min(pick, maps.size() - 1);
      }
      const AffineMap3& m = maps[pick];
      next[u] = m.apply(current[m.source]);
    }
    std::swap(current, next);
    if (step >= options.burn_in) {
      for (std::size_t u = 0; u < v; ++u) clouds[u].points.push_back(current[u]);
    }
  }
  return clouds;
}

ContractionCertificate contraction_certificate(const GDIFSystem& system) {
  ContractionCertificate c;
  for (const auto& row : system.maps()) {
    for (const AffineMap3& m : row) {
      c.max_a = std::max(c.max_a, std::abs(m.a));
      c.max_alpha = std::max(c.max_alpha, std::abs(m.alpha));
      c.max_beta = std::max(c.max_beta, std::abs(m.beta));
      c.max_gamma = std::max(c.max_gamma, std::abs(m.gamma));
    }
  }
  c.theta = c.max_beta == 0.0 ? 1.0 : 2.0 * c.max_beta / (1.0 - c.max_gamma);
  c.factor = std::max({c.max_alpha, 0.5 * (1.0 + c.max_gamma), c.max_a});
  return c;
}

std::vector<Point3> project_xy(std::span<const Point3> points) {
  std::vector<Point3> out;
  out.reserve(points.size());
  for (const Point3& p : points) out.push_back({p.x, p.y, 0.0});
  return out;
}

}  // namespace gdchfif
