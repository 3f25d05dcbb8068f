#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gdchfif/model.hpp"

namespace gdchfif {

struct PointSet3 {
  std::size_t vertex = 0;
  std::vector<Point3> points;
};

/// One set per vertex, indexed by vertex.
using VertexSets = std::vector<PointSet3>;

inline const double kDefaultSnapFraction = std::ldexp(1.0, -13);

/// Dedup cell sizes: `fraction` times the system's data range on each axis
/// (all vertices pooled; a zero range counts as 1). fraction == 0 disables
/// snapping and keeps every image point.
struct SnapGrid {
  double cell_x = 0.0;
  double cell_y = 0.0;
  double cell_z = 0.0;

  bool enabled() const noexcept { return cell_x > 0.0; }
};

SnapGrid snap_grid_for(const GDIFSystem& system,
                       double fraction = kDefaultSnapFraction);

/// Interpolation triples of every vertex.
VertexSets knot_sets(const GDIFSystem& system);

/// A^u <- union over u's subintervals n of w_n(A^{s(u,n)}), snapped and
/// deduplicated. Within a snap cell the first image in (map, point) order is
/// kept, unmoved.
VertexSets hutchinson_step(const GDIFSystem& system, const VertexSets& sets,
                           const SnapGrid& snap);

struct ConvergenceTrace {
  std::vector<double> distances;  // max over vertices, one per step
  std::vector<double> ratios;     // distances[i] / distances[i - 1]
  /// Geometric mean of the last (up to) five ratios; 0 when none exist.
  double tail_ratio = 0.0;
};

ConvergenceTrace make_trace(std::vector<double> distances);

struct IterateOptions {
  double tol = 1e-3;
  std::size_t max_iters = 40;
  double snap_fraction = kDefaultSnapFraction;
};

struct AttractorResult {
  VertexSets sets;
  ConvergenceTrace trace;
};

/// Applies hutchinson_step until the successive Hausdorff distance (max over
/// vertices) drops below tol. Throws NoConvergenceError carrying the
/// distances when max_iters steps do not get there.
AttractorResult iterate_to_tolerance(const GDIFSystem& system,
                                     VertexSets initial,
                                     const IterateOptions& options = {});

enum class MapWeighting { Uniform, ProportionalToContraction };

struct ChaosOptions {
  std::uint64_t steps = 100000;
  std::uint64_t seed = 1;
  std::uint64_t burn_in = 100;
  MapWeighting weighting = MapWeighting::Uniform;
};

/// Graph-directed random iteration. One current triple per vertex, starting
/// at its first knot; every step each vertex draws one of its maps and
/// applies it to the current triple of that map's source vertex. Steps with
/// index >= burn_in are collected, so each vertex gets steps - burn_in points.
VertexSets chaos_game(const GDIFSystem& system, const ChaosOptions& options);

/// Weighted-norm contraction bound. With theta = 2 max|beta| / (1 - max|gamma|)
/// (1 when every beta is zero), every map contracts the norm
/// |dx| + eps (|dy| + theta |dz|) by at most `factor` + O(eps), where
/// factor = max(max|alpha|, (1 + max|gamma|) / 2, max|a|).
struct ContractionCertificate {
  double max_a = 0.0;
  double max_alpha = 0.0;
  double max_beta = 0.0;
  double max_gamma = 0.0;
  double theta = 1.0;
  double factor = 0.0;
};

ContractionCertificate contraction_certificate(const GDIFSystem& system);

// Hausdorff distances under the Euclidean metric on R^3. Both sets must be
// nonempty (EmptySet otherwise). The accelerated routines use a sparse
// uniform grid and return exactly the brute-force value.

double directed_hausdorff(std::span<const Point3> from,
                          std::span<const Point3> to);
double hausdorff_distance(std::span<const Point3> a, std::span<const Point3> b);
double hausdorff_distance_brute(std::span<const Point3> a,
                                std::span<const Point3> b);

/// Max over vertices; the lists must have the same length.
double hausdorff_distance(const VertexSets& a, const VertexSets& b);

/// (x, y, z) -> (x, y, 0).
std::vector<Point3> project_xy(std::span<const Point3> points);

}  // namespace gdchfif
