#pragma once

// Domain types for graph-directed hidden-variable fractal interpolation.
//
// Vertices are addressed by zero-based index everywhere in the library. The
// one-based labels used in problem documents are translated by the io layer;
// GeneralizedDataset keeps its label only for reporting.

#include <cstddef>
#include <span>
#include <vector>

#include "gdchfif/error.hpp"

namespace gdchfif {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3&, const Point3&) = default;
};

/// Interpolation data {(x_n, y_n, z_n)} of one vertex. Only constructible
/// through validate_dataset, so every instance has strictly increasing
/// abscissas, at least three points and finite coordinates.
class GeneralizedDataset {
 public:
  int vertex_id() const noexcept { return vertex_id_; }
  std::span<const Point3> points() const noexcept { return points_; }
  const Point3& point(std::size_t n) const { return points_.at(n); }
  const Point3& front() const noexcept { return points_.front(); }
  const Point3& back() const noexcept { return points_.back(); }

  /// Number of subintervals N (one less than the number of points).
  std::size_t subinterval_count() const noexcept { return points_.size() - 1; }
  double length() const noexcept { return back().x - front().x; }
  bool contains(double x) const noexcept {
    return x >= front().x && x <= back().x;
  }

  friend bool operator==(const GeneralizedDataset&,
                         const GeneralizedDataset&) = default;

 private:
  friend GeneralizedDataset validate_dataset(std::vector<Point3>, int);
  GeneralizedDataset(int vertex_id, std::vector<Point3> points)
      : vertex_id_(vertex_id), points_(std::move(points)) {}

  int vertex_id_ = 1;
  std::vector<Point3> points_;
};

/// Throws NonFiniteValue, TooFewPoints or NonIncreasingAbscissa (with the
/// offending index).
GeneralizedDataset validate_dataset(std::vector<Point3> points,
                                    int vertex_id = 1);

/// Directed-graph structure: `sources[r][n]` is the vertex whose whole
/// interval is mapped onto subinterval n (zero-based) of vertex r.
struct GraphSpec {
  std::size_t vertex_count = 0;
  std::vector<std::vector<std::size_t>> sources;

  friend bool operator==(const GraphSpec&, const GraphSpec&) = default;
};

/// Edge-count matrix: K[r][s] = number of subintervals of r sourced from s.
using EdgeCounts = std::vector<std::vector<std::size_t>>;

GraphSpec validate_graph(const GraphSpec& graph,
                         std::span<const GeneralizedDataset> datasets);
EdgeCounts edge_counts(const GraphSpec& graph);

/// Contiguous block layout: the first counts[r][0] subintervals of r come
/// from vertex 0, the next counts[r][1] from vertex 1, and so on.
GraphSpec contiguous_graph(const EdgeCounts& counts);

struct Scaling {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  friend bool operator==(const Scaling&, const Scaling&) = default;
};

/// Per target vertex, per subinterval.
using ScalingParams = std::vector<std::vector<Scaling>>;

/// Requires |alpha| < 1, |gamma| < 1, |beta| + |gamma| < 1 and one entry per
/// subinterval. Errors carry a `params[r].maps[n].field` path.
void validate_scaling(const Scaling& s);
ScalingParams validate_scaling(const ScalingParams& params,
                               const GraphSpec& graph);

ScalingParams uniform_scaling(const GraphSpec& graph, Scaling s);

struct HorizontalRatio {
  std::size_t vertex = 0;
  std::size_t subinterval = 0;  // one-based n
  std::size_t source = 0;
  double ratio = 0.0;
};

struct HorizontalReport {
  std::vector<HorizontalRatio> ratios;
  double max_ratio = 0.0;
  bool passed = true;
};

/// Ratio of each subinterval's length to the length of the interval mapped
/// onto it. With `all_pairs` every (subinterval, vertex) pair is checked,
/// not just the edges present in the graph.
HorizontalReport horizontal_ratios(std::span<const GeneralizedDataset> datasets,
                                   const GraphSpec& graph,
                                   bool all_pairs = false);

/// As horizontal_ratios, but throws HorizontalExpansion naming the first
/// offending (vertex, subinterval) when any ratio is >= 1.
HorizontalReport check_horizontal_contraction(
    std::span<const GeneralizedDataset> datasets, const GraphSpec& graph,
    bool all_pairs = false);

/// w(x, y, z) = (a x + b, c x + alpha y + beta z + d, e x + gamma z + f)
struct AffineMap3 {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0, f = 0.0;
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  std::size_t source = 0;
  std::size_t target = 0;
  std::size_t subinterval = 0;  // one-based n within the target vertex

  Point3 apply(const Point3& p) const noexcept {
    return {a * p.x + b, c * p.x + alpha * p.y + beta * p.z + d,
            e * p.x + gamma * p.z + f};
  }
  double preimage(double xi) const noexcept { return (xi - b) / a; }

  friend bool operator==(const AffineMap3&, const AffineMap3&) = default;
};

inline constexpr double kDefaultJoinUpTolerance = 1e-10;

/// Graph-directed system: datasets, graph and one map per (vertex,
/// subinterval), `maps[r][n]` mapping the source interval onto subinterval n.
class GDIFSystem {
 public:
  /// Checks structure and that the join-up residual is below `join_tol`.
  static GDIFSystem assemble(std::vector<GeneralizedDataset> datasets,
                             GraphSpec graph,
                             std::vector<std::vector<AffineMap3>> maps,
                             double join_tol = kDefaultJoinUpTolerance);

  /// Structure is checked, join-up is not. Used for fault injection and
  /// for reporting on hand-edited coefficients.
  static GDIFSystem assemble_unchecked(std::vector<GeneralizedDataset> datasets,
                                       GraphSpec graph,
                                       std::vector<std::vector<AffineMap3>> maps);

  std::size_t vertex_count() const noexcept { return datasets_.size(); }
  std::size_t map_count() const noexcept;
  const std::vector<GeneralizedDataset>& datasets() const noexcept {
    return datasets_;
  }
  const GeneralizedDataset& dataset(std::size_t r) const {
    return datasets_.at(r);
  }
  const GraphSpec& graph() const noexcept { return graph_; }
  const std::vector<std::vector<AffineMap3>>& maps() const noexcept {
    return maps_;
  }
  std::span<const AffineMap3> maps_of(std::size_t r) const {
    return maps_.at(r);
  }

  /// Largest absolute defect over all endpoint conditions of all maps.
  double join_up_residual() const;

 private:
  GDIFSystem(std::vector<GeneralizedDataset> datasets, GraphSpec graph,
             std::vector<std::vector<AffineMap3>> maps);

  std::vector<GeneralizedDataset> datasets_;
  GraphSpec graph_;
  std::vector<std::vector<AffineMap3>> maps_;
};

/// Max endpoint defect of one map against its source/target data.
double join_up_residual(const AffineMap3& map, const GeneralizedDataset& source,
                        const GeneralizedDataset& target);

}  // namespace gdchfif
