#include "gdchfif/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gdchfif {

namespace {

std::string map_path(std::size_t r, std::size_t n) {
  return "params[" + std::to_string(r) + "].maps[" + std::to_string(n) + "]";
}

void check_structure(const std::vector<GeneralizedDataset>& datasets,
                     const GraphSpec& graph,
                     const std::vector<std::vector<AffineMap3>>& maps) {
  GraphSpec checked = validate_graph(graph, datasets);
  if (maps.size() != datasets.size()) {
    throw Error(ErrorCode::StructuralMismatch,
                "expected map lists for " + std::to_string(datasets.size()) +
                    " vertices, got " + std::to_string(maps.size()));
  }
  for (std::size_t r = 0; r < maps.size(); ++r) {
    if (maps[r].size() != checked.sources[r].size()) {
      throw Error(ErrorCode::StructuralMismatch,
                  "vertex " + std::to_string(r) + " has " +
                      std::to_string(maps[r].size()) + " maps for " +
                      std::to_string(checked.sources[r].size()) +
                      " subintervals",
                  r);
    }
    for (std::size_t n = 0; n < maps[r].size(); ++n) {
      const AffineMap3& m = maps[r][n];
      if (m.target != r || m.source != checked.sources[r][n] ||
          m.subinterval != n + 1) {
        throw Error(ErrorCode::StructuralMismatch,
                    "map labels disagree with the graph", n);
      }
    }
  }
}

}  // namespace

GeneralizedDataset validate_dataset(std::vector<Point3> points, int vertex_id) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point3& p = points[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw Error(ErrorCode::NonFiniteValue,
                  "point " + std::to_string(i) + " has a non-finite coordinate",
                  i);
    }
  }
  if (points.size() < 3) {
    throw Error(ErrorCode::TooFewPoints,
                "need at least 3 points, got " + std::to_string(points.size()));
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].x > points[i - 1].x)) {
      throw Error(ErrorCode::NonIncreasingAbscissa,
                  "x[" + std::to_string(i) + "] is not greater than x[" +
                      std::to_string(i - 1) + "]",
                  i);
    }
  }
  return GeneralizedDataset(vertex_id, std::move(points));
}

GraphSpec validate_graph(const GraphSpec& graph,
                         std::span<const GeneralizedDataset> datasets) {
  if (graph.vertex_count == 0 || graph.vertex_count != datasets.size()) {
    throw Error(ErrorCode::StructuralMismatch,
                "graph has " + std::to_string(graph.vertex_count) +
                    " vertices but " + std::to_string(datasets.size()) +
                    " datasets were given");
  }
  if (graph.sources.size() != graph.vertex_count) {
    throw Error(ErrorCode::AssignmentLengthMismatch,
                "expected an assignment for each of " +
                    std::to_string(graph.vertex_count) + " vertices");
  }
  for (std::size_t r = 0; r < graph.vertex_count; ++r) {
    const auto& row = graph.sources[r];
    const std::size_t expected = datasets[r].subinterval_count();
    if (row.size() != expected) {
      throw Error(ErrorCode::AssignmentLengthMismatch,
                  "vertex " + std::to_string(r) + " has " +
                      std::to_string(expected) + " subintervals but " +
                      std::to_string(row.size()) + " sources",
                  r, "graph[" + std::to_string(r) + "].sources");
    }
    for (std::size_t n = 0; n < row.size(); ++n) {
      if (row[n] >= graph.vertex_count) {
        throw Error(ErrorCode::UnknownVertex,
                    "source vertex index " + std::to_string(row[n]) +
                        " is out of range",
                    n,
                    "graph[" + std::to_string(r) + "].sources[" +
                        std::to_string(n) + "]");
      }
    }
  }
  return graph;
}

EdgeCounts edge_counts(const GraphSpec& graph) {
  EdgeCounts counts(graph.vertex_count,
                    std::vector<std::size_t>(graph.vertex_count, 0));
  for (std::size_t r = 0; r < graph.sources.size(); ++r) {
    for (std::size_t s : graph.sources[r]) ++counts.at(r).at(s);
  }
  return counts;
}

GraphSpec contiguous_graph(const EdgeCounts& counts) {
  GraphSpec g;
  g.vertex_count = counts.size();
  g.sources.resize(counts.size());
  for (std::size_t r = 0; r < counts.size(); ++r) {
    for (std::size_t s = 0; s < counts[r].size(); ++s) {
      g.sources[r].insert(g.sources[r].end(), counts[r][s], s);
    }
  }
  return g;
}

void validate_scaling(const Scaling& s) {
  if (!std::isfinite(s.alpha) || !std::isfinite(s.beta) ||
      !std::isfinite(s.gamma)) {
    throw Error(ErrorCode::NonFiniteValue, "scaling parameter is not finite");
  }
  if (!(std::abs(s.alpha) < 1.0)) {
    throw Error(ErrorCode::InvalidScaling,
                "|alpha| must be < 1, got " + std::to_string(s.alpha), {},
                "alpha");
  }
  if (!(std::abs(s.gamma) < 1.0)) {
    throw Error(ErrorCode::InvalidScaling,
                "|gamma| must be < 1, got " + std::to_string(s.gamma), {},
                "gamma");
  }
  if (!(std::abs(s.beta) + std::abs(s.gamma) < 1.0)) {
    throw Error(ErrorCode::InvalidScaling,
                "|beta| + |gamma| must be < 1, got " +
                    std::to_string(std::abs(s.beta) + std::abs(s.gamma)),
                {}, "beta");
  }
}

ScalingParams validate_scaling(const ScalingParams& params,
                               const GraphSpec& graph) {
  if (params.size() != graph.vertex_count) {
    throw Error(ErrorCode::ParamsLengthMismatch,
                "expected parameters for " +
                    std::to_string(graph.vertex_count) + " vertices, got " +
                    std::to_string(params.size()),
                {}, "params");
  }
  for (std::size_t r = 0; r < params.size(); ++r) {
    if (params[r].size() != graph.sources[r].size()) {
      throw Error(ErrorCode::ParamsLengthMismatch,
                  "vertex " + std::to_string(r) + " needs " +
                      std::to_string(graph.sources[r].size()) +
                      " parameter entries, got " +
                      std::to_string(params[r].size()),
                  r, "params[" + std::to_string(r) + "].maps");
    }
    for (std::size_t n = 0; n < params[r].size(); ++n) {
      try {
        validate_scaling(params[r][n]);
      } catch (const Error& e) {
        throw e.with_path_prefix(map_path(r, n));
      }
    }
  }
  return params;
}

ScalingParams uniform_scaling(const GraphSpec& graph, Scaling s) {
  ScalingParams p(graph.vertex_count);
  for (std::size_t r = 0; r < graph.vertex_count; ++r) {
    p[r].assign(graph.sources.at(r).size(), s);
  }
  return p;
}

HorizontalReport horizontal_ratios(std::span<const GeneralizedDataset> datasets,
                                   const GraphSpec& graph, bool all_pairs) {
  HorizontalReport report;
  for (std::size_t r = 0; r < graph.sources.size(); ++r) {
    const GeneralizedDataset& target = datasets[r];
    for (std::size_t n = 0; n < graph.sources[r].size(); ++n) {
      const double width = target.point(n + 1).x - target.point(n).x;
      auto record = [&](std::size_t s) {
        const double ratio = width / datasets[s].length();
        report.ratios.push_back({r, n + 1, s, ratio});
        report.max_ratio = std::max(report.max_ratio, ratio);
        if (!(ratio < 1.0)) report.passed = false;
      };
      if (all_pairs) {
        for (std::size_t s = 0; s < datasets.size(); ++s) record(s);
      } else {
        record(graph.sources[r][n]);
      }
    }
  }
  return report;
}

HorizontalReport check_horizontal_contraction(
    std::span<const GeneralizedDataset> datasets, const GraphSpec& graph,
    bool all_pairs) {
  HorizontalReport report = horizontal_ratios(datasets, graph, all_pairs);
  if (!report.passed) {
    for (const auto& h : report.ratios) {
      if (!(h.ratio < 1.0)) {
        throw Error(ErrorCode::HorizontalExpansion,
                    "subinterval " + std::to_string(h.subinterval) +
                        " of vertex " + std::to_string(h.vertex) +
                        " is not shorter than the interval of vertex " +
                        std::to_string(h.source) +
                        " (ratio " + std::to_string(h.ratio) + ")",
                    h.subinterval,
                    "graph[" + std::to_string(h.vertex) + "].sources[" +
                        std::to_string(h.subinterval - 1) + "]");
      }
    }
  }
  return report;
}

double join_up_residual(const AffineMap3& map, const GeneralizedDataset& source,
                        const GeneralizedDataset& target) {
  const std::size_t n = map.subinterval;
  const Point3 lo = map.apply(source.front());
  const Point3 hi = map.apply(source.back());
  const Point3& want_lo = target.point(n - 1);
  const Point3& want_hi = target.point(n);
  double worst = 0.0;
  for (double gap : {lo.x - want_lo.x, lo.y - want_lo.y, lo.z - want_lo.z,
                     hi.x - want_hi.x, hi.y - want_hi.y, hi.z - want_hi.z}) {
    if (std::isnan(gap)) return gap;
    worst = std::max(worst, std::abs(gap));
  }
  return worst;
}

GDIFSystem::GDIFSystem(std::vector<GeneralizedDataset> datasets,
                       GraphSpec graph,
                       std::vector<std::vector<AffineMap3>> maps)
    : datasets_(std::move(datasets)),
      graph_(std::move(graph)),
      maps_(std::move(maps)) {}

GDIFSystem GDIFSystem::assemble(std::vector<GeneralizedDataset> datasets,
                                GraphSpec graph,
                                std::vector<std::vector<AffineMap3>> maps,
                                double join_tol) {
  GDIFSystem sys = assemble_unchecked(std::move(datasets), std::move(graph),
                                      std::move(maps));
  for (const auto& row : sys.maps_) {
    for (const AffineMap3& m : row) {
      const double res =
          gdchfif::join_up_residual(m, sys.datasets_[m.source], sys.datasets_[m.target]);
      if (!(res < join_tol)) {
        throw Error(ErrorCode::JoinUpViolation,
                    "map " + std::to_string(m.subinterval) + " of vertex " +
                        std::to_string(m.target) + " misses its endpoints by " +
                        std::to_string(res),
                    m.subinterval);
      }
    }
  }
  return sys;
}

GDIFSystem GDIFSystem::assemble_unchecked(
    std::vector<GeneralizedDataset> datasets, GraphSpec graph,
    std::vector<std::vector<AffineMap3>> maps) {
  check_structure(datasets, graph, maps);
  return GDIFSystem(std::move(datasets), std::move(graph), std::move(maps));
}

std::size_t GDIFSystem::map_count() const noexcept {
  std::size_t total = 0;
  for (const auto& row : maps_) total += row.size();
  return total;
}

double GDIFSystem::join_up_residual() const {
  double worst = 0.0;
  for (const auto& row : maps_) {
    for (const AffineMap3& m : row) {
      const double res = gdchfif::join_up_residual(m, datasets_[m.source],
                                                   datasets_[m.target]);
      // NaN coefficients must not look like a pass.
      if (std::isnan(res)) return res;
      worst = std::max(worst, res);
    }
  }
  return worst;
}

}  // namespace gdchfif
