#pragma once

// Problem documents, CSV output and coefficient tables.
//
// A problem document is JSON with named sections:
//
//   {
//     "datasets":  [{"vertex": 1, "points": [[x, y, z], [x, y], ...]}, ...],
//     "graph":     [{"vertex": 1, "sources": [1, 1, 1, 2, 2]}, ...],
//     "params":    [{"vertex": 1, "maps": [{"alpha": a, "beta": b,
//                                           "gamma": g}, ...]}, ...],
//     "render":    {...},     // optional, see RenderSettings
//     "overrides": [...]      // optional coefficient edits
//   }
//
// Vertex labels are 1..V, each appearing once per section. A point given as
// [x, y] takes z = y. Unknown keys are rejected.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gdchfif/attractor.hpp"
#include "gdchfif/evaluator.hpp"
#include "gdchfif/model.hpp"
#include "gdchfif/solver.hpp"

namespace gdchfif {

struct DatasetEntry {
  int vertex = 1;
  std::vector<Point3> points;

  friend bool operator==(const DatasetEntry&, const DatasetEntry&) = default;
};

struct GraphEntry {
  int vertex = 1;
  std::vector<int> sources;  // one-based labels

  friend bool operator==(const GraphEntry&, const GraphEntry&) = default;
};

struct ParamsEntry {
  int vertex = 1;
  std::vector<Scaling> maps;

  friend bool operator==(const ParamsEntry&, const ParamsEntry&) = default;
};

/// Replaces one solved coefficient (a..f) of map `map` (one-based) of
/// `vertex` after solving. Intended for fault injection and diffing.
struct CoefficientOverride {
  int vertex = 1;
  std::size_t map = 1;
  std::string field;
  double value = 0.0;

  friend bool operator==(const CoefficientOverride&,
                         const CoefficientOverride&) = default;
};

struct RenderSettings {
  int width = 800;
  int panel_height = 320;
  bool show_f2 = false;
  bool show_knots = true;
  bool show_cloud = true;
  std::size_t cloud_max_points = 20000;
  std::vector<std::string> colors;  // per vertex; defaults cycle a palette

  friend bool operator==(const RenderSettings&, const RenderSettings&) = default;
};

struct ProblemDocument {
  std::vector<DatasetEntry> datasets;
  std::vector<GraphEntry> graph;
  std::vector<ParamsEntry> params;
  std::optional<RenderSettings> render;
  std::vector<CoefficientOverride> overrides;

  friend bool operator==(const ProblemDocument&,
                         const ProblemDocument&) = default;
};

/// Throws SyntaxError (with line and column), MissingSection or
/// UnknownField (with the field path).
ProblemDocument parse_problem(std::string_view text);
std::string serialize_problem(const ProblemDocument& doc);

ProblemDocument load_problem(const std::string& path);

struct ProblemInputs {
  std::vector<GeneralizedDataset> datasets;
  GraphSpec graph;
  ScalingParams params;
};

/// Validates every section, translating labels to indices. Errors carry the
/// document path of the offending field.
ProblemInputs validate_problem(const ProblemDocument& doc);

/// validate_problem, then build_system, then any overrides (which skip the
/// join-up check so the damage stays visible to verify).
GDIFSystem build_problem(const ProblemDocument& doc,
                         const BuildOptions& options = {});

enum class TableFormat { Text, Csv };

/// One row per map: r, n, source, a..f, alpha, beta, gamma. Vertex labels
/// are one-based.
void write_coefficients(std::ostream& out, const GDIFSystem& system,
                        TableFormat format);

/// vertex,x,f1,f2
void write_samples_csv(std::ostream& out, const GDIFSystem& system,
                       const FunctionList& functions);

/// vertex,x,y,z
void write_cloud_csv(std::ostream& out, const GDIFSystem& system,
                     const VertexSets& sets);

}  // namespace gdchfif
