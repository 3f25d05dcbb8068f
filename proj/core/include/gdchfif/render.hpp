#pragma once

#include <string>

#include "gdchfif/attractor.hpp"
#include "gdchfif/evaluator.hpp"
#include "gdchfif/io.hpp"

namespace gdchfif {

/// SVG with one stacked panel per vertex: the f1 polyline (and f2 when
/// enabled), knot markers at (x_n, y_n), an optional scatter of the (x, y)
/// projection of `clouds`, numeric axis ticks and a caption listing the
/// vertex's edge counts. Either input may be null but not both (EmptyInput).
/// Output is a pure function of the inputs.
///
/// Panel groups carry `data-vertex`, `data-ymin` and `data-ymax` attributes;
/// the f1 polyline has class "f1" and knot markers class "knot", so the
/// drawing can be checked mechanically.
std::string render_svg(const GDIFSystem& system, const FunctionList* functions,
                       const VertexSets* clouds,
                       const RenderSettings& settings = {});

}  // namespace gdchfif
