#include "gdchfif/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace gdchfif {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};
constexpr double kLeft = 64.0, kRight = 16.0, kTop = 28.0, kBottom = 36.0;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string px(double v) { return fmt("%.2f", v); }

struct Panel {
  double x0, x1, y0, y1;  // value window
  double left, top, width, height;

  double sx(double x) const { return left + (x - x0) / (x1 - x0) * width; }
  double sy(double y) const { return top + (y1 - y) / (y1 - y0) * height; }
};

}  // namespace

std::string render_svg(const GDIFSystem& system, const FunctionList* functions,
                       const VertexSets* clouds,
                       const RenderSettings& settings) {
  const bool have_fns = functions != nullptr && !functions->empty();
  const bool have_clouds = clouds != nullptr && !clouds->empty();
  if (!have_fns && !have_clouds) {
    throw Error(ErrorCode::EmptyInput, "nothing to render");
  }
  const std::size_t v = system.vertex_count();
  if ((have_fns && functions->size() != v) || (have_clouds && clouds->size() != v)) {
    throw Error(ErrorCode::StructuralMismatch,
                "render inputs do not match the vertex count");
  }
  const EdgeCounts counts = edge_counts(system.graph());
  const double w = settings.width;
  const double h = settings.panel_height;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << settings.width
      << "\" height=\"" << settings.panel_height * static_cast<int>(v)
      << "\" viewBox=\"0 0 " << settings.width << ' '
      << settings.panel_height * static_cast<int>(v) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t r = 0; r < v; ++r) {
    const GeneralizedDataset& data = system.dataset(r);
    const std::string color =
        r < settings.colors.size() ? settings.colors[r]
                                   : kPalette[r % std::size(kPalette)];

    std::vector<Point3> cloud;
    if (have_clouds && settings.show_cloud && settings.cloud_max_points > 0) {
      const auto& pts = (*clouds)[r].points;
      const std::size_t stride =
          std::max<std::size_t>(1, (pts.size() + settings.cloud_max_points - 1) /
                                       settings.cloud_max_points);
      for (std::size_t i = 0; i < pts.size(); i += stride) cloud.push_back(pts[i]);
    }

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    auto widen = [&](double y) {
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    };
    for (const Point3& p : data.points()) widen(p.y);
    if (have_fns) {
      for (double y : (*functions)[r].f1) widen(y);
      if (settings.show_f2) {
        for (double y : (*functions)[r].f2) widen(y);
      }
    }
    for (const Point3& p : cloud) widen(p.y);
    if (!(hi > lo)) {
      lo -= 1.0;
      hi += 1.0;
    } else {
      const double pad = 0.05 * (hi - lo);
      lo -= pad;
      hi += pad;
    }

    const Panel panel{data.front().x,
                      data.back().x,
                      lo,
                      hi,
                      kLeft,
                      static_cast<double>(r) * h + kTop,
                      w - kLeft - kRight,
                      h - kTop - kBottom};

    out << "<g class=\"panel\" data-vertex=\"" << data.vertex_id()
        << "\" data-ymin=\"" << fmt("%.17g", lo) << "\" data-ymax=\""
        << fmt("%.17g", hi) << "\" data-plot-height=\"" << px(panel.height)
        << "\">\n";

    // Caption with the vertex's outgoing edge counts.
    out << "<text x=\"" << px(panel.left) << "\" y=\"" << px(panel.top - 10)
        << "\" font-family=\"sans-serif\" font-size=\"13\">vertex "
        << data.vertex_id() << ": K = [";
    for (std::size_t s = 0; s < v; ++s) {
      out << (s ? ", " : "") << counts[r][s];
    }
    out << "]</text>\n";

    out << "<rect class=\"frame\" x=\"" << px(panel.left) << "\" y=\""
        << px(panel.top) << "\" width=\"" << px(panel.width) << "\" height=\""
        << px(panel.height) << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int k = 0; k <= 4; ++k) {
      const double xv = panel.x0 + (panel.x1 - panel.x0) * k / 4.0;
      const double yv = panel.y0 + (panel.y1 - panel.y0) * k / 4.0;
      const double tx = panel.sx(xv), ty = panel.sy(yv);
      const double base = panel.top + panel.height;
      out << "<line class=\"tick\" x1=\"" << px(tx) << "\" y1=\"" << px(base)
          << "\" x2=\"" << px(tx) << "\" y2=\"" << px(base + 5)
          << "\" stroke=\"#444\"/>\n";
      out << "<text x=\"" << px(tx) << "\" y=\"" << px(base + 18)
          << "\" font-family=\"sans-serif\" font-size=\"11\" "
             "text-anchor=\"middle\">"
          << fmt("%.4g", xv) << "</text>\n";
      out << "<line class=\"tick\" x1=\"" << px(panel.left - 5) << "\" y1=\""
          << px(ty) << "\" x2=\"" << px(panel.left) << "\" y2=\"" << px(ty)
          << "\" stroke=\"#444\"/>\n";
      out << "<text x=\"" << px(panel.left - 8) << "\" y=\"" << px(ty + 4)
          << "\" font-family=\"sans-serif\" font-size=\"11\" "
             "text-anchor=\"end\">"
          << fmt("%.4g", yv) << "</text>\n";
    }

    if (!cloud.empty()) {
      out << "<g class=\"cloud\" fill=\"#888\">\n";
      for (const Point3& p : cloud) {
        out << "<rect x=\"" << px(panel.sx(p.x)) << "\" y=\""
            << px(panel.sy(p.y)) << "\" width=\"0.8\" height=\"0.8\"/>\n";
      }
      out << "</g>\n";
    }

    auto polyline = [&](const std::vector<double>& ys, const char* cls,
                        const std::string& stroke, const char* dash) {
      const SampledFunction& s = (*functions)[r];
      out << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\""
          << stroke << "\" stroke-width=\"1\"" << dash << " points=\"";
      for (std::size_t i = 0; i < s.grid.size(); ++i) {
        out << (i ? " " : "") << px(panel.sx(s.grid[i])) << ','
            << px(panel.sy(ys[i]));
      }
      out << "\"/>\n";
    };
    if (have_fns) {
      if (settings.show_f2) {
        polyline((*functions)[r].f2, "f2", "#999", " stroke-dasharray=\"4 3\"");
      }
      polyline((*functions)[r].f1, "f1", color, "");
    }

    if (settings.show_knots) {
      for (const Point3& p : data.points()) {
        out << "<circle class=\"knot\" cx=\"" << px(panel.sx(p.x))
            << "\" cy=\"" << px(panel.sy(p.y))
            << "\" r=\"3\" fill=\"white\" stroke=\"" << color << "\"/>\n";
      }
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace gdchfif
