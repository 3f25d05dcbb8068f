#include "gdchfif/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace gdchfif {

namespace {

// Solves [p 1; q 1] [u; v] = [r0; r1] by elimination with row pivoting.
std::array<double, 2> solve_endpoint_pair(double p, double q, double r0,
                                          double r1) {
  std::array<std::array<double, 3>, 2> m{{{p, 1.0, r0}, {q, 1.0, r1}}};
  if (std::abs(m[1][0]) > std::abs(m[0][0])) std::swap(m[0], m[1]);
  if (m[0][0] == 0.0) {
    throw Error(ErrorCode::SingularSystem,
                "source interval has zero length; endpoint system is singular");
  }
  const double factor = m[1][0] / m[0][0];
  m[1][1] -= factor * m[0][1];
  m[1][2] -= factor * m[0][2];
  if (m[1][1] == 0.0) {
    throw Error(ErrorCode::SingularSystem,
                "source interval has zero length; endpoint system is singular");
  }
  const double v = m[1][2] / m[1][1];
  const double u = (m[0][2] - m[0][1] * v) / m[0][0];
  return {u, v};
}

double coefficient_gap(double p, double q) {
  const double scale = std::max(std::abs(p), std::abs(q));
  const double diff = std::abs(p - q);
  return scale < 1.0 ? diff : diff / scale;
}

}  // namespace

MapEndpoints endpoints_for(const GeneralizedDataset& source,
                           const GeneralizedDataset& target,
                           std::size_t subinterval) {
  if (subinterval == 0 || subinterval > target.subinterval_count()) {
    throw Error(ErrorCode::InvalidArgument,
                "subinterval " + std::to_string(subinterval) + " out of range",
                subinterval);
  }
  return {source.front(), source.back(), target.point(subinterval - 1),
          target.point(subinterval)};
}

AffineMap3 solve_map_closed_form(const MapEndpoints& ends, const Scaling& s) {
  const double x0 = ends.source_first.x, xN = ends.source_last.x;
  const double y0 = ends.source_first.y, yN = ends.source_last.y;
  const double z0 = ends.source_first.z, zN = ends.source_last.z;
  const Point3& lo = ends.target_left;
  const Point3& hi = ends.target_right;
  const double span = xN - x0;
  if (!(span != 0.0) || !std::isfinite(span)) {
    throw Error(ErrorCode::ZeroLengthSourceInterval,
                "source interval has zero length");
  }

  AffineMap3 m;
  m.alpha = s.alpha;
  m.beta = s.beta;
  m.gamma = s.gamma;
  m.a = (hi.x - lo.x) / span;
  m.b = (xN * lo.x - x0 * hi.x) / span;
  m.c = (hi.y - lo.y - s.alpha * (yN - y0) - s.beta * (zN - z0)) / span;
  m.d = (xN * lo.y - x0 * hi.y - s.alpha * (xN * y0 - x0 * yN) -
         s.beta * (xN * z0 - x0 * zN)) /
        span;
  m.e = (hi.z - lo.z - s.gamma * (zN - z0)) / span;
  m.f = (xN * lo.z - x0 * hi.z - s.gamma * (xN * z0 - x0 * zN)) / span;
  return m;
}

AffineMap3 solve_map_linear_oracle(const MapEndpoints& ends, const Scaling& s) {
  const Point3& p0 = ends.source_first;
  const Point3& pN = ends.source_last;
  const Point3& lo = ends.target_left;
  const Point3& hi = ends.target_right;

  AffineMap3 m;
  m.alpha = s.alpha;
  m.beta = s.beta;
  m.gamma = s.gamma;
  const auto ab = solve_endpoint_pair(p0.x, pN.x, lo.x, hi.x);
  const auto cd = solve_endpoint_pair(
      p0.x, pN.x, lo.y - s.alpha * p0.y - s.beta * p0.z,
      hi.y - s.alpha * pN.y - s.beta * pN.z);
  const auto ef = solve_endpoint_pair(p0.x, pN.x, lo.z - s.gamma * p0.z,
                                      hi.z - s.gamma * pN.z);
  m.a = ab[0];
  m.b = ab[1];
  m.c = cd[0];
  m.d = cd[1];
  m.e = ef[0];
  m.f = ef[1];
  return m;
}

GDIFSystem build_system(std::vector<GeneralizedDataset> datasets,
                        const GraphSpec& graph, const ScalingParams& params,
                        const BuildOptions& options) {
  const GraphSpec checked = validate_graph(graph, datasets);
  const ScalingParams scaling = validate_scaling(params, checked);
  check_horizontal_contraction(datasets, checked,
                               options.all_pairs_contraction);

  std::vector<std::vector<AffineMap3>> maps(checked.vertex_count);
  for (std::size_t r = 0; r < checked.vertex_count; ++r) {
    const auto& row = checked.sources[r];
    maps[r].reserve(row.size());
    for (std::size_t n = 0; n < row.size(); ++n) {
      const std::size_t s = row[n];
      const MapEndpoints ends = endpoints_for(datasets[s], datasets[r], n + 1);
      AffineMap3 m = options.route == SolverRoute::ClosedForm
                         ? solve_map_closed_form(ends, scaling[r][n])
                         : solve_map_linear_oracle(ends, scaling[r][n]);
      m.source = s;
      m.target = r;
      m.subinterval = n + 1;
      maps[r].push_back(m);
    }
  }
  return GDIFSystem::assemble(std::move(datasets), checked, std::move(maps),
                              options.join_tol);
}

double solver_cross_check(const GDIFSystem& system) {
  double worst = 0.0;
  for (const auto& row : system.maps()) {
    for (const AffineMap3& m : row) {
      const MapEndpoints ends = endpoints_for(
          system.dataset(m.source), system.dataset(m.target), m.subinterval);
      const Scaling s{m.alpha, m.beta, m.gamma};
      const AffineMap3 closed = solve_map_closed_form(ends, s);
      const AffineMap3 oracle = solve_map_linear_oracle(ends, s);
      for (auto field : {&AffineMap3::a, &AffineMap3::b, &AffineMap3::c,
                         &AffineMap3::d, &AffineMap3::e, &AffineMap3::f}) {
        worst = std::max(worst, coefficient_gap(closed.*field, oracle.*field));
      }
    }
  }
  return worst;
}

std::vector<ClassicMap> classic_fif_coefficients(
    const GeneralizedDataset& data, std::span<const double> alphas) {
  const std::size_t count = data.subinterval_count();
  if (alphas.size() != count) {
    throw Error(ErrorCode::ParamsLengthMismatch,
                "expected " + std::to_string(count) + " scaling factors, got " +
                    std::to_string(alphas.size()));
  }
  const double x0 = data.front().x, xN = data.back().x;
  const double y0 = data.front().y, yN = data.back().y;
  const double span = xN - x0;

  std::vector<ClassicMap> maps;
  maps.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    const double alpha = alphas[i - 1];
    if (!(std::abs(alpha) < 1.0)) {
      throw Error(ErrorCode::InvalidScaling,
                  "|alpha| must be < 1, got " + std::to_string(alpha), i - 1);
    }
    const Point3& lo = data.point(i - 1);
    const Point3& hi = data.point(i);
    ClassicMap m;
    m.alpha = alpha;
    m.a = (hi.x - lo.x) / span;
    m.offset = (xN * lo.x - x0 * hi.x) / span;
    m.slope = (hi.y - lo.y - alpha * (yN - y0)) / span;
    m.intercept = (xN * lo.y - x0 * hi.y - alpha * (xN * y0 - x0 * yN)) / span;
    maps.push_back(m);
  }
  return maps;
}

}  // namespace gdchfif
