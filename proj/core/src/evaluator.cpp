#include "gdchfif/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gdchfif {

namespace {

// Preimages may overshoot the source interval by rounding; anything larger
// means the coefficients do not map the source interval onto the subinterval.
double clamp_preimage(double x, const GeneralizedDataset& source) {
  const double lo = source.front().x;
  const double hi = source.back().x;
  const double slack = 1e-9 * (hi - lo);
  if (x < lo - slack || x > hi + slack || std::isnan(x)) {
    throw Error(ErrorCode::PreimageOutOfRange,
                "preimage " + std::to_string(x) + " outside [" +
                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return std::clamp(x, lo, hi);
}

// Interpolation on a grid known to contain x.
FunctionValue interpolate(const SampledFunction& s, double x) {
  const auto& g = s.grid;
  auto it = std::upper_bound(g.begin(), g.end(), x);
  if (it == g.end()) return {s.f1.back(), s.f2.back()};
  const std::size_t hi = static_cast<std::size_t>(it - g.begin());
  if (hi == 0) return {s.f1.front(), s.f2.front()};
  const std::size_t lo = hi - 1;
  const double t = (x - g[lo]) / (g[hi] - g[lo]);
  return {s.f1[lo] + t * (s.f1[hi] - s.f1[lo]),
          s.f2[lo] + t * (s.f2[hi] - s.f2[lo])};
}

void check_shapes(const GDIFSystem& system, const FunctionList& fns) {
  if (fns.size() != system.vertex_count()) {
    throw Error(ErrorCode::StructuralMismatch,
                "expected " + std::to_string(system.vertex_count()) +
                    " sampled functions, got " + std::to_string(fns.size()));
  }
  for (std::size_t r = 0; r < fns.size(); ++r) {
    const auto& s = fns[r];
    if (s.grid.size() < 2 || s.f1.size() != s.grid.size() ||
        s.f2.size() != s.grid.size() ||
        s.knot_index.size() != system.dataset(r).points().size()) {
      throw Error(ErrorCode::StructuralMismatch,
                  "sampled function " + std::to_string(r) + " is malformed", r);
    }
  }
}

// One operator application. With `update_f2` false the second component is
// copied through unchanged.
FunctionList apply_operator(const GDIFSystem& system,
                            const FunctionList& current, bool update_f2) {
  check_shapes(system, current);
  FunctionList next = current;
  for (std::size_t r = 0; r < system.vertex_count(); ++r) {
    const GeneralizedDataset& data = system.dataset(r);
    SampledFunction& out = next[r];
    const auto maps = system.maps_of(r);
    for (std::size_t n = 0; n < maps.size(); ++n) {
      const AffineMap3& m = maps[n];
      const SampledFunction& src = current[m.source];
      const GeneralizedDataset& src_data = system.dataset(m.source);
      const std::size_t first = out.knot_index[n];
      const std::size_t last = out.knot_index[n + 1];
      for (std::size_t i = first; i < last; ++i) {
        const double x = clamp_preimage(m.preimage(out.grid[i]), src_data);
        const FunctionValue v = interpolate(src, x);
        out.f1[i] = m.c * x + m.alpha * v.f1 + m.beta * v.f2 + m.d;
        if (update_f2) out.f2[i] = m.e * x + m.gamma * v.f2 + m.f;
      }
    }
    out.f1.front() = data.front().y;
    out.f1.back() = data.back().y;
    out.f2.front() = data.front().z;
    out.f2.back() = data.back().z;
  }
  return next;
}

double component_change(const FunctionList& a, const FunctionList& b,
                        bool second) {
  double worst = 0.0;
  for (std::size_t r = 0; r < a.size(); ++r) {
    const auto& va = second ? a[r].f2 : a[r].f1;
    const auto& vb = second ? b[r].f2 : b[r].f1;
    for (std::size_t i = 0; i < va.size(); ++i) {
      const double d = std::abs(va[i] - vb[i]);
      if (std::isnan(d)) return d;
      worst = std::max(worst, d);
    }
  }
  return worst;
}

double tail_ratio(const std::vector<double>& changes) {
  std::vector<double> ratios;
  for (std::size_t i = 1; i < changes.size(); ++i) {
    if (changes[i - 1] > 0.0 && changes[i] > 0.0) {
      ratios.push_back(changes[i] / changes[i - 1]);
    }
  }
  const std::size_t k = std::min<std::size_t>(5, ratios.size());
  if (k == 0) return 0.0;
  double log_sum = 0.0;
  for (std::size_t i = ratios.size() - k; i < ratios.size(); ++i) {
    log_sum += std::log(ratios[i]);
  }
  return std::exp(log_sum / static_cast<double>(k));
}

}  // namespace

std::vector<double> make_grid(const GeneralizedDataset& data,
                              std::size_t density) {
  if (density < 2) {
    throw Error(ErrorCode::InvalidArgument, "grid density must be >= 2");
  }
  const auto pts = data.points();
  std::vector<double> grid;
  grid.reserve(data.subinterval_count() * density + 1);
  for (std::size_t n = 0; n + 1 < pts.size(); ++n) {
    const double lo = pts[n].x;
    const double width = pts[n + 1].x - lo;
    for (std::size_t k = 0; k < density; ++k) {
      grid.push_back(lo + width * static_cast<double>(k) /
                              static_cast<double>(density));
    }
  }
  grid.push_back(pts.back().x);
  return grid;
}

FunctionList initial_functions(const GDIFSystem& system, std::size_t density) {
  FunctionList fns(system.vertex_count());
  for (std::size_t r = 0; r < fns.size(); ++r) {
    const GeneralizedDataset& data = system.dataset(r);
    SampledFunction& s = fns[r];
    s.vertex = r;
    s.grid = make_grid(data, density);
    for (std::size_t n = 0; n <= data.subinterval_count(); ++n) {
      s.knot_index.push_back(n * density);
    }
    const Point3& lo = data.front();
    const Point3& hi = data.back();
    s.f1.reserve(s.grid.size());
    s.f2.reserve(s.grid.size());
    for (double x : s.grid) {
      const double t = (x - lo.x) / (hi.x - lo.x);
      s.f1.push_back(lo.y + t * (hi.y - lo.y));
      s.f2.push_back(lo.z + t * (hi.z - lo.z));
    }
    s.f1.back() = hi.y;
    s.f2.back() = hi.z;
  }
  return fns;
}

FunctionValue evaluate_at(const SampledFunction& samples, double x) {
  if (samples.grid.empty() || !(x >= samples.grid.front()) ||
      !(x <= samples.grid.back())) {
    throw Error(ErrorCode::OutOfDomain,
                "x = " + std::to_string(x) + " outside the sampled interval");
  }
  return interpolate(samples, x);
}

FunctionList apply_T(const GDIFSystem& system, const FunctionList& current) {
  return apply_operator(system, current, true);
}

double sup_change(const FunctionList& a, const FunctionList& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::StructuralMismatch, "function lists differ in size");
  }
  return std::max(component_change(a, b, false), component_change(a, b, true));
}

ContractionFactors contraction_factors(const GDIFSystem& system) {
  ContractionFactors f;
  for (const auto& row : system.maps()) {
    for (const AffineMap3& m : row) {
      const double a = std::abs(m.alpha), b = std::abs(m.beta),
                   g = std::abs(m.gamma);
      f.apriori = std::max({f.apriori, a, b, g});
      f.conservative = std::max({f.conservative, a + b, g});
    }
  }
  return f;
}

FixedPointResult solve_fixed_point(const GDIFSystem& system,
                                   const FixedPointOptions& options) {
  if (!(options.tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  }
  FixedPointResult result;
  result.factors = contraction_factors(system);
  FunctionList current = initial_functions(system, options.grid_density);

  if (result.factors.conservative == 0.0) {
    FunctionList next = apply_T(system, current);
    result.changes.push_back(sup_change(current, next));
    result.functions = std::move(next);
    result.iterations = 1;
    return result;
  }

  // The second component never reads the first, so it is iterated on its
  // own and frozen once settled; its samples then depend on z-data only.
  bool f2_settled = false;
  for (std::size_t it = 1; it <= options.max_iters; ++it) {
    FunctionList next = apply_operator(system, current, !f2_settled);
    const double d1 = component_change(current, next, false);
    const double d2 = f2_settled ? 0.0 : component_change(current, next, true);
    const double change = std::max(d1, d2);
    if (std::isnan(change)) {
      throw NoConvergenceError("fixed-point iteration produced NaN",
                               std::move(result.changes));
    }
    result.changes.push_back(change);
    current = std::move(next);
    if (d2 < options.tol) f2_settled = true;
    if (change < options.tol) {
      result.functions = std::move(current);
      result.iterations = it;
      result.empirical_ratio = tail_ratio(result.changes);
      return result;
    }
  }
  throw NoConvergenceError("fixed-point iteration did not reach tolerance " +
                               std::to_string(options.tol) + " in " +
                               std::to_string(options.max_iters) + " steps",
                           std::move(result.changes));
}

double functional_residual(const GDIFSystem& system,
                           const FunctionList& samples,
                           std::size_t probe_refinement) {
  check_shapes(system, samples);
  probe_refinement = std::max<std::size_t>(1, probe_refinement);
  double worst = 0.0;
  for (std::size_t r = 0; r < system.vertex_count(); ++r) {
    const SampledFunction& target = samples[r];
    const auto maps = system.maps_of(r);
    for (std::size_t n = 0; n < maps.size(); ++n) {
      const AffineMap3& m = maps[n];
      const SampledFunction& src = samples[m.source];
      const GeneralizedDataset& src_data = system.dataset(m.source);
      const std::size_t first = target.knot_index[n];
      const std::size_t last = target.knot_index[n + 1];
      for (std::size_t i = first; i <= last; ++i) {
        const std::size_t pieces = i < last ? probe_refinement : 1;
        for (std::size_t k = 0; k < pieces; ++k) {
          const double xi =
              k == 0 ? target.grid[i]
                     : target.grid[i] + (target.grid[i + 1] - target.grid[i]) *
                                            static_cast<double>(k) /
                                            static_cast<double>(pieces);
          const double x = clamp_preimage(m.preimage(xi), src_data);
          const FunctionValue lhs = interpolate(target, xi);
          const FunctionValue v = interpolate(src, x);
          const double rhs1 = m.c * x + m.alpha * v.f1 + m.beta * v.f2 + m.d;
          const double rhs2 = m.e * x + m.gamma * v.f2 + m.f;
          worst = std::max({worst, std::abs(lhs.f1 - rhs1),
                            std::abs(lhs.f2 - rhs2)});
        }
      }
    }
  }
  return worst;
}

double interpolation_error(const GeneralizedDataset& data,
                           const SampledFunction& samples) {
  double worst = 0.0;
  for (std::size_t n = 0; n < samples.knot_index.size(); ++n) {
    const std::size_t i = samples.knot_index[n];
    const Point3& p = data.point(n);
    worst = std::max({worst, std::abs(samples.f1.at(i) - p.y),
                      std::abs(samples.f2.at(i) - p.z)});
  }
  return worst;
}

}  // namespace gdchfif
