#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "gdchfif/model.hpp"

namespace gdchfif {

/// Piecewise-linear samples of f = (f1, f2) on one vertex's interval. The
/// grid contains every knot; `knot_index[n]` is the grid position of x_n.
struct SampledFunction {
  std::size_t vertex = 0;
  std::vector<double> grid;
  std::vector<double> f1;
  std::vector<double> f2;
  std::vector<std::size_t> knot_index;
};

using FunctionList = std::vector<SampledFunction>;

struct FunctionValue {
  double f1 = 0.0;
  double f2 = 0.0;
};

/// `density` uniform segments per subinterval (>= 2); knots are exact grid
/// points and grid endpoints equal the interval endpoints.
std::vector<double> make_grid(const GeneralizedDataset& data,
                              std::size_t density);

/// Straight lines joining each vertex's pinned endpoint values.
FunctionList initial_functions(const GDIFSystem& system, std::size_t density);

/// Piecewise-linear interpolation. Throws OutOfDomain outside the grid.
FunctionValue evaluate_at(const SampledFunction& samples, double x);

/// One application of the graph-directed Read-Bajraktarevic operator: each
/// grid point xi of subinterval n of vertex r gets
///   (c x + alpha f1_s(x) + beta f2_s(x) + d,  e x + gamma f2_s(x) + f)
/// with x = (xi - b) / a and s the subinterval's source vertex. Endpoint
/// values stay pinned to the data. Throws PreimageOutOfRange when x falls
/// outside the source interval by more than rounding.
FunctionList apply_T(const GDIFSystem& system, const FunctionList& current);

/// Sup-norm change max(|df1|, |df2|) over all vertices and grid points.
double sup_change(const FunctionList& a, const FunctionList& b);

struct FixedPointOptions {
  std::size_t grid_density = 64;
  double tol = 1e-8;
  std::size_t max_iters = 10000;
};

struct ContractionFactors {
  /// max over maps of max(|alpha|, |beta|, |gamma|)
  double apriori = 0.0;
  /// max over maps of max(|alpha| + |beta|, |gamma|): the one-step bound
  /// under the max norm on (f1, f2).
  double conservative = 0.0;
};

ContractionFactors contraction_factors(const GDIFSystem& system);

struct FixedPointResult {
  FunctionList functions;
  std::size_t iterations = 0;
  std::vector<double> changes;  // sup change after each application
  /// Geometric mean of the last (up to) five successive change ratios.
  double empirical_ratio = 0.0;
  ContractionFactors factors;
};

/// Iterates apply_T from initial_functions until the sup change drops below
/// tol. When every scaling parameter is zero the operator is constant and a
/// single application is the fixed point. f2 is frozen once its own change
/// drops below tol, so converged f2 samples depend on the z-data and gamma
/// alone. Throws NoConvergenceError with the change history when max_iters
/// is exhausted.
FixedPointResult solve_fixed_point(const GDIFSystem& system,
                                   const FixedPointOptions& options = {});

/// Largest defect |f_r(xi) - F_n(x, f_s(x))| over probe points xi, both
/// components, all maps. Probes are the grid points of each target
/// subinterval, each grid segment split into `probe_refinement` pieces; with
/// refinement 1 the probe preimages land on source grid points whenever the
/// grids are nested, so the result measures the fixed-point defect alone.
double functional_residual(const GDIFSystem& system,
                           const FunctionList& samples,
                           std::size_t probe_refinement = 1);

/// max |f1(x_n) - y_n|, |f2(x_n) - z_n| over the knots of one vertex.
double interpolation_error(const GeneralizedDataset& data,
                           const SampledFunction& samples);

}  // namespace gdchfif
