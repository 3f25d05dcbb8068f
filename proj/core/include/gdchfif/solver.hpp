#pragma once

#include <span>
#include <vector>

#include "gdchfif/model.hpp"

namespace gdchfif {

/// Endpoint data feeding one map: the first and last triples of the source
/// vertex, and the consecutive pair of target triples bounding the
/// subinterval.
struct MapEndpoints {
  Point3 source_first;
  Point3 source_last;
  Point3 target_left;
  Point3 target_right;
};

MapEndpoints endpoints_for(const GeneralizedDataset& source,
                           const GeneralizedDataset& target,
                           std::size_t subinterval);

/// Coefficients from the closed-form table. Throws ZeroLengthSourceInterval.
/// The returned map carries the scaling parameters; labels are left zero.
AffineMap3 solve_map_closed_form(const MapEndpoints& ends, const Scaling& s);

/// Same coefficients obtained by eliminating the three 2x2 endpoint systems
/// with partial pivoting. Throws SingularSystem.
AffineMap3 solve_map_linear_oracle(const MapEndpoints& ends, const Scaling& s);

enum class SolverRoute { ClosedForm, LinearOracle };

struct BuildOptions {
  SolverRoute route = SolverRoute::ClosedForm;
  double join_tol = kDefaultJoinUpTolerance;
  bool all_pairs_contraction = false;
};

/// Validates everything, checks horizontal contraction, solves one map per
/// (vertex, subinterval) and assembles the system.
GDIFSystem build_system(std::vector<GeneralizedDataset> datasets,
                        const GraphSpec& graph, const ScalingParams& params,
                        const BuildOptions& options = {});

/// Largest relative difference between the closed-form and oracle
/// coefficients re-solved for every map of `system` (absolute below
/// magnitude 1). Stored coefficients are not consulted.
double solver_cross_check(const GDIFSystem& system);

/// Planar affine FIF map: L(x) = a x + offset, F(x, y) = alpha y + slope x +
/// intercept.
struct ClassicMap {
  double a = 0.0;
  double offset = 0.0;
  double alpha = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
};

/// Maps of the classic single-IFS affine FIF through (x_n, y_n), ignoring z.
std::vector<ClassicMap> classic_fif_coefficients(
    const GeneralizedDataset& data, std::span<const double> alphas);

}  // namespace gdchfif
