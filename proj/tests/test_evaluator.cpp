#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "gdchfif/evaluator.hpp"

using namespace gdchfif;
namespace fx = gdchfif::testing;

TEST(Grid, ContainsKnots) {
  const auto d = validate_dataset(fx::example_d1(), 1);
  const auto g = make_grid(d, 4);
  ASSERT_EQ(g.size(), 21u);
  for (std::size_t n = 0; n < d.points().size(); ++n) {
    EXPECT_EQ(g[4 * n], d.point(n).x);
  }
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_LT(g[i - 1], g[i]);
}

TEST(Grid, RejectsDensityBelowTwo) {
  const auto d = validate_dataset(fx::example_d1(), 1);
  EXPECT_THROW(make_grid(d, 1), Error);
}

TEST(Initial, StraightLineBetweenEndpoints) {
  const GDIFSystem sys = fx::second_system();
  const FunctionList f = initial_functions(sys, 8);
  ASSERT_EQ(f.size(), 2u);
  const SampledFunction& s = f[0];
  EXPECT_EQ(s.f1.front(), 5.0);
  EXPECT_EQ(s.f2.front(), 3.0);
  EXPECT_EQ(s.f2.back(), 4.0);
  EXPECT_NEAR(evaluate_at(s, 2.5).f2, 3.5, 1e-15);
}

TEST(EvaluateAt, GridPointsAndBetween) {
  SampledFunction s;
  s.grid = {0, 1, 2};
  s.f1 = {0, 2, 2};
  s.f2 = {1, 1, 3};
  s.knot_index = {0, 2};
  EXPECT_EQ(evaluate_at(s, 1.0).f1, 2.0);
  EXPECT_EQ(evaluate_at(s, 2.0).f2, 3.0);
  EXPECT_DOUBLE_EQ(evaluate_at(s, 0.25).f1, 0.5);
  EXPECT_DOUBLE_EQ(evaluate_at(s, 1.5).f2, 2.0);
  EXPECT_DOUBLE_EQ(evaluate_at(s, 1.5).f1, 2.0);
  try {
    evaluate_at(s, 2.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfDomain);
  }
}

TEST(ApplyT, PinsEndpoints) {
  const GDIFSystem sys = fx::example_system();
  FunctionList f = initial_functions(sys, 16);
  for (auto& s : f) {
    for (double& v : s.f1) v += 7.0;
  }
  const FunctionList g = apply_T(sys, f);
  EXPECT_EQ(g[0].f1.front(), 5.0);
  EXPECT_EQ(g[0].f1.back(), 5.0);
  EXPECT_EQ(g[1].f2.back(), 1.0);
}

TEST(ApplyT, KnotsAreExactAfterOneStep) {
  const GDIFSystem sys = fx::second_system();
  const FunctionList g = apply_T(sys, initial_functions(sys, 8));
  for (std::size_t r = 0; r < 2; ++r) {
    EXPECT_LT(interpolation_error(sys.dataset(r), g[r]), 1e-13);
  }
}

TEST(FixedPoint, ExampleConverges) {
  const GDIFSystem sys = fx::example_system();
  const FixedPointResult r = solve_fixed_point(sys);
  EXPECT_LT(r.changes.back(), 1e-8);
  EXPECT_LE(r.empirical_ratio, 0.72);
  EXPECT_GT(r.empirical_ratio, 0.0);
  EXPECT_NEAR(r.factors.apriori, 1.0 / 3, 1e-15);
  EXPECT_NEAR(r.factors.conservative, 2.0 / 3, 1e-15);
  for (std::size_t v = 0; v < 2; ++v) {
    EXPECT_LT(interpolation_error(sys.dataset(v), r.functions[v]), 1e-6);
  }
  EXPECT_LT(functional_residual(sys, r.functions), 1e-6);
}

TEST(FixedPoint, ResidualOnRefinedProbes) {
  const GDIFSystem sys = fx::second_system();
  const FixedPointResult r = solve_fixed_point(sys);
  EXPECT_LT(functional_residual(sys, r.functions, 1), 1e-6);
  // Probes off the grid see the piecewise-linear interpolation error.
  EXPECT_GT(functional_residual(sys, r.functions, 3), 1e-6);
}

TEST(FixedPoint, ZeroScalingIsOneStep) {
  const GDIFSystem sys = fx::example_system({0.0, 0.0, 0.0});
  const FixedPointResult r = solve_fixed_point(sys);
  EXPECT_EQ(r.iterations, 1u);
  // The fixed point is the piecewise-linear interpolant.
  EXPECT_DOUBLE_EQ(evaluate_at(r.functions[0], 0.5).f1, 4.5);
  EXPECT_DOUBLE_EQ(evaluate_at(r.functions[1], 2.5).f2, 2.5);
}

TEST(FixedPoint, ConstantZeroData) {
  std::vector<GeneralizedDataset> ds;
  ds.push_back(validate_dataset({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}, 1));
  const GraphSpec g = contiguous_graph({{2}});
  const GDIFSystem sys = build_system(std::move(ds), g,
                                      uniform_scaling(g, {0.5, 0.2, 0.4}));
  const FixedPointResult r = solve_fixed_point(sys);
  for (double v : r.functions[0].f1) EXPECT_EQ(v, 0.0);
  for (double v : r.functions[0].f2) EXPECT_EQ(v, 0.0);
}

TEST(FixedPoint, BudgetExhaustion) {
  const GDIFSystem sys = fx::table_system();
  FixedPointOptions o;
  o.max_iters = 10;
  try {
    solve_fixed_point(sys, o);
    FAIL();
  } catch (const NoConvergenceError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoConvergence);
    EXPECT_EQ(e.trace().size(), 10u);
  }
}

TEST(FixedPoint, TableParametersSlowRatio) {
  const GDIFSystem sys = fx::table_system();
  FixedPointOptions o;
  o.grid_density = 63;
  o.tol = 1e-6;
  o.max_iters = 5000;
  const FixedPointResult r = solve_fixed_point(sys, o);
  EXPECT_LE(r.iterations, 5000u);
  EXPECT_NEAR(r.empirical_ratio, 0.99, 0.01);
  EXPECT_NEAR(r.factors.apriori, 0.99, 1e-15);
  EXPECT_NEAR(r.factors.conservative, 1.98, 1e-15);
}

TEST(FixedPoint, HiddenComponentIgnoresY) {
  const GDIFSystem base = fx::second_system();
  auto d1 = fx::second_d1();
  auto d2 = fx::second_d2();
  for (auto& p : d1) p.y = 3.0 * p.y - 11.0;
  for (auto& p : d2) p.y = -p.y * p.y;
  const GDIFSystem moved = fx::build(
      d1, d2, uniform_scaling(fx::example_graph(), {1.0 / 3, 1.0 / 3, 1.0 / 3}));
  const FixedPointResult a = solve_fixed_point(base);
  const FixedPointResult b = solve_fixed_point(moved);
  for (std::size_t r = 0; r < 2; ++r) {
    EXPECT_EQ(a.functions[r].f2, b.functions[r].f2);
    EXPECT_NE(a.functions[r].f1, b.functions[r].f1);
  }
}

TEST(FixedPoint, CoalescenceWhenAlphaPlusBetaIsGamma) {
  const GDIFSystem sys = fx::example_system({0.2, 0.3, 0.5});
  const FixedPointResult r = solve_fixed_point(sys);
  double gap = 0.0;
  for (const auto& s : r.functions) {
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      gap = std::max(gap, std::abs(s.f1[i] - s.f2[i]));
    }
  }
  EXPECT_LT(gap, 1e-6);
}

TEST(Factors, Example) {
  const ContractionFactors f = contraction_factors(fx::table_system());
  EXPECT_DOUBLE_EQ(f.apriori, 0.99);
  EXPECT_DOUBLE_EQ(f.conservative, 1.98);
}
