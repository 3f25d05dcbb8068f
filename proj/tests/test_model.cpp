#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "fixtures.hpp"
#include "gdchfif/model.hpp"

using namespace gdchfif;
using gdchfif::testing::example_d1;
using gdchfif::testing::example_d2;
using gdchfif::testing::example_graph;

namespace {

std::vector<GeneralizedDataset> example_datasets() {
  std::vector<GeneralizedDataset> ds;
  ds.push_back(validate_dataset(example_d1(), 1));
  ds.push_back(validate_dataset(example_d2(), 2));
  return ds;
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Dataset, AcceptsExampleData) {
  const auto d = validate_dataset(example_d1(), 1);
  EXPECT_EQ(d.subinterval_count(), 5u);
  EXPECT_DOUBLE_EQ(d.length(), 5.0);
  EXPECT_TRUE(d.contains(2.5));
  EXPECT_FALSE(d.contains(5.5));
}

TEST(Dataset, RejectsRepeatedAbscissa) {
  try {
    validate_dataset({{0, 0, 0}, {1, 1, 1}, {1, 2, 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonIncreasingAbscissa);
    ASSERT_TRUE(e.index().has_value());
    EXPECT_EQ(*e.index(), 2u);
  }
}

TEST(Dataset, RejectsTwoPoints) {
  EXPECT_EQ(code_of([] { validate_dataset({{0, 0, 0}, {1, 1, 1}}); }),
            ErrorCode::TooFewPoints);
}

TEST(Dataset, RejectsNonFinite) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(code_of([&] { validate_dataset({{0, 0, 0}, {1, nan, 1}, {2, 0, 0}}); }),
            ErrorCode::NonFiniteValue);
}

TEST(Graph, ExampleEdgeCounts) {
  const GraphSpec g = example_graph();
  EXPECT_EQ(g.sources[0], (std::vector<std::size_t>{0, 0, 0, 1, 1}));
  EXPECT_EQ(g.sources[1], (std::vector<std::size_t>{0, 1, 1, 1}));
  const EdgeCounts k = edge_counts(g);
  EXPECT_EQ(k, (EdgeCounts{{3, 2}, {1, 3}}));
  const auto ds = example_datasets();
  EXPECT_NO_THROW(validate_graph(g, ds));
}

TEST(Graph, RowSumsMustMatchSubintervals) {
  const auto ds = example_datasets();
  const GraphSpec g = contiguous_graph({{3, 1}, {1, 3}});
  EXPECT_EQ(code_of([&] { validate_graph(g, ds); }),
            ErrorCode::AssignmentLengthMismatch);
}

TEST(Graph, UnknownSourceVertex) {
  const auto ds = example_datasets();
  GraphSpec g = example_graph();
  g.sources[1][2] = 7;
  try {
    validate_graph(g, ds);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownVertex);
    EXPECT_EQ(e.path(), "graph[1].sources[2]");
  }
}

TEST(Scaling, Bounds) {
  EXPECT_NO_THROW(validate_scaling(Scaling{1.0 / 3, 1.0 / 3, 1.0 / 3}));
  EXPECT_NO_THROW(validate_scaling(Scaling{0.99, 0.99, 0.005}));
  EXPECT_EQ(code_of([] { validate_scaling(Scaling{0.5, 0.6, 0.5}); }),
            ErrorCode::InvalidScaling);
  EXPECT_EQ(code_of([] { validate_scaling(Scaling{1.0, 0.0, 0.0}); }),
            ErrorCode::InvalidScaling);
  EXPECT_EQ(code_of([] { validate_scaling(Scaling{0.0, 0.0, -1.0}); }),
            ErrorCode::InvalidScaling);
}

TEST(Scaling, ErrorCarriesMapPath) {
  ScalingParams p = uniform_scaling(example_graph(), {0.3, 0.3, 0.3});
  p[1][2].beta = 0.8;
  try {
    validate_scaling(p, example_graph());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidScaling);
    EXPECT_EQ(e.path(), "params[1].maps[2].beta");
  }
}

TEST(Scaling, LengthMismatch) {
  ScalingParams p = uniform_scaling(example_graph(), {0.3, 0.3, 0.3});
  p[0].pop_back();
  EXPECT_EQ(code_of([&] { validate_scaling(p, example_graph()); }),
            ErrorCode::ParamsLengthMismatch);
}

TEST(Horizontal, ExampleRatios) {
  const auto ds = example_datasets();
  const HorizontalReport r = horizontal_ratios(ds, example_graph());
  EXPECT_TRUE(r.passed);
  EXPECT_DOUBLE_EQ(r.max_ratio, 0.25);
  ASSERT_EQ(r.ratios.size(), 9u);
  EXPECT_DOUBLE_EQ(r.ratios[0].ratio, 0.2);
}

TEST(Horizontal, WideSubintervalExpands) {
  std::vector<GeneralizedDataset> ds;
  ds.push_back(validate_dataset({{0, 0, 0}, {1, 1, 1}, {2, 0, 0}}, 1));
  ds.push_back(validate_dataset({{0, 0, 0}, {10, 1, 1}, {11, 0, 0}}, 2));
  const GraphSpec g = contiguous_graph({{2, 0}, {2, 0}});
  EXPECT_EQ(code_of([&] { check_horizontal_contraction(ds, g); }),
            ErrorCode::HorizontalExpansion);
}

TEST(Horizontal, AllPairsIsStricter) {
  std::vector<GeneralizedDataset> ds;
  ds.push_back(validate_dataset({{0, 0, 0}, {0.5, 1, 1}, {1, 0, 0}}, 1));
  ds.push_back(validate_dataset({{0, 0, 0}, {4, 1, 1}, {8, 0, 0}}, 2));
  const GraphSpec g = contiguous_graph({{2, 0}, {0, 2}});
  EXPECT_TRUE(horizontal_ratios(ds, g, false).passed);
  EXPECT_FALSE(horizontal_ratios(ds, g, true).passed);
}

TEST(AffineMap, ApplyAndPreimage) {
  AffineMap3 m;
  m.a = 0.2;
  m.b = 1;
  m.c = -0.6;
  m.d = 0.5;
  m.e = 0.25;
  m.f = 2;
  m.alpha = 0.3;
  m.beta = 0.1;
  m.gamma = 0.4;
  const Point3 p = m.apply({2, 3, 4});
  EXPECT_DOUBLE_EQ(p.x, 1.4);
  EXPECT_DOUBLE_EQ(p.y, -0.6 * 2 + 0.9 + 0.4 + 0.5);
  EXPECT_DOUBLE_EQ(p.z, 0.5 + 1.6 + 2);
  EXPECT_DOUBLE_EQ(m.preimage(p.x), 2.0);
}

TEST(System, AssembleRejectsBrokenJoinUp) {
  const GDIFSystem good = gdchfif::testing::example_system();
  auto maps = std::vector<std::vector<AffineMap3>>(good.maps().begin(),
                                                   good.maps().end());
  maps[0][1].d += 1e-6;
  EXPECT_EQ(code_of([&] {
              GDIFSystem::assemble(example_datasets(), example_graph(), maps);
            }),
            ErrorCode::JoinUpViolation);
  const GDIFSystem loose =
      GDIFSystem::assemble_unchecked(example_datasets(), example_graph(), maps);
  EXPECT_NEAR(loose.join_up_residual(), 1e-6, 1e-12);
}

TEST(System, StructuralMismatch) {
  const GDIFSystem good = gdchfif::testing::example_system();
  auto maps = std::vector<std::vector<AffineMap3>>(good.maps().begin(),
                                                   good.maps().end());
  maps[1].pop_back();
  EXPECT_EQ(code_of([&] {
              GDIFSystem::assemble_unchecked(example_datasets(), example_graph(),
                                             maps);
            }),
            ErrorCode::StructuralMismatch);
}

TEST(System, NanCoefficientIsNotAPass) {
  const GDIFSystem good = gdchfif::testing::example_system();
  auto maps = std::vector<std::vector<AffineMap3>>(good.maps().begin(),
                                                   good.maps().end());
  maps[0][0].c = std::numeric_limits<double>::quiet_NaN();
  const GDIFSystem bad =
      GDIFSystem::assemble_unchecked(example_datasets(), example_graph(), maps);
  EXPECT_FALSE(bad.join_up_residual() < 1e-10);
}
