#pragma once

#include <vector>

#include "gdchfif/model.hpp"
#include "gdchfif/solver.hpp"

namespace gdchfif::testing {

inline std::vector<Point3> example_d1() {
  return {{0, 5, 5}, {1, 4, 4}, {2, 1, 1}, {3, 1, 1}, {4, 4, 4}, {5, 5, 5}};
}

inline std::vector<Point3> example_d2() {
  return {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}, {3, 2, 2}, {4, 1, 1}};
}

// Second generalized datasets: same (x, y), distinct hidden values.
inline std::vector<Point3> second_d1() {
  return {{0, 5, 3}, {1, 4, 2}, {2, 1, 5}, {3, 1, 2}, {4, 4, 1}, {5, 5, 4}};
}

inline std::vector<Point3> second_d2() {
  return {{0, 1, 2}, {1, 2, 5}, {2, 3, 1}, {3, 2, 3}, {4, 1, 1}};
}

inline std::vector<Point3> table_d2() {
  return {{0, 1, 2}, {1, 5, 5}, {2, 3, 1}, {3, 2, 3}, {4, 4, 1}};
}

// K11 = 3, K12 = 2, K21 = 1, K22 = 3.
inline GraphSpec example_graph() {
  return contiguous_graph({{3, 2}, {1, 3}});
}

inline ScalingParams table_params() {
  const double a1[] = {0.8, 0.7, 0.8, 0.7, 0.8};
  const double b1[] = {-0.3, -0.4, -0.2, -0.3, -0.4};
  const double g1[] = {0.5, 0.3, 0.6, 0.5, 0.3};
  ScalingParams p(2);
  for (int n = 0; n < 5; ++n) p[0].push_back({a1[n], b1[n], g1[n]});
  for (int n = 0; n < 4; ++n) p[1].push_back({0.99, 0.99, 0.005});
  return p;
}

inline GDIFSystem build(std::vector<Point3> d1, std::vector<Point3> d2,
                        const ScalingParams& params) {
  std::vector<GeneralizedDataset> ds;
  ds.push_back(validate_dataset(std::move(d1), 1));
  ds.push_back(validate_dataset(std::move(d2), 2));
  return build_system(std::move(ds), example_graph(), params);
}

inline GDIFSystem example_system(Scaling s = {1.0 / 3, 1.0 / 3, 1.0 / 3}) {
  return build(example_d1(), example_d2(),
               uniform_scaling(example_graph(), s));
}

inline GDIFSystem second_system() {
  return build(second_d1(), second_d2(),
               uniform_scaling(example_graph(), {1.0 / 3, 1.0 / 3, 1.0 / 3}));
}

inline GDIFSystem table_system() {
  return build(second_d1(), table_d2(), table_params());
}

}  // namespace gdchfif::testing
