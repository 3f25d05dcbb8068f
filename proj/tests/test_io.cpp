#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "gdchfif/io.hpp"
#include "gdchfif/render.hpp"
#include "gdchfif/verify.hpp"
#include "json.hpp"

using namespace gdchfif;
namespace fx = gdchfif::testing;

namespace {

const std::string kProblems = GDCHFIF_PROBLEM_DIR;

const char* kMinimal = R"({
  "datasets": [{"vertex": 1, "points": [[0, 0], [1, 1], [2, 0]]}],
  "graph": [{"vertex": 1, "sources": [1, 1]}],
  "params": [{"vertex": 1, "maps": [{"alpha": 0.3, "beta": 0.2, "gamma": 0.4},
                                     {"alpha": 0.3, "beta": 0.2, "gamma": 0.4}]}]
})";

Error parse_error(const std::string& text) {
  try {
    build_problem(parse_problem(text));
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error for: " << text;
  return Error(ErrorCode::InvalidArgument, "none");
}

}  // namespace

TEST(Parse, BundledExampleIsTheExampleSystem) {
  const GDIFSystem from_file =
      build_problem(load_problem(kProblems + "/example1.problem"));
  const GDIFSystem direct = fx::example_system();
  ASSERT_EQ(from_file.vertex_count(), 2u);
  EXPECT_EQ(from_file.graph(), direct.graph());
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t n = 0; n < direct.maps_of(r).size(); ++n) {
      EXPECT_EQ(from_file.maps_of(r)[n], direct.maps_of(r)[n]);
    }
  }
}

TEST(Parse, BundledTableProblem) {
  const GDIFSystem from_file =
      build_problem(load_problem(kProblems + "/example3_table1.problem"));
  const GDIFSystem direct = fx::table_system();
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t n = 0; n < direct.maps_of(r).size(); ++n) {
      EXPECT_EQ(from_file.maps_of(r)[n], direct.maps_of(r)[n]);
    }
  }
}

TEST(Parse, MissingZDefaultsToY) {
  const ProblemDocument doc = parse_problem(kMinimal);
  ASSERT_EQ(doc.datasets[0].points.size(), 3u);
  EXPECT_EQ(doc.datasets[0].points[1].z, 1.0);
}

TEST(Parse, EmptyDocument) {
  try {
    parse_problem("  \n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingSection);
  }
  EXPECT_EQ(parse_error("{}").code(), ErrorCode::MissingSection);
}

TEST(Parse, SyntaxErrorHasLineAndColumn) {
  const Error e = parse_error("{\n  \"datasets\": [\n    oops\n  ]\n}");
  EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
  EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
}

TEST(Parse, UnknownFieldHasPath) {
  std::string text = kMinimal;
  text.replace(text.find("\"gamma\": 0.4}]"), 14,
               "\"gamma\": 0.4, \"delta\": 1}]");
  const Error e = parse_error(text);
  EXPECT_EQ(e.code(), ErrorCode::UnknownField);
  EXPECT_EQ(e.path(), "params[0].maps[1].delta");
}

TEST(Parse, ScalingViolationHasPath) {
  std::string text = kMinimal;
  text.replace(text.find("\"beta\": 0.2"), 11, "\"beta\": 0.7");
  const Error e = parse_error(text);
  EXPECT_EQ(e.code(), ErrorCode::InvalidScaling);
  EXPECT_EQ(e.path(), "params[0].maps[0].beta");
}

TEST(Parse, DatasetErrorHasPointPath) {
  std::string text = kMinimal;
  text.replace(text.find("[2, 0]"), 6, "[1, 0]");
  const Error e = parse_error(text);
  EXPECT_EQ(e.code(), ErrorCode::NonIncreasingAbscissa);
  EXPECT_EQ(e.path(), "datasets[0].points[2]");
}

TEST(Parse, EntriesInAnyOrder) {
  nlohmann::json j = nlohmann::json::parse(
      serialize_problem(load_problem(kProblems + "/example2.problem")));
  std::swap(j["datasets"][0], j["datasets"][1]);
  std::swap(j["params"][0], j["params"][1]);
  const GDIFSystem a = build_problem(parse_problem(j.dump()));
  const GDIFSystem b = fx::second_system();
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t n = 0; n < b.maps_of(r).size(); ++n) {
      EXPECT_EQ(a.maps_of(r)[n], b.maps_of(r)[n]);
    }
  }
}

TEST(Parse, DuplicateVertex) {
  nlohmann::json j = nlohmann::json::parse(kMinimal);
  j["datasets"].push_back(j["datasets"][0]);
  EXPECT_EQ(parse_error(j.dump()).code(), ErrorCode::StructuralMismatch);
}

TEST(Serialize, RoundTrip) {
  for (const char* name :
       {"example1.problem", "example2.problem", "example3_table1.problem"}) {
    ProblemDocument doc = load_problem(kProblems + "/" + name);
    doc.render = RenderSettings{};
    doc.render->colors = {"#000000", "#ff0000"};
    doc.overrides.push_back({2, 3, "c", 0.125});
    const ProblemDocument again = parse_problem(serialize_problem(doc));
    EXPECT_EQ(doc, again) << name;
    EXPECT_EQ(serialize_problem(again), serialize_problem(doc));
  }
}

TEST(Serialize, ExactDoubles) {
  ProblemDocument doc = parse_problem(kMinimal);
  doc.params[0].maps[0].alpha = 1.0 / 3;
  doc.datasets[0].points[1].y = 0.1 + 0.2;
  const ProblemDocument again = parse_problem(serialize_problem(doc));
  EXPECT_EQ(again.params[0].maps[0].alpha, 1.0 / 3);
  EXPECT_EQ(again.datasets[0].points[1].y, 0.1 + 0.2);
}

TEST(Override, BreaksJoinUp) {
  ProblemDocument doc = load_problem(kProblems + "/example1.problem");
  doc.overrides.push_back({1, 2, "d", 0.9});
  const GDIFSystem sys = build_problem(doc);
  EXPECT_GT(sys.join_up_residual(), 0.1);
  VerifyBudgets b;
  b.run_attractor = false;
  const VerificationReport rep = verify(sys, b);
  EXPECT_FALSE(rep.passed());
  ASSERT_NE(rep.find("join_up_residual"), nullptr);
  EXPECT_FALSE(rep.find("join_up_residual")->passed);
}

TEST(Output, CoefficientTable) {
  std::ostringstream csv;
  write_coefficients(csv, fx::example_system(), TableFormat::Csv);
  std::istringstream lines(csv.str());
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  EXPECT_EQ(header, "r,n,source,a,b,c,d,e,f,alpha,beta,gamma");
  EXPECT_EQ(first.rfind("1,1,1,0.2", 0), 0u);
  std::size_t rows = 1;
  for (std::string l; std::getline(lines, l);) ++rows;
  EXPECT_EQ(rows, 9u);
}

TEST(Output, SamplesCsv) {
  const GDIFSystem sys = fx::example_system();
  const FixedPointResult r = solve_fixed_point(sys);
  std::ostringstream out;
  write_samples_csv(out, sys, r.functions);
  const std::string s = out.str();
  EXPECT_EQ(s.rfind("vertex,x,f1,f2\n1,0,5,5\n", 0), 0u);
}

TEST(Render, TwoPanelsWithKnots) {
  const GDIFSystem sys = fx::example_system();
  const FixedPointResult r = solve_fixed_point(sys);
  const std::string svg = render_svg(sys, &r.functions, nullptr);
  auto count = [&](const std::string& what) {
    std::size_t n = 0;
    for (auto p = svg.find(what); p != std::string::npos; p = svg.find(what, p + 1)) ++n;
    return n;
  };
  EXPECT_EQ(count("class=\"panel\""), 2u);
  EXPECT_EQ(count("class=\"knot\""), 11u);
  EXPECT_EQ(count("class=\"f1\""), 2u);
  EXPECT_EQ(count("class=\"f2\""), 0u);
  EXPECT_NE(svg.find("vertex 1: K = [3, 2]"), std::string::npos);
  EXPECT_NE(svg.find("vertex 2: K = [1, 3]"), std::string::npos);
  EXPECT_EQ(svg, render_svg(sys, &r.functions, nullptr));
}

TEST(Render, CloudOnlyAndEmpty) {
  const GDIFSystem sys = fx::example_system();
  ChaosOptions o;
  o.steps = 2000;
  const VertexSets clouds = chaos_game(sys, o);
  const std::string svg = render_svg(sys, nullptr, &clouds);
  EXPECT_NE(svg.find("class=\"cloud\""), std::string::npos);
  try {
    render_svg(sys, nullptr, nullptr);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyInput);
  }
}

TEST(Render, ConstantZeroIsFlat) {
  std::vector<GeneralizedDataset> ds;
  ds.push_back(validate_dataset({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}, 1));
  const GraphSpec g = contiguous_graph({{2}});
  const GDIFSystem sys =
      build_system(std::move(ds), g, uniform_scaling(g, {0.5, 0.2, 0.4}));
  const FixedPointResult r = solve_fixed_point(sys, {8, 1e-8, 100});
  const std::string svg = render_svg(sys, &r.functions, nullptr);
  const auto start = svg.find("points=\"", svg.find("class=\"f1\"")) + 8;
  const std::string pts = svg.substr(start, svg.find('"', start) - start);
  std::istringstream in(pts);
  std::string pair, y0;
  while (in >> pair) {
    const std::string y = pair.substr(pair.find(',') + 1);
    if (y0.empty()) y0 = y;
    EXPECT_EQ(y, y0);
  }
}

TEST(Verify, ExampleWithoutAttractor) {
  VerifyBudgets b;
  b.run_attractor = false;
  const VerificationReport rep = verify(fx::example_system(), b);
  EXPECT_TRUE(rep.passed()) << format_report_text(rep);
  EXPECT_TRUE(rep.find("attractor_convergence")->skipped);
  EXPECT_LE(rep.empirical_ratio, 0.72);
  const auto j = nlohmann::json::parse(format_report_json(rep));
  EXPECT_TRUE(j["passed"].get<bool>());
  for (const auto& c : j["checks"]) {
    if (c["skipped"].get<bool>()) continue;
    EXPECT_EQ(c["passed"].get<bool>(),
              c["value"].get<double>() < c["threshold"].get<double>());
  }
}

TEST(Verify, NonConvergenceIsReported) {
  VerifyBudgets b;
  b.run_attractor = false;
  b.evaluator.max_iters = 5;
  const VerificationReport rep = verify(fx::table_system(), b);
  EXPECT_FALSE(rep.passed());
  EXPECT_FALSE(rep.find("evaluator_convergence")->passed);
  EXPECT_EQ(rep.evaluator_iterations, 5u);
}

TEST(Verify, TableParametersWithEnlargedBudget) {
  VerifyBudgets b;
  b.run_attractor = false;
  b.evaluator = {63, 1e-6, 5000};
  const VerificationReport rep = verify(fx::table_system(), b);
  EXPECT_TRUE(rep.passed()) << format_report_text(rep);
  EXPECT_NEAR(rep.empirical_ratio, 0.99, 0.01);
}
