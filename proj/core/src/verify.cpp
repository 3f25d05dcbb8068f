#include "gdchfif/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "gdchfif/solver.hpp"
#include "json.hpp"

namespace gdchfif {

namespace {

Check make_check(std::string name, double value, double threshold,
                 std::string note = {}) {
  Check c;
  c.name = std::move(name);
  c.value = value;
  c.threshold = threshold;
  c.passed = value < threshold;
  c.note = std::move(note);
  return c;
}

Check failed_check(std::string name, double threshold, std::string note) {
  Check c;
  c.name = std::move(name);
  c.value = std::nan("");
  c.threshold = threshold;
  c.passed = false;
  c.note = std::move(note);
  return c;
}

Check skipped_check(std::string name, double threshold, std::string note) {
  Check c;
  c.name = std::move(name);
  c.value = std::nan("");
  c.threshold = threshold;
  c.skipped = true;
  c.note = std::move(note);
  return c;
}

std::string label(const GDIFSystem& system, std::size_t r) {
  return std::to_string(system.dataset(r).vertex_id());
}

}  // namespace

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.skipped || c.passed; });
}

const Check* VerificationReport::find(const std::string& name) const {
  for (const Check& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

VerificationReport verify(const GDIFSystem& system,
                          const VerifyBudgets& budgets) {
  VerificationReport rep;
  auto& checks = rep.checks;

  rep.join_up_residual = system.join_up_residual();
  checks.push_back(make_check("join_up_residual", rep.join_up_residual,
                              budgets.join_up_threshold));

  rep.solver_cross_check = solver_cross_check(system);
  checks.push_back(make_check("solver_cross_check", rep.solver_cross_check,
                              budgets.cross_check_threshold,
                              "closed form vs linear oracle, relative"));

  rep.horizontal = horizontal_ratios(system.datasets(), system.graph());
  checks.push_back(
      make_check("horizontal_contraction", rep.horizontal.max_ratio, 1.0));

  rep.certificate = contraction_certificate(system);
  checks.push_back(make_check("contraction_certificate",
                              rep.certificate.factor, 1.0,
                              "weighted-norm bound on every map"));

  rep.factors = contraction_factors(system);

  std::optional<FixedPointResult> fixed;
  try {
    fixed = solve_fixed_point(system, budgets.evaluator);
  } catch (const NoConvergenceError& e) {
    rep.evaluator_iterations = e.trace().size();
    rep.evaluator_final_change = e.trace().empty() ? std::nan("") : e.trace().back();
    checks.push_back(make_check("evaluator_convergence",
                                rep.evaluator_final_change,
                                budgets.evaluator.tol, e.message()));
  } catch (const Error& e) {
    checks.push_back(
        failed_check("evaluator_convergence", budgets.evaluator.tol, e.what()));
  }

  if (fixed) {
    rep.evaluator_iterations = fixed->iterations;
    rep.evaluator_final_change = fixed->changes.back();
    rep.empirical_ratio = fixed->empirical_ratio;
    checks.push_back(make_check("evaluator_convergence",
                                rep.evaluator_final_change,
                                budgets.evaluator.tol));
    checks.push_back(make_check("empirical_ratio", rep.empirical_ratio, 1.0,
                                "geometric mean of the last five step ratios"));
    for (std::size_t r = 0; r < system.vertex_count(); ++r) {
      const double err =
          interpolation_error(system.dataset(r), fixed->functions[r]);
      rep.interpolation_error.push_back(err);
      checks.push_back(make_check("interpolation[" + label(system, r) + "]",
                                  err, budgets.interpolation_threshold));
    }
    try {
      rep.functional_residual = functional_residual(system, fixed->functions);
      checks.push_back(make_check("functional_residual",
                                  rep.functional_residual,
                                  budgets.residual_threshold));
    } catch (const Error& e) {
      checks.push_back(failed_check("functional_residual",
                                    budgets.residual_threshold, e.what()));
    }
  } else {
    checks.push_back(failed_check("interpolation", budgets.interpolation_threshold,
                                  "evaluator did not converge"));
    checks.push_back(failed_check("functional_residual",
                                  budgets.residual_threshold,
                                  "evaluator did not converge"));
  }

  if (!budgets.run_attractor) {
    checks.push_back(skipped_check("attractor_convergence",
                                   budgets.attractor.tol, "disabled"));
    checks.push_back(skipped_check("projection_gap",
                                   budgets.projection_threshold, "disabled"));
    return rep;
  }

  std::optional<AttractorResult> attractor;
  try {
    attractor = iterate_to_tolerance(system, knot_sets(system),
                                     budgets.attractor);
  } catch (const NoConvergenceError& e) {
    rep.attractor_trace = make_trace(e.trace());
    checks.push_back(make_check(
        "attractor_convergence",
        e.trace().empty() ? std::nan("") : e.trace().back(),
        budgets.attractor.tol, e.message()));
  } catch (const Error& e) {
    checks.push_back(
        failed_check("attractor_convergence", budgets.attractor.tol, e.what()));
  }
  if (!attractor) {
    checks.push_back(failed_check("projection_gap", budgets.projection_threshold,
                                  "attractor did not converge"));
    return rep;
  }
  rep.attractor_trace = attractor->trace;
  checks.push_back(make_check("attractor_convergence",
                              attractor->trace.distances.back(),
                              budgets.attractor.tol));

  try {
    FixedPointOptions dense = budgets.evaluator;
    dense.grid_density = budgets.projection_density;
    const FixedPointResult fine = solve_fixed_point(system, dense);
    for (std::size_t r = 0; r < system.vertex_count(); ++r) {
      const SampledFunction& s = fine.functions[r];
      std::vector<Point3> graph;
      graph.reserve(s.grid.size());
      for (std::size_t i = 0; i < s.grid.size(); ++i) {
        graph.push_back({s.grid[i], s.f1[i], 0.0});
      }
      const auto projected = project_xy(attractor->sets[r].points);
      const double gap = hausdorff_distance(projected, graph);
      rep.projection_gap.push_back(gap);
      checks.push_back(make_check("projection_gap[" + label(system, r) + "]",
                                  gap, budgets.projection_threshold));
    }
  } catch (const Error& e) {
    checks.push_back(failed_check("projection_gap", budgets.projection_threshold,
                                  e.what()));
  }
  return rep;
}

std::string format_report_text(const VerificationReport& report) {
  std::ostringstream out;
  char line[512];
  std::snprintf(line, sizeof line, "%-28s %14s %12s  %s\n", "check", "value",
                "threshold", "verdict");
  out << line;
  for (const Check& c : report.checks) {
    const char* verdict = c.skipped ? "SKIP" : (c.passed ? "PASS" : "FAIL");
    std::snprintf(line, sizeof line, "%-28s %14.6g %12.3g  %s", c.name.c_str(),
                  c.value, c.threshold, verdict);
    out << line;
    if (!c.note.empty()) out << "  (" << c.note << ")";
    out << '\n';
  }
  std::snprintf(line, sizeof line,
                "contraction factors: a-priori %.6g, conservative %.6g, "
                "certificate %.6g (theta %.6g)\n",
                report.factors.apriori, report.factors.conservative,
                report.certificate.factor, report.certificate.theta);
  out << line;
  std::snprintf(line, sizeof line,
                "evaluator: %zu iterations, empirical ratio %.6g\n",
                report.evaluator_iterations, report.empirical_ratio);
  out << line;
  if (report.attractor_trace) {
    std::snprintf(line, sizeof line,
                  "attractor: %zu steps, tail ratio %.6g\n",
                  report.attractor_trace->distances.size(),
                  report.attractor_trace->tail_ratio);
    out << line;
  }
  out << (report.passed() ? "RESULT: PASS\n" : "RESULT: FAIL\n");
  return out.str();
}

std::string format_report_json(const VerificationReport& report) {
  using nlohmann::json;
  json j;
  j["join_up_residual"] = report.join_up_residual;
  j["solver_cross_check"] = report.solver_cross_check;
  json ratios = json::array();
  for (const auto& h : report.horizontal.ratios) {
    ratios.push_back({{"vertex", h.vertex + 1},
                      {"subinterval", h.subinterval},
                      {"source", h.source + 1},
                      {"ratio", h.ratio}});
  }
  j["horizontal_ratios"] = std::move(ratios);
  j["contraction"] = {{"apriori", report.factors.apriori},
                      {"conservative", report.factors.conservative},
                      {"certificate", report.certificate.factor},
                      {"theta", report.certificate.theta}};
  j["evaluator"] = {{"iterations", report.evaluator_iterations},
                    {"final_change", report.evaluator_final_change},
                    {"empirical_ratio", report.empirical_ratio}};
  j["interpolation_error"] = report.interpolation_error;
  j["functional_residual"] = report.functional_residual;
  if (report.attractor_trace) {
    j["attractor"] = {{"distances", report.attractor_trace->distances},
                      {"tail_ratio", report.attractor_trace->tail_ratio}};
  }
  j["projection_gap"] = report.projection_gap;
  json checks = json::array();
  for (const Check& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"value", c.value},
                      {"threshold", c.threshold},
                      {"skipped", c.skipped},
                      {"passed", c.passed},
                      {"note", c.note}});
  }
  j["checks"] = std::move(checks);
  j["passed"] = report.passed();
  return j.dump(2) + "\n";
}

}  // namespace gdchfif
