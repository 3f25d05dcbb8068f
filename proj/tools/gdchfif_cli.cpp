#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gdchfif/attractor.hpp"
#include "gdchfif/error.hpp"
#include "gdchfif/evaluator.hpp"
#include "gdchfif/io.hpp"
#include "gdchfif/render.hpp"
#include "gdchfif/solver.hpp"
#include "gdchfif/verify.hpp"

using namespace gdchfif;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct Global {
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string out;
  std::string emit_coeffs;
};

struct EvalFlags {
  std::size_t grid_density = FixedPointOptions{}.grid_density;
  double tol = FixedPointOptions{}.tol;
  std::size_t max_iters = FixedPointOptions{}.max_iters;

  FixedPointOptions options() const { return {grid_density, tol, max_iters}; }
};

struct AttractorFlags {
  std::string mode = "deterministic";
  double tol = IterateOptions{}.tol;
  std::size_t max_iters = IterateOptions{}.max_iters;
  double snap = kDefaultSnapFraction;
  std::uint64_t steps = ChaosOptions{}.steps;
  std::uint64_t burn_in = ChaosOptions{}.burn_in;
  std::string weighting = "uniform";
};

void add_eval_flags(CLI::App* cmd, EvalFlags& f) {
  cmd->add_option("--grid-density", f.grid_density,
                  "grid segments per subinterval")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24));
  cmd->add_option("--tol", f.tol, "sup-norm stopping tolerance")
      ->capture_default_str();
  cmd->add_option("--max-iters", f.max_iters, "iteration budget")
      ->capture_default_str();
}

// The attractor subcommand owns --tol and --max-iters; elsewhere those name
// the evaluator budget.
void add_attractor_flags(CLI::App* cmd, AttractorFlags& f, bool with_mode) {
  const std::string prefix = with_mode ? "--" : "--attractor-";
  if (with_mode) {
    cmd->add_option("--mode", f.mode, "deterministic or chaos")
        ->capture_default_str()
        ->check(CLI::IsMember({"deterministic", "chaos"}));
  }
  cmd->add_option(prefix + "tol", f.tol,
                  "Hausdorff tolerance of the deterministic iteration")
      ->capture_default_str();
  cmd->add_option(prefix + "max-iters", f.max_iters,
                  "step budget of the deterministic iteration")
      ->capture_default_str();
  cmd->add_option("--snap", f.snap,
                  "dedup cell as a fraction of each axis range (0 = off)")
      ->capture_default_str();
  cmd->add_option("--steps", f.steps, "chaos game steps")->capture_default_str();
  cmd->add_option("--burn-in", f.burn_in, "chaos game steps discarded")
      ->capture_default_str();
  cmd->add_option("--weighting", f.weighting, "uniform or contraction")
      ->capture_default_str()
      ->check(CLI::IsMember({"uniform", "contraction"}));
}

IterateOptions iterate_options(const AttractorFlags& f) {
  return {f.tol, f.max_iters, f.snap};
}

ChaosOptions chaos_options(const AttractorFlags& f, std::uint64_t seed) {
  ChaosOptions o;
  o.steps = f.steps;
  o.seed = seed;
  o.burn_in = f.burn_in;
  o.weighting = f.weighting == "contraction"
                    ? MapWeighting::ProportionalToContraction
                    : MapWeighting::Uniform;
  return o;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) {
        throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
      }
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void write_trace(std::ostream& out, const ConvergenceTrace& trace) {
  out << "step,distance,ratio\n";
  char line[96];
  for (std::size_t i = 0; i < trace.distances.size(); ++i) {
    const double ratio = i == 0 ? 0.0 : trace.ratios[i - 1];
    std::snprintf(line, sizeof line, "%zu,%.17g,%.17g\n", i + 1,
                  trace.distances[i], ratio);
    out << line;
  }
}

GDIFSystem load_system(const std::string& path, const Global& g,
                       SolverRoute route = SolverRoute::ClosedForm) {
  BuildOptions options;
  options.route = route;
  GDIFSystem system = build_problem(load_problem(path), options);
  if (!g.emit_coeffs.empty()) {
    Output coeffs(g.emit_coeffs);
    write_coefficients(coeffs.stream(), system, TableFormat::Csv);
  }
  return system;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-directed coalescence hidden-variable fractal interpolation"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "expand all help");

  Global g;
  app.add_option("--seed", g.seed, "chaos game seed")->capture_default_str();
  app.add_option("--format", g.format, "text, csv or json")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--out", g.out, "write the main output here instead of stdout");
  app.add_option("--emit-coeffs", g.emit_coeffs,
                 "also write the coefficient table (CSV) to this file");

  std::string problem;
  auto add_problem = [&](CLI::App* cmd) {
    cmd->add_option("problem", problem, "problem document")
        ->required()
        ->check(CLI::ExistingFile);
  };

  auto* validate_cmd = app.add_subcommand("validate", "check a problem document");
  add_problem(validate_cmd);

  auto* solve_cmd = app.add_subcommand("solve", "print the map coefficients");
  add_problem(solve_cmd);
  bool use_oracle = false;
  solve_cmd->add_flag("--oracle", use_oracle,
                      "solve the endpoint systems by elimination");

  auto* eval_cmd = app.add_subcommand("eval", "sample the interpolants (CSV)");
  add_problem(eval_cmd);
  EvalFlags eval_flags;
  add_eval_flags(eval_cmd, eval_flags);

  auto* attractor_cmd =
      app.add_subcommand("attractor", "attractor point clouds (CSV)");
  add_problem(attractor_cmd);
  AttractorFlags attractor_flags;
  add_attractor_flags(attractor_cmd, attractor_flags, true);
  std::string trace_path;
  attractor_cmd->add_option("--trace", trace_path,
                            "write the convergence trace (CSV) here");

  auto* verify_cmd = app.add_subcommand("verify", "run every numeric check");
  add_problem(verify_cmd);
  EvalFlags verify_eval;
  add_eval_flags(verify_cmd, verify_eval);
  AttractorFlags verify_attr;
  add_attractor_flags(verify_cmd, verify_attr, false);
  bool no_attractor = false;
  std::size_t projection_density = VerifyBudgets{}.projection_density;
  verify_cmd->add_flag("--no-attractor", no_attractor,
                       "skip the attractor and projection checks");
  verify_cmd->add_option("--projection-density", projection_density,
                         "grid density of the f1 graph compared with the "
                         "attractor")
      ->capture_default_str();

  auto* render_cmd = app.add_subcommand("render", "draw the interpolants (SVG)");
  add_problem(render_cmd);
  EvalFlags render_eval;
  add_eval_flags(render_cmd, render_eval);
  AttractorFlags render_attr;
  add_attractor_flags(render_cmd, render_attr, false);
  std::string cloud = "none";
  bool show_f2 = false;
  render_cmd->add_option("--cloud", cloud, "none, chaos or deterministic")
      ->capture_default_str()
      ->check(CLI::IsMember({"none", "chaos", "deterministic"}));
  render_cmd->add_flag("--show-f2", show_f2, "also draw the hidden component");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*validate_cmd) {
      const GDIFSystem system = load_system(problem, g);
      Output out(g.out);
      out.stream() << "ok: " << system.vertex_count() << " vertices, "
                   << system.map_count() << " maps, join-up residual "
                   << system.join_up_residual() << '\n';
      return 0;
    }

    if (*solve_cmd) {
      const GDIFSystem system = load_system(
          problem, g, use_oracle ? SolverRoute::LinearOracle : SolverRoute::ClosedForm);
      Output out(g.out);
      write_coefficients(out.stream(), system,
                         g.format == "csv" ? TableFormat::Csv : TableFormat::Text);
      return 0;
    }

    if (*eval_cmd) {
      const GDIFSystem system = load_system(problem, g);
      const FixedPointResult fixed =
          solve_fixed_point(system, eval_flags.options());
      Output out(g.out);
      write_samples_csv(out.stream(), system, fixed.functions);
      std::cerr << "converged in " << fixed.iterations
                << " iterations, empirical ratio " << fixed.empirical_ratio
                << '\n';
      return 0;
    }

    if (*attractor_cmd) {
      const GDIFSystem system = load_system(problem, g);
      Output out(g.out);
      if (attractor_flags.mode == "chaos") {
        const VertexSets clouds =
            chaos_game(system, chaos_options(attractor_flags, g.seed));
        write_cloud_csv(out.stream(), system, clouds);
        return 0;
      }
      const AttractorResult result = iterate_to_tolerance(
          system, knot_sets(system), iterate_options(attractor_flags));
      write_cloud_csv(out.stream(), system, result.sets);
      if (!trace_path.empty()) {
        Output trace(trace_path);
        write_trace(trace.stream(), result.trace);
      } else {
        std::cerr << "converged in " << result.trace.distances.size()
                  << " steps, final distance "
                  << result.trace.distances.back() << '\n';
      }
      return 0;
    }

    if (*verify_cmd) {
      const GDIFSystem system = load_system(problem, g);
      VerifyBudgets budgets;
      budgets.evaluator = verify_eval.options();
      budgets.attractor = iterate_options(verify_attr);
      budgets.run_attractor = !no_attractor;
      budgets.projection_density = projection_density;
      const VerificationReport report = verify(system, budgets);
      Output out(g.out);
      out.stream() << (g.format == "json" ? format_report_json(report)
                                          : format_report_text(report));
      return report.passed() ? 0 : kExitFail;
    }

    if (*render_cmd) {
      const ProblemDocument doc = load_problem(problem);
      const GDIFSystem system = load_system(problem, g);
      RenderSettings settings = doc.render.value_or(RenderSettings{});
      if (show_f2) settings.show_f2 = true;
      const FixedPointResult fixed =
          solve_fixed_point(system, render_eval.options());
      std::optional<VertexSets> clouds;
      if (cloud == "chaos") {
        clouds = chaos_game(system, chaos_options(render_attr, g.seed));
      } else if (cloud == "deterministic") {
        clouds = iterate_to_tolerance(system, knot_sets(system),
                                      iterate_options(render_attr))
                     .sets;
      }
      Output out(g.out);
      out.stream() << render_svg(system, &fixed.functions,
                                 clouds ? &*clouds : nullptr, settings);
      return 0;
    }
  } catch (const NoConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    const auto& trace = e.trace();
    if (!trace.empty()) {
      std::cerr << "last change " << trace.back() << " after " << trace.size()
                << " iterations\n";
    }
    return kExitFail;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}
