#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gdchfif/attractor.hpp"
#include "gdchfif/evaluator.hpp"
#include "gdchfif/model.hpp"

namespace gdchfif {

/// A named numeric check. `passed` is always value < threshold (NaN fails);
/// skipped checks neither pass nor fail.
struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool skipped = false;
  bool passed = false;
  std::string note;
};

struct VerifyBudgets {
  FixedPointOptions evaluator{};
  IterateOptions attractor{};
  bool run_attractor = true;
  /// Grid density of the f1 samples compared with the attractor projection.
  std::size_t projection_density = 262144;

  double join_up_threshold = 1e-10;
  double cross_check_threshold = 1e-12;
  double interpolation_threshold = 1e-6;
  double residual_threshold = 1e-6;
  double projection_threshold = 1e-2;
};

struct VerificationReport {
  double join_up_residual = 0.0;
  double solver_cross_check = 0.0;
  HorizontalReport horizontal;
  ContractionFactors factors;
  ContractionCertificate certificate;
  std::size_t evaluator_iterations = 0;
  double evaluator_final_change = 0.0;
  double empirical_ratio = 0.0;
  std::vector<double> interpolation_error;  // per vertex
  double functional_residual = 0.0;
  std::optional<ConvergenceTrace> attractor_trace;
  std::vector<double> projection_gap;  // per vertex

  std::vector<Check> checks;

  bool passed() const;
  const Check* find(const std::string& name) const;
};

/// Runs the solver cross-check, the evaluator, the attractor iteration and
/// the projection comparison, and collects every number with its verdict.
/// Stage failures (no convergence, corrupted coefficients) become failing
/// checks with a note; the report is always returned.
VerificationReport verify(const GDIFSystem& system,
                          const VerifyBudgets& budgets = {});

std::string format_report_text(const VerificationReport& report);
std::string format_report_json(const VerificationReport& report);

}  // namespace gdchfif
