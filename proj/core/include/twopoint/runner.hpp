#ifndef TWOPOINT_RUNNER_HPP
#define TWOPOINT_RUNNER_HPP

#include <string>
#include <vector>

#include "twopoint/config.hpp"
#include "twopoint/verify.hpp"

namespace twopoint {

struct SummaryRow {
  std::string check;
  bool pass = false;
  double worst = 0.0;
  double tol = 0.0;
};

struct SensitivityRow {
  double epsilon = 0.0;
  std::string check;
  double worst = 0.0;
};

struct RunnerOptions {
  int threads = 1;
};

struct RunResult {
  int exit_code = 0;  // 0 all pass, 1 check failed (2/3 arrive as exceptions)
  std::string output_dir;
  std::vector<SummaryRow> summary;
  std::vector<SensitivityRow> sensitivity;
  std::vector<std::string> notes;
};

/// Output directory: the TWOPOINT_OUT_DIR environment variable overrides the
/// config's [output] dir.
std::string resolve_output_dir(const ExperimentConfig& cfg);

/// Full pipeline: barrier verification, containment, evolution, remaining
/// checks; one CSV per check plus summary.csv. Dependent checks are skipped
/// when their hypothesis check fails, so a theorem is never reported as
/// failing under an unverified hypothesis.
RunResult run_experiment(const ExperimentConfig& cfg, const RunnerOptions& opts = {});

/// Builds the configured barrier and verifies its condition only.
RunResult run_barrier_check(const ExperimentConfig& cfg, const RunnerOptions& opts = {});

/// Constructs a barrier with solve_barrier, exports it as CSV and verifies it.
RunResult run_barrier_solve(const ExperimentConfig& cfg, const RunnerOptions& opts = {});

// Report emission with the exact documented headers; floats use 9 significant
// digits and rows are time-major, so identical runs give identical bytes.
void emit_report(const TwoPointReport& report, const std::string& path);
void emit_report(const GradientReport& report, const std::string& path);
void emit_report(const LiYauReport& report, const std::string& path);
void emit_report(const ConditionReport& report, const std::string& path);
void emit_summary(const std::vector<SummaryRow>& rows, const std::string& path);
void emit_sensitivity(const std::vector<SensitivityRow>& rows, const std::string& path);

}  // namespace twopoint

#endif  // TWOPOINT_RUNNER_HPP
