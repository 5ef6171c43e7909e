// Scenario configuration, the population->shock->policy->optimize->metrics
// pipeline, deterministic parallel execution, and output emission.

#ifndef HHSIM_ENGINE_HPP
#define HHSIM_ENGINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hhsim/metrics.hpp"
#include "hhsim/policy.hpp"
#include "hhsim/population.hpp"
#include "hhsim/shock.hpp"
#include "hhsim/wellbeing.hpp"

namespace hhsim {

inline constexpr const char* kVersion = "0.1.0";

struct ExclusionBounds {
  double worst = 0.55;
  double median = 0.40;
  double best = 0.10;
};

struct MetricsConfig {
  PovertyThresholds thresholds;
  double curve_horizon_months = 24.0;
  double curve_step_months = 0.25;
};

struct ScenarioConfig {
  // Exactly one population source.
  std::optional<std::string> population_file;
  ColumnSchema schema;
  int n_households = 10000;
  SynthesisTargets targets;

  ShockTable shock = ShockTable::defaults();
  PolicyCase policy;
  ExclusionBounds exclusion_bounds;
  EconomyParams economy;

  // Ratio of marginal savings utility to marginal consumption utility at the
  // calibration medians (see docs/model.md for how the default was pinned).
  double savings_marginal_anchor = 0.10;
  HorizonMode horizon_mode = HorizonMode::anchored;
  // tract: fit the savings law on per-tract per-capita aggregates (the usual
  // census-data procedure); household: fit on household points directly.
  std::string calibration_level = "tract";

  double tc_months = 3.0;
  std::vector<double> sweep_tc_months = {2.0, 3.0, 6.0, 9.0};
  std::uint64_t seed = 1;
  std::string out_dir = "run_out";
  int threads = 0;  // 0 = hardware concurrency

  MetricsConfig metrics;

  void validate() const;
};

// Configuration file handling (JSON; CLI flags override file values).
ScenarioConfig load_config(const std::string& path);
ScenarioConfig config_from_json_text(const std::string& text);
std::string config_to_json(const ScenarioConfig& cfg);

struct RunSummary {
  std::string case_name;
  double tc_months = 0.0;
  double exclusion_rate = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t population_hash = 0;
  int households = 0;
  int persons = 0;
  int workers = 0;
  int affected_workers = 0;
  int failed_households = 0;
  int invalid_households = 0;
  PovertyRates initial;
  PovertyRates end_of_crisis;
  RecoveryStats recovery;  // affected individuals
  double mean_delta_w = 0.0;
  double total_benefits = 0.0;
  double total_stimulus = 0.0;
};

struct RunResult {
  RunSummary summary;
  SavingsUtilityParams calibration;
  std::vector<HouseholdOutcome> outcomes;
  std::vector<std::string> tract_labels;
  std::string out_dir;
};

// Simulates one household end to end (shock flags must already be set).
HouseholdOutcome simulate_household(const Household& h, const ScenarioConfig& cfg,
                                    const SavingsUtilityParams& su);

// Runs the full pipeline; writes summary.json, run_meta.json, households.csv,
// quintiles.csv, tracts.csv, recovery_curve.csv, population.csv into
// cfg.out_dir when write_outputs is true.
RunResult run_scenario(const ScenarioConfig& cfg, bool write_outputs = true);

// Runs the configured T_C sweep into subdirectories plus a combined sweep.csv.
std::vector<RunResult> run_sweep(const ScenarioConfig& cfg);

// Side-by-side comparison of completed runs (matching population hash
// required). Returns the formatted table; optionally writes CSV.
std::string compare_runs(const std::vector<std::string>& run_dirs,
                         const std::string& csv_out = "");

// Calibration points for the population at the requested level.
std::vector<CalibrationPoint> calibration_points(const std::vector<Household>& population,
                                                 const EconomyParams& p,
                                                 const std::string& level);

// Writes one household's optimal paths as plot-ready CSV rows
// (t_months, consumption, consumption_floored, savings), exact at every
// breakpoint. Returns the written file paths; unknown ids are an error.
std::vector<std::string> trace_households(const ScenarioConfig& cfg,
                                          const std::vector<std::uint32_t>& ids,
                                          const std::string& out_dir);

}  // namespace hhsim

#endif
