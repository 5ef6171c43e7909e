// Command-line front end: scenario runs, crisis-duration sweeps, run
// comparison, population synthesis and calibration reports.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hhsim/engine.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

struct CommonOverrides {
  std::string config_path;
  std::optional<std::string> case_name;
  std::optional<double> tc;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<double> exclusion;
  std::optional<int> threads;
};

void add_common(CLI::App* cmd, CommonOverrides& o, bool want_out = true) {
  cmd->add_option("--config", o.config_path, "scenario config file (JSON)")->required();
  cmd->add_option("--case", [&o](const auto& v) { o.case_name = v[0]; return true; },
                  "policy case override: A, B or C");
  cmd->add_option("--tc", [&o](const auto& v) { o.tc = std::stod(v[0]); return true; },
                  "crisis duration override, months");
  cmd->add_option("--seed", [&o](const auto& v) { o.seed = std::stoull(v[0]); return true; },
                  "master seed override");
  cmd->add_option("--exclusion", [&o](const auto& v) {
                    o.exclusion = std::stod(v[0]);
                    return true;
                  },
                  "benefit exclusion rate override");
  cmd->add_option("--threads", [&o](const auto& v) { o.threads = std::stoi(v[0]); return true; },
                  "worker threads (0 = hardware)");
  if (want_out)
    cmd->add_option("--out", [&o](const auto& v) { o.out = v[0]; return true; },
                    "output directory override");
}

hhsim::ScenarioConfig resolve(const CommonOverrides& o) {
  auto cfg = hhsim::load_config(o.config_path);
  if (o.case_name) cfg.policy.id = hhsim::parse_policy_case(*o.case_name);
  if (o.tc) cfg.tc_months = *o.tc;
  if (o.seed) cfg.seed = *o.seed;
  if (o.out) cfg.out_dir = *o.out;
  if (o.exclusion) cfg.policy.exclusion_rate = *o.exclusion;
  if (o.threads) cfg.threads = *o.threads;
  cfg.validate();
  return cfg;
}

void print_summary(const hhsim::RunSummary& s) {
  std::printf("case %s  tc=%g months  exclusion=%.2f  seed=%llu\n", s.case_name.c_str(),
              s.tc_months, s.exclusion_rate, static_cast<unsigned long long>(s.seed));
  std::printf("  households %d  persons %d  workers %d  affected %d (%.1f%%)\n", s.households,
              s.persons, s.workers, s.affected_workers,
              s.workers > 0 ? 100.0 * s.affected_workers / s.workers : 0.0);
  std::printf("  poverty: initial %.2f%% -> crisis %.2f%%   deep: %.2f%% -> %.2f%%\n",
              100.0 * s.initial.poverty_rate, 100.0 * s.end_of_crisis.poverty_rate,
              100.0 * s.initial.deep_poverty_rate, 100.0 * s.end_of_crisis.deep_poverty_rate);
  if (!s.recovery.empty)
    std::printf("  recovery months (affected): mean %.1f  Q1 %.1f  median %.1f  Q3 %.1f\n",
                s.recovery.mean, s.recovery.q1, s.recovery.median, s.recovery.q3);
  if (s.failed_households > 0)
    std::printf("  WARNING: %d households failed numerically\n", s.failed_households);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"household lockdown-impact microsimulation"};
  app.require_subcommand(1);

  CommonOverrides run_o, sweep_o, synth_o, cal_o;
  auto* run_cmd = app.add_subcommand("run", "run one scenario and write its outputs");
  add_common(run_cmd, run_o);

  auto* sweep_cmd = app.add_subcommand("sweep", "run the configured crisis-duration sweep");
  add_common(sweep_cmd, sweep_o);

  std::vector<std::string> compare_dirs;
  std::string compare_csv;
  auto* cmp_cmd = app.add_subcommand("compare", "compare completed runs side by side");
  cmp_cmd->add_option("dirs", compare_dirs, "run directories")->expected(-2);
  cmp_cmd->add_option("--out", compare_csv, "also write the comparison as CSV");

  std::string synth_out;
  std::optional<int> synth_n;
  auto* synth_cmd = app.add_subcommand("synth", "synthesize a population file only");
  add_common(synth_cmd, synth_o, /*want_out=*/false);
  synth_cmd->add_option("--out", synth_out, "population file to write")->required();
  synth_cmd->add_option("--n", [&synth_n](const auto& v) {
    synth_n = std::stoi(v[0]);
    return true;
  }, "household count override");

  auto* cal_cmd = app.add_subcommand("calibrate", "print the calibration report only");
  add_common(cal_cmd, cal_o, /*want_out=*/false);

  CommonOverrides trace_o;
  std::vector<std::uint32_t> trace_ids;
  std::string trace_out = "traces";
  auto* trace_cmd =
      app.add_subcommand("trace", "export one household's optimal paths as CSV");
  add_common(trace_cmd, trace_o, /*want_out=*/false);
  trace_cmd->add_option("--household", trace_ids, "household id (repeatable)")->required();
  trace_cmd->add_option("--out", trace_out, "directory for trace files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "argument error: %s\n", e.what());
    return kExitConfigError;
  }

  try {
    if (run_cmd->parsed()) {
      hhsim::ScenarioConfig cfg;
      try {
        cfg = resolve(run_o);
      } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
      }
      auto res = hhsim::run_scenario(cfg);
      print_summary(res.summary);
      std::printf("  outputs in %s\n", res.out_dir.c_str());
      return kExitOk;
    }
    if (sweep_cmd->parsed()) {
      hhsim::ScenarioConfig cfg;
      try {
        cfg = resolve(sweep_o);
      } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
      }
      auto results = hhsim::run_sweep(cfg);
      for (const auto& r : results) print_summary(r.summary);
      std::printf("  sweep table in %s/sweep.csv\n", cfg.out_dir.c_str());
      return kExitOk;
    }
    if (cmp_cmd->parsed()) {
      try {
        std::cout << hhsim::compare_runs(compare_dirs, compare_csv);
      } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "compare error: %s\n", e.what());
        return kExitConfigError;
      }
      return kExitOk;
    }
    if (synth_cmd->parsed()) {
      hhsim::ScenarioConfig cfg;
      try {
        cfg = resolve(synth_o);
        if (cfg.population_file)
          throw std::invalid_argument("synth requires a synthesize population source");
      } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
      }
      int n = synth_n.value_or(cfg.n_households);
      hhsim::SynthesisReport rep;
      auto population = hhsim::synthesize_population(n, cfg.targets, cfg.seed, &rep);
      hhsim::write_population_file(synth_out, population);
      std::printf("wrote %d households (%d tracts, %d workers) to %s\n", rep.households,
                  rep.tracts, rep.workers, synth_out.c_str());
      std::printf("  median pc consumption %.0f  median pc savings %.0f  undocumented %.2f%%\n",
                  rep.realized_median_pc_consumption, rep.realized_median_pc_savings,
                  100.0 * rep.realized_undocumented_share);
      return kExitOk;
    }
    if (trace_cmd->parsed()) {
      hhsim::ScenarioConfig cfg;
      std::vector<std::string> written;
      try {
        cfg = resolve(trace_o);
        written = hhsim::trace_households(cfg, trace_ids, trace_out);
      } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
      }
      for (const auto& f : written) std::printf("wrote %s\n", f.c_str());
      return kExitOk;
    }
    if (cal_cmd->parsed()) {
      hhsim::ScenarioConfig cfg;
      try {
        cfg = resolve(cal_o);
      } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
      }
      std::vector<hhsim::Household> population;
      if (cfg.population_file) {
        population = hhsim::ingest_population(*cfg.population_file, cfg.schema);
      } else {
        population = hhsim::synthesize_population(cfg.n_households, cfg.targets, cfg.seed);
      }
      population = hhsim::validate_population(std::move(population), cfg.economy);
      auto pts = hhsim::calibration_points(population, cfg.economy, cfg.calibration_level);
      auto su = hhsim::calibrate_savings_utility(pts, cfg.economy.eta,
                                                 cfg.savings_marginal_anchor);
      std::printf("savings law: S = %.4f * c^%.4f   (%zu %s points, R^2 = %.4f)\n", su.a,
                  su.b, pts.size(), cfg.calibration_level.c_str(), su.r_squared);
      std::printf("utility: alpha = %.6g  beta = %.4f  anchored at medians c=%.2f S=%.2f\n",
                  su.alpha, su.beta, su.median_c, su.median_s);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntimeError;
  }
  return kExitConfigError;
}
