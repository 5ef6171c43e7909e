#include "hhsim/engine.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace hhsim {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

void ScenarioConfig::validate() const {
  if (population_file && population_file->empty())
    throw std::invalid_argument("config: population file path is empty");
  if (!population_file) {
    if (n_households < 1) throw std::invalid_argument("config: n_households must be >= 1");
    targets.validate();
  }
  shock.validate();
  policy.validate();
  economy.validate();
  if (!(savings_marginal_anchor > 0.0))
    throw std::invalid_argument("config: savings_marginal_anchor must be > 0");
  if (!(tc_months > 0.0)) throw std::invalid_argument("config: tc_months must be > 0");
  std::vector<double> sw = sweep_tc_months;
  std::sort(sw.begin(), sw.end());
  for (std::size_t i = 0; i < sw.size(); ++i) {
    if (!(sw[i] > 0.0)) throw std::invalid_argument("config: sweep values must be > 0");
    if (i > 0 && sw[i] == sw[i - 1])
      throw std::invalid_argument("config: sweep values must be distinct");
  }
  if (calibration_level != "tract" && calibration_level != "household")
    throw std::invalid_argument("config: calibration level must be tract or household");
  if (!(metrics.thresholds.poverty_annual > 0.0 && metrics.thresholds.deep_annual > 0.0))
    throw std::invalid_argument("config: poverty thresholds must be > 0");
  if (!(metrics.curve_step_months > 0.0 && metrics.curve_horizon_months > 0.0))
    throw std::invalid_argument("config: curve grid must be positive");
  if (threads < 0) throw std::invalid_argument("config: threads must be >= 0");
}

// ---------------------------------------------------------------------------
// Config JSON
// ---------------------------------------------------------------------------

namespace {

// <unit> suffixes are part of the key names so time-like quantities are
// always explicit at the boundary; internally everything runs in months.
ordered_json config_json(const ScenarioConfig& c) {
  ordered_json j;
  j["seed"] = c.seed;
  j["tc_months"] = c.tc_months;
  j["sweep_tc_months"] = c.sweep_tc_months;
  j["out_dir"] = c.out_dir;
  j["threads"] = c.threads;
  j["horizon_mode"] = horizon_mode_name(c.horizon_mode);

  ordered_json pop;
  if (c.population_file) {
    pop["file"] = *c.population_file;
    ordered_json sch = ordered_json::object();
    for (const auto& [k, v] : c.schema) sch[k] = v;
    pop["schema"] = sch;
  } else {
    ordered_json synth;
    synth["n_households"] = c.n_households;
    const auto& t = c.targets;
    synth["median_pc_consumption"] = t.median_pc_consumption;
    synth["median_pc_savings"] = t.median_pc_savings;
    synth["income_gini"] = t.income_gini;
    synth["savings_noise_sigma"] = t.savings_noise_sigma;
    synth["savings_slope_b"] = t.savings_slope_b;
    synth["undocumented_share"] = t.undocumented_share;
    ordered_json shares;
    for (int s = 0; s < kNumSectors; ++s) shares[kSectorNames[s]] = t.sector_shares[s];
    synth["sector_shares"] = shares;
    synth["size_probs"] = t.size_probs;
    synth["zero_worker_share"] = t.zero_worker_share;
    synth["second_worker_share"] = t.second_worker_share;
    synth["third_worker_share"] = t.third_worker_share;
    synth["size_income_exponent"] = t.size_income_exponent;
    synth["households_per_tract"] = t.households_per_tract;
    synth["tract_income_sigma"] = t.tract_income_sigma;
    synth["housing_cost_ratio"] = t.housing_cost_ratio;
    synth["housing_jitter_sigma"] = t.housing_jitter_sigma;
    synth["owner_share"] = t.owner_share;
    synth["owner_equity_share"] = t.owner_equity_share;
    synth["capital_income_ratio"] = t.capital_income_ratio;
    synth["capital_jitter_sigma"] = t.capital_jitter_sigma;
    synth["sector_rank_sigma"] = t.sector_rank_sigma;
    synth["undocumented_wage_tilt"] = t.undocumented_wage_tilt;
    pop["synthesize"] = synth;
  }
  j["population"] = pop;

  ordered_json econ;
  econ["pi_per_year"] = c.economy.pi_year;
  econ["eta"] = c.economy.eta;
  econ["rho_per_year"] = c.economy.rho_month * 12.0;
  econ["gamma"] = c.economy.gamma;
  econ["c_min"] = c.economy.c_min;
  j["economy"] = econ;

  ordered_json shock;
  shock["loss_fraction"] = c.shock.loss_fraction;
  ordered_json aff;
  for (int s = 0; s < kNumSectors; ++s) aff[kSectorNames[s]] = c.shock.affected_share[s];
  shock["affected_share"] = aff;
  j["shock"] = shock;

  ordered_json pol;
  pol["case"] = policy_case_name(c.policy.id);
  pol["exclusion_rate"] = c.policy.exclusion_rate;
  ordered_json bounds;
  bounds["worst"] = c.exclusion_bounds.worst;
  bounds["median"] = c.exclusion_bounds.median;
  bounds["best"] = c.exclusion_bounds.best;
  pol["exclusion_bounds"] = bounds;
  pol["puc_expiry_months"] = c.policy.puc_expiry_months;
  pol["ui_duration_b_months"] = c.policy.ui_b_duration_months;
  pol["ui_duration_c_months"] = c.policy.ui_c_duration_months;
  pol["puc_weekly"] = c.policy.puc_weekly;
  pol["delay_mean_weeks"] = c.policy.delay_mean_weeks;
  pol["delay_sd_weeks"] = c.policy.delay_sd_weeks;
  j["policy"] = pol;

  ordered_json wb;
  wb["savings_marginal_anchor"] = c.savings_marginal_anchor;
  wb["calibration_level"] = c.calibration_level;
  j["wellbeing"] = wb;

  ordered_json met;
  met["poverty_annual"] = c.metrics.thresholds.poverty_annual;
  met["deep_annual"] = c.metrics.thresholds.deep_annual;
  met["curve_horizon_months"] = c.metrics.curve_horizon_months;
  met["curve_step_months"] = c.metrics.curve_step_months;
  j["metrics"] = met;
  return j;
}

template <typename T>
void maybe(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void parse_config_json(const nlohmann::json& j, ScenarioConfig& c) {
  maybe(j, "seed", c.seed);
  maybe(j, "tc_months", c.tc_months);
  maybe(j, "sweep_tc_months", c.sweep_tc_months);
  maybe(j, "out_dir", c.out_dir);
  maybe(j, "threads", c.threads);
  if (j.contains("horizon_mode"))
    c.horizon_mode = parse_horizon_mode(j.at("horizon_mode").get<std::string>());

  if (j.contains("population")) {
    const auto& pop = j.at("population");
    if (pop.contains("file") && pop.contains("synthesize"))
      throw std::invalid_argument("config: population must have exactly one source");
    if (pop.contains("file")) {
      c.population_file = pop.at("file").get<std::string>();
      if (pop.contains("schema"))
        for (const auto& [k, v] : pop.at("schema").items())
          c.schema[k] = v.get<std::string>();
    }
    if (pop.contains("synthesize")) {
      const auto& s = pop.at("synthesize");
      auto& t = c.targets;
      maybe(s, "n_households", c.n_households);
      maybe(s, "median_pc_consumption", t.median_pc_consumption);
      maybe(s, "median_pc_savings", t.median_pc_savings);
      maybe(s, "income_gini", t.income_gini);
      maybe(s, "savings_noise_sigma", t.savings_noise_sigma);
      maybe(s, "savings_slope_b", t.savings_slope_b);
      maybe(s, "undocumented_share", t.undocumented_share);
      if (s.contains("sector_shares"))
        for (const auto& [k, v] : s.at("sector_shares").items())
          t.sector_shares[static_cast<int>(parse_sector(k))] = v.get<double>();
      maybe(s, "size_probs", t.size_probs);
      maybe(s, "zero_worker_share", t.zero_worker_share);
      maybe(s, "second_worker_share", t.second_worker_share);
      maybe(s, "third_worker_share", t.third_worker_share);
      maybe(s, "size_income_exponent", t.size_income_exponent);
      maybe(s, "households_per_tract", t.households_per_tract);
      maybe(s, "tract_income_sigma", t.tract_income_sigma);
      maybe(s, "housing_cost_ratio", t.housing_cost_ratio);
      maybe(s, "housing_jitter_sigma", t.housing_jitter_sigma);
      maybe(s, "owner_share", t.owner_share);
      maybe(s, "owner_equity_share", t.owner_equity_share);
      maybe(s, "capital_income_ratio", t.capital_income_ratio);
      maybe(s, "capital_jitter_sigma", t.capital_jitter_sigma);
      maybe(s, "sector_rank_sigma", t.sector_rank_sigma);
      maybe(s, "undocumented_wage_tilt", t.undocumented_wage_tilt);
    }
  }

  if (j.contains("economy")) {
    const auto& e = j.at("economy");
    maybe(e, "pi_per_year", c.economy.pi_year);
    maybe(e, "eta", c.economy.eta);
    if (e.contains("rho_per_year")) c.economy.rho_month = e.at("rho_per_year").get<double>() / 12.0;
    maybe(e, "gamma", c.economy.gamma);
    maybe(e, "c_min", c.economy.c_min);
  }

  if (j.contains("shock")) {
    const auto& s = j.at("shock");
    maybe(s, "loss_fraction", c.shock.loss_fraction);
    if (s.contains("affected_share"))
      for (const auto& [k, v] : s.at("affected_share").items())
        c.shock.affected_share[static_cast<int>(parse_sector(k))] = v.get<double>();
  }

  if (j.contains("policy")) {
    const auto& p = j.at("policy");
    if (p.contains("case")) c.policy.id = parse_policy_case(p.at("case").get<std::string>());
    maybe(p, "exclusion_rate", c.policy.exclusion_rate);
    if (p.contains("exclusion_bounds")) {
      const auto& b = p.at("exclusion_bounds");
      maybe(b, "worst", c.exclusion_bounds.worst);
      maybe(b, "median", c.exclusion_bounds.median);
      maybe(b, "best", c.exclusion_bounds.best);
    }
    maybe(p, "puc_expiry_months", c.policy.puc_expiry_months);
    maybe(p, "ui_duration_b_months", c.policy.ui_b_duration_months);
    maybe(p, "ui_duration_c_months", c.policy.ui_c_duration_months);
    maybe(p, "puc_weekly", c.policy.puc_weekly);
    maybe(p, "delay_mean_weeks", c.policy.delay_mean_weeks);
    maybe(p, "delay_sd_weeks", c.policy.delay_sd_weeks);
  }

  if (j.contains("wellbeing")) {
    const auto& w = j.at("wellbeing");
    maybe(w, "savings_marginal_anchor", c.savings_marginal_anchor);
    maybe(w, "calibration_level", c.calibration_level);
  }

  if (j.contains("metrics")) {
    const auto& m = j.at("metrics");
    maybe(m, "poverty_annual", c.metrics.thresholds.poverty_annual);
    maybe(m, "deep_annual", c.metrics.thresholds.deep_annual);
    maybe(m, "curve_horizon_months", c.metrics.curve_horizon_months);
    maybe(m, "curve_step_months", c.metrics.curve_step_months);
  }
}

}  // namespace

ScenarioConfig config_from_json_text(const std::string& text) {
  ScenarioConfig cfg;
  auto j = nlohmann::json::parse(text);
  parse_config_json(j, cfg);
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json_text(ss.str());
}

std::string config_to_json(const ScenarioConfig& cfg) { return config_json(cfg).dump(2); }

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

std::vector<CalibrationPoint> calibration_points(const std::vector<Household>& population,
                                                 const EconomyParams& p,
                                                 const std::string& level) {
  std::vector<CalibrationPoint> pts;
  if (level == "household") {
    for (const auto& h : population) {
      double c = initial_consumption(h, p) / h.size;
      double s = h.savings0 / h.size;
      if (c > 0.0 && s > 0.0) pts.push_back({c, s});
    }
    return pts;
  }
  // Per-tract geometric means of per-capita consumption and savings.
  struct Agg {
    double lc = 0.0, ls = 0.0;
    int n = 0;
  };
  std::map<std::uint32_t, Agg> tracts;
  for (const auto& h : population) {
    double c = initial_consumption(h, p) / h.size;
    double s = h.savings0 / h.size;
    if (!(c > 0.0 && s > 0.0)) continue;
    auto& a = tracts[h.tract_id];
    a.lc += std::log(c);
    a.ls += std::log(s);
    a.n += 1;
  }
  for (const auto& [tid, a] : tracts)
    if (a.n > 0) pts.push_back({std::exp(a.lc / a.n), std::exp(a.ls / a.n)});
  return pts;
}

HouseholdOutcome simulate_household(const Household& h, const ScenarioConfig& cfg,
                                    const SavingsUtilityParams& su) {
  HouseholdOutcome o;
  o.id = h.id;
  o.tract_id = h.tract_id;
  o.size = h.size;
  o.n_workers = static_cast<int>(h.workers.size());
  o.tc = cfg.tc_months;
  o.income0 = initial_income(h, cfg.economy);
  o.c0 = initial_consumption(h, cfg.economy);
  o.s0 = h.savings0;
  for (const auto& w : h.workers)
    if (w.affected) o.n_affected += 1;

  try {
    std::vector<WorkerBenefits> benefits;
    benefits.reserve(h.workers.size());
    for (std::size_t wi = 0; wi < h.workers.size(); ++wi)
      benefits.push_back(
          resolve_worker_benefits(h.workers[wi], cfg.policy, cfg.tc_months, cfg.seed, h.id, wi));

    auto ctx = make_household_context(h, cfg.economy, cfg.shock, benefits, cfg.tc_months);
    o.total_benefits = ctx.total_benefits;
    o.total_stimulus = ctx.total_stimulus;
    o.deposits = ctx.deposits;

    auto res = optimize_final_savings(ctx, su, cfg.economy, cfg.horizon_mode);
    o.sf_star = res.sf_star;
    o.tr = res.tr;
    o.w = res.w;
    o.w0 = res.w0;
    o.delta_w = res.delta_w;

    auto c_path = consumption_path(ctx, res.sf_star, cfg.economy).floored_at(cfg.economy.c_min);
    o.c_end = c_path.value_before(cfg.tc_months);
  } catch (const std::exception&) {
    o.failed = true;
  }
  return o;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_outputs_to(const fs::path& dir, const ScenarioConfig& cfg, const RunResult& res,
                      const std::vector<Household>& population,
                      const std::vector<std::string>& diagnostics) {
  fs::create_directories(dir);
  const auto& outcomes = res.outcomes;
  const auto& sum = res.summary;

  // run_meta.json: full resolved config plus the calibration report.
  ordered_json meta;
  meta["version"] = kVersion;
  meta["config"] = config_json(cfg);
  ordered_json cal;
  cal["a"] = res.calibration.a;
  cal["b"] = res.calibration.b;
  cal["alpha"] = res.calibration.alpha;
  cal["beta"] = res.calibration.beta;
  cal["r_squared"] = res.calibration.r_squared;
  cal["median_c"] = res.calibration.median_c;
  cal["median_s"] = res.calibration.median_s;
  cal["anchor_rho"] = res.calibration.anchor_rho;
  meta["calibration"] = cal;
  meta["population_hash"] = sum.population_hash;
  meta["households"] = sum.households;
  meta["persons"] = sum.persons;
  meta["workers"] = sum.workers;
  meta["affected_workers"] = sum.affected_workers;
  meta["invalid_households"] = sum.invalid_households;
  meta["failed_households"] = sum.failed_households;
  meta["diagnostics"] = diagnostics;
  write_text(dir / "run_meta.json", meta.dump(2) + "\n");

  // summary.json
  ordered_json s;
  s["case"] = sum.case_name;
  s["tc_months"] = sum.tc_months;
  s["exclusion_rate"] = sum.exclusion_rate;
  s["seed"] = sum.seed;
  s["population_hash"] = sum.population_hash;
  s["households"] = sum.households;
  s["persons"] = sum.persons;
  s["workers"] = sum.workers;
  s["affected_workers"] = sum.affected_workers;
  s["failed_households"] = sum.failed_households;
  ordered_json pov;
  pov["initial_poverty_rate"] = sum.initial.poverty_rate;
  pov["initial_deep_poverty_rate"] = sum.initial.deep_poverty_rate;
  pov["crisis_poverty_rate"] = sum.end_of_crisis.poverty_rate;
  pov["crisis_deep_poverty_rate"] = sum.end_of_crisis.deep_poverty_rate;
  pov["poverty_headcount_increase"] = sum.end_of_crisis.headcount_increase;
  pov["deep_poverty_headcount_increase"] = sum.end_of_crisis.deep_headcount_increase;
  s["poverty"] = pov;
  ordered_json rec;
  rec["mean"] = sum.recovery.mean;
  rec["q1"] = sum.recovery.q1;
  rec["median"] = sum.recovery.median;
  rec["q3"] = sum.recovery.q3;
  rec["affected_persons"] = sum.recovery.weight;
  s["recovery_months"] = rec;
  s["mean_delta_w"] = sum.mean_delta_w;
  s["total_benefits"] = sum.total_benefits;
  s["total_stimulus"] = sum.total_stimulus;
  write_text(dir / "summary.json", s.dump(2) + "\n");

  // households.csv
  {
    std::ofstream out(dir / "households.csv");
    out << "id,tract_id,size,workers,affected_workers,income0,c0,s0,c_end,sf_star,"
           "tr_months,w,w0,delta_w,benefits,stimulus,failed\n";
    for (const auto& o : outcomes) {
      out << o.id << "," << o.tract_id << "," << o.size << "," << o.n_workers << ","
          << o.n_affected << "," << fmt_double(o.income0) << "," << fmt_double(o.c0) << ","
          << fmt_double(o.s0) << "," << fmt_double(o.c_end) << "," << fmt_double(o.sf_star)
          << "," << fmt_double(o.tr) << "," << fmt_double(o.w) << "," << fmt_double(o.w0)
          << "," << fmt_double(o.delta_w) << "," << fmt_double(o.total_benefits) << ","
          << fmt_double(o.total_stimulus) << "," << (o.failed ? 1 : 0) << "\n";
    }
  }

  // quintiles.csv
  {
    auto table = quintile_table(outcomes);
    std::ofstream out(dir / "quintiles.csv");
    out << "quintile,persons,consumption_loss_pc,consumption_loss_pct,savings_loss_pc,"
           "recovery_months\n";
    for (int q = 0; q < 5; ++q)
      out << (q + 1) << "," << fmt_double(table[q].persons) << ","
          << fmt_double(table[q].consumption_loss) << ","
          << fmt_double(table[q].consumption_loss_pct) << ","
          << fmt_double(table[q].savings_loss) << ","
          << fmt_double(table[q].recovery_months) << "\n";
  }

  // tracts.csv
  {
    auto rows = tract_summary(outcomes);
    std::ofstream out(dir / "tracts.csv");
    out << "tract_id,persons,consumption_change_pct,recovery_months\n";
    for (const auto& r : rows)
      out << tract_label(res.tract_labels, r.tract_id) << "," << fmt_double(r.persons) << ","
          << fmt_double(r.consumption_change_pct) << "," << fmt_double(r.recovery_months)
          << "\n";
  }

  // recovery_curve.csv
  {
    auto curve = recovery_curve(outcomes, cfg.metrics.curve_horizon_months,
                                cfg.metrics.curve_step_months);
    std::ofstream out(dir / "recovery_curve.csv");
    out << "t_months,savings_share\n";
    for (const auto& p : curve)
      out << fmt_double(p.t) << "," << fmt_double(p.savings_share) << "\n";
  }

  // Canonical tract-level population file for reproducibility.
  write_population_file((dir / "population.csv").string(), population, res.tract_labels);
}

}  // namespace

namespace {

// Shared pipeline prefix: load or synthesize, validate, shock, calibrate.
std::vector<Household> prepare_population(const ScenarioConfig& cfg, RunResult& res,
                                          std::vector<std::string>& diagnostics) {
  std::vector<Household> population;
  if (cfg.population_file) {
    IngestReport rep;
    population = ingest_population(*cfg.population_file, cfg.schema, &rep);
    for (const auto& d : rep.diagnostics) diagnostics.push_back(d);
    res.tract_labels = rep.tract_labels;
  } else {
    population = synthesize_population(cfg.n_households, cfg.targets, cfg.seed);
  }

  std::size_t raw_count = population.size();
  population = validate_population(std::move(population), cfg.economy, &diagnostics);
  res.summary.invalid_households = static_cast<int>(raw_count - population.size());

  assign_shock(population, cfg.shock, cfg.seed);

  auto points = calibration_points(population, cfg.economy, cfg.calibration_level);
  res.calibration = calibrate_savings_utility(points, cfg.economy.eta,
                                              cfg.savings_marginal_anchor);
  return population;
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg, bool write_outputs) {
  cfg.validate();

  std::vector<std::string> diagnostics;
  RunResult res;
  std::vector<Household> population = prepare_population(cfg, res, diagnostics);
  const SavingsUtilityParams su = res.calibration;

  // Parallel fan-out over households; results land in a fixed-index vector so
  // every downstream reduction is order-deterministic.
  std::vector<HouseholdOutcome> outcomes(population.size());
  {
    unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                         : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, std::max<std::size_t>(population.size(), 1));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= population.size()) break;
        outcomes[i] = simulate_household(population[i], cfg, su);
      }
    };
    if (n_threads <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
  }

  auto& sum = res.summary;
  sum.case_name = policy_case_name(cfg.policy.id);
  sum.tc_months = cfg.tc_months;
  sum.exclusion_rate = cfg.policy.exclusion_rate;
  sum.seed = cfg.seed;
  sum.population_hash = population_hash(population);
  sum.households = static_cast<int>(population.size());
  for (const auto& o : outcomes) {
    sum.persons += o.size;
    sum.workers += o.n_workers;
    sum.affected_workers += o.n_affected;
    if (o.failed) sum.failed_households += 1;
  }
  if (sum.households > 0 &&
      sum.failed_households > std::max(1, sum.households / 1000)) {
    throw std::runtime_error("run aborted: " + std::to_string(sum.failed_households) +
                             " households failed numerically (> 0.1%)");
  }
  for (const auto& o : outcomes)
    if (o.failed)
      diagnostics.push_back("household " + std::to_string(o.id) + " failed numerically");

  sum.initial = poverty_rates(outcomes, cfg.metrics.thresholds, Phase::initial);
  sum.end_of_crisis = poverty_rates(outcomes, cfg.metrics.thresholds, Phase::end_of_crisis);
  sum.recovery = recovery_stats(outcomes, /*affected_only=*/true);
  CompensatedSum dw, ben, stim;
  double persons = 0.0;
  for (const auto& o : outcomes) {
    if (o.failed) continue;
    persons += o.size;
    dw.add(o.size * o.delta_w);
    ben.add(o.total_benefits);
    stim.add(o.total_stimulus);
  }
  sum.mean_delta_w = persons > 0.0 ? dw.value() / persons : 0.0;
  sum.total_benefits = ben.value();
  sum.total_stimulus = stim.value();

  res.outcomes = std::move(outcomes);
  res.out_dir = cfg.out_dir;
  if (write_outputs) write_outputs_to(cfg.out_dir, cfg, res, population, diagnostics);
  return res;
}

std::vector<RunResult> run_sweep(const ScenarioConfig& cfg) {
  cfg.validate();
  std::vector<RunResult> results;
  fs::create_directories(cfg.out_dir);
  std::ostringstream sweep_csv;
  sweep_csv << "tc_months,case,exclusion_rate,poverty_rate,deep_poverty_rate,"
               "poverty_increase_pp,mean_recovery_months,median_recovery_months\n";
  for (double tc : cfg.sweep_tc_months) {
    ScenarioConfig sub = cfg;
    sub.tc_months = tc;
    char name[32];
    std::snprintf(name, sizeof name, "tc_%g", tc);
    sub.out_dir = (fs::path(cfg.out_dir) / name).string();
    results.push_back(run_scenario(sub));
    const auto& s = results.back().summary;
    sweep_csv << fmt_double(tc) << "," << s.case_name << ","
              << fmt_double(s.exclusion_rate) << "," << fmt_double(s.end_of_crisis.poverty_rate)
              << "," << fmt_double(s.end_of_crisis.deep_poverty_rate) << ","
              << fmt_double(100.0 * (s.end_of_crisis.poverty_rate - s.initial.poverty_rate))
              << "," << fmt_double(s.recovery.mean) << "," << fmt_double(s.recovery.median)
              << "\n";
  }
  write_text(fs::path(cfg.out_dir) / "sweep.csv", sweep_csv.str());
  return results;
}

std::vector<std::string> trace_households(const ScenarioConfig& cfg,
                                          const std::vector<std::uint32_t>& ids,
                                          const std::string& out_dir) {
  cfg.validate();
  if (ids.empty()) throw std::invalid_argument("trace: no household ids given");

  std::vector<std::string> diagnostics;
  RunResult res;
  std::vector<Household> population = prepare_population(cfg, res, diagnostics);
  const SavingsUtilityParams su = res.calibration;

  fs::create_directories(out_dir);
  std::vector<std::string> written;
  for (std::uint32_t id : ids) {
    auto it = std::find_if(population.begin(), population.end(),
                           [id](const Household& h) { return h.id == id; });
    if (it == population.end())
      throw std::invalid_argument("trace: household " + std::to_string(id) +
                                  " not in the (validated) population");
    const Household& h = *it;

    std::vector<WorkerBenefits> benefits;
    for (std::size_t wi = 0; wi < h.workers.size(); ++wi)
      benefits.push_back(
          resolve_worker_benefits(h.workers[wi], cfg.policy, cfg.tc_months, cfg.seed, h.id, wi));
    auto ctx = make_household_context(h, cfg.economy, cfg.shock, benefits, cfg.tc_months);
    auto opt = optimize_final_savings(ctx, su, cfg.economy, cfg.horizon_mode);

    auto c = consumption_path(ctx, opt.sf_star, cfg.economy);
    auto cf = c.floored_at(cfg.economy.c_min);
    auto s = savings_path(ctx, opt.sf_star, cfg.economy);

    std::vector<double> cuts;
    for (const auto& seg : c.segments()) {
      cuts.push_back(seg.t0);
      cuts.push_back(seg.t1);
    }
    for (const auto& seg : s.segments()) {
      cuts.push_back(seg.t0);
      cuts.push_back(seg.t1);
    }
    auto breaks = merge_breakpoints(std::move(cuts), 0.0, std::max(c.end(), s.end()));

    fs::path file = fs::path(out_dir) / ("trace_" + std::to_string(id) + ".csv");
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << "t_months,consumption,consumption_floored,savings\n";
    // two rows per interval render piecewise-constant consumption and savings
    // steps exactly
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      double t0 = breaks[i], t1 = breaks[i + 1];
      double mid = 0.5 * (t0 + t1);
      double cv = c.value(std::min(mid, c.end()));
      double cfv = cf.value(std::min(mid, cf.end()));
      out << fmt_double(t0) << "," << fmt_double(cv) << "," << fmt_double(cfv) << ","
          << fmt_double(s.value(std::min(t0 + 1e-12, s.end()))) << "\n";
      out << fmt_double(t1) << "," << fmt_double(cv) << "," << fmt_double(cfv) << ","
          << fmt_double(s.value_before(std::min(t1, s.end()))) << "\n";
    }
    written.push_back(file.string());
  }
  return written;
}

std::string compare_runs(const std::vector<std::string>& run_dirs, const std::string& csv_out) {
  if (run_dirs.size() < 2)
    throw std::invalid_argument("compare: need at least two run directories");

  struct Loaded {
    std::string dir;
    nlohmann::json j;
  };
  std::vector<Loaded> runs;
  for (const auto& dir : run_dirs) {
    std::ifstream in(fs::path(dir) / "summary.json");
    if (!in) throw std::invalid_argument("compare: missing summary.json in " + dir);
    Loaded l;
    l.dir = dir;
    in >> l.j;
    runs.push_back(std::move(l));
  }
  auto hash0 = runs.front().j.at("population_hash").get<std::uint64_t>();
  for (const auto& r : runs)
    if (r.j.at("population_hash").get<std::uint64_t>() != hash0)
      throw std::invalid_argument("compare: population hash mismatch between " +
                                  runs.front().dir + " and " + r.dir +
                                  " (runs must share the same population)");

  struct Metric {
    const char* label;
    std::function<double(const nlohmann::json&)> get;
  };
  std::vector<Metric> metrics = {
      {"poverty_rate", [](const nlohmann::json& j) {
         return j.at("poverty").at("crisis_poverty_rate").get<double>();
       }},
      {"deep_poverty_rate", [](const nlohmann::json& j) {
         return j.at("poverty").at("crisis_deep_poverty_rate").get<double>();
       }},
      {"poverty_increase_pp", [](const nlohmann::json& j) {
         return 100.0 * (j.at("poverty").at("crisis_poverty_rate").get<double>() -
                         j.at("poverty").at("initial_poverty_rate").get<double>());
       }},
      {"recovery_mean_months", [](const nlohmann::json& j) {
         return j.at("recovery_months").at("mean").get<double>();
       }},
      {"recovery_q1_months", [](const nlohmann::json& j) {
         return j.at("recovery_months").at("q1").get<double>();
       }},
      {"recovery_median_months", [](const nlohmann::json& j) {
         return j.at("recovery_months").at("median").get<double>();
       }},
      {"recovery_q3_months", [](const nlohmann::json& j) {
         return j.at("recovery_months").at("q3").get<double>();
       }},
      {"total_benefits", [](const nlohmann::json& j) {
         return j.at("total_benefits").get<double>();
       }},
  };

  std::ostringstream table, csv;
  table << "metric";
  csv << "metric";
  std::vector<std::string> labels;
  for (const auto& r : runs) {
    std::string label = r.j.at("case").get<std::string>() + "@" +
                        fmt_double(r.j.at("exclusion_rate").get<double>()) + " tc=" +
                        fmt_double(r.j.at("tc_months").get<double>());
    labels.push_back(label);
    table << "\t" << label;
    csv << "," << label;
  }
  table << "\tdelta(last-first)\n";
  csv << ",delta_last_minus_first\n";
  for (const auto& m : metrics) {
    table << m.label;
    csv << m.label;
    double first = 0.0, last = 0.0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      double v = m.get(runs[i].j);
      if (i == 0) first = v;
      last = v;
      table << "\t" << fmt_double(v);
      csv << "," << fmt_double(v);
    }
    table << "\t" << fmt_double(last - first) << "\n";
    csv << "," << fmt_double(last - first) << "\n";
  }
  if (!csv_out.empty()) write_text(csv_out, csv.str());
  return table.str();
}

}  // namespace hhsim
