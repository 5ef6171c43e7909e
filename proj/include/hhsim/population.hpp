// Population construction: ingestion of tract-level microdata files, or
// synthesis of a statistically calibrated population when real microdata is
// not available.

#ifndef HHSIM_POPULATION_HPP
#define HHSIM_POPULATION_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hhsim/types.hpp"

namespace hhsim {

std::array<double, kNumSectors> default_sector_weights();

// Targets and structural knobs for synthesis. The medians and shares are
// the published aggregates the synthetic population is calibrated to; the
// structural fields cover what no published source pins down (household
// composition, housing burden, capital income) and are configurable.
struct SynthesisTargets {
  double median_pc_consumption = 3989.0;  // $/month per capita
  double median_pc_savings = 6092.0;      // $ per capita
  double income_gini = 0.47;
  double savings_noise_sigma = 0.30;      // lognormal dispersion around the savings law
  double savings_slope_b = 0.638;         // savings-vs-consumption elasticity
  double undocumented_share = 0.09;       // of the labor force
  std::array<double, kNumSectors> sector_shares = default_sector_weights();

  // Household structure.
  std::vector<double> size_probs = {0.28, 0.34, 0.15, 0.13, 0.07, 0.03};  // sizes 1..6
  double zero_worker_share = 0.09;   // households with no labor income
  double second_worker_share = 0.80; // two earners, given size >= 2
  double third_worker_share = 0.35;  // three earners, given size >= 3 and two
  double size_income_exponent = -0.20;  // per-capita income vs household size
  int households_per_tract = 100;

  // Heterogeneity structure.
  double tract_income_sigma = 0.45;  // between-tract log income spread
  double housing_cost_ratio = 0.40;  // housing cost relative to consumption
  double housing_jitter_sigma = 0.25;
  double owner_share = 0.55;
  double owner_equity_share = 0.60;  // imputed-rent fraction of housing cost
  double capital_income_ratio = 0.10;  // capital income relative to consumption
  double capital_jitter_sigma = 0.60;
  double sector_rank_sigma = 0.25;   // wage-rank dispersion of sector placement
  double undocumented_wage_tilt = 1.5;

  void validate() const;
};

struct SynthesisReport {
  int households = 0;
  int persons = 0;
  int workers = 0;
  int tracts = 0;
  double realized_median_pc_consumption = 0.0;
  double realized_median_pc_savings = 0.0;
  double realized_undocumented_share = 0.0;
  double realized_income_gini = 0.0;
  std::array<double, kNumSectors> realized_sector_shares{};
};

std::vector<Household> synthesize_population(int n_households, const SynthesisTargets& targets,
                                             std::uint64_t seed,
                                             SynthesisReport* report = nullptr);

SynthesisReport summarize_population(const std::vector<Household>& population,
                                     const EconomyParams& p);

// Thrown when a required column is missing from an input file.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& column, const std::string& message)
      : std::runtime_error(message), column_(column) {}
  const std::string& column() const { return column_; }

 private:
  std::string column_;
};

// Maps canonical column names to the names used in a particular file.
// Canonical names: tract_id, households, persons, workers, labor_income,
// k_oth, k_h, rent, mortgage, savings, undocumented, workers_<SECTOR>.
using ColumnSchema = std::map<std::string, std::string>;

struct IngestReport {
  int rows_read = 0;
  int rows_rejected = 0;
  std::vector<std::string> diagnostics;
  std::vector<std::string> tract_labels;  // tract_id -> label from the file
};

// Reads a comma-delimited tract-level file and disaggregates each row into
// households whose tract aggregates match the file within rounding. Rows
// with invalid values are rejected with a diagnostic; missing columns raise
// SchemaError; an empty file is an error.
std::vector<Household> ingest_population(const std::string& path, const ColumnSchema& schema,
                                         IngestReport* report = nullptr);

// Writes the canonical tract-level population file (the same schema that
// ingest_population reads). Labels name the tracts; numeric ids are used
// where no label is known.
void write_population_file(const std::string& path, const std::vector<Household>& population,
                           const std::vector<std::string>& tract_labels = {});

inline std::string tract_label(const std::vector<std::string>& labels, std::uint32_t tid) {
  return tid < labels.size() ? labels[tid] : std::to_string(tid);
}

// Excludes households whose derived consumption is not positive. Returns the
// kept households; diagnostics describe the dropped ones.
std::vector<Household> validate_population(std::vector<Household> population,
                                           const EconomyParams& p,
                                           std::vector<std::string>* diagnostics = nullptr);

// Content hash (ids, composition, money fields, in order) used to match runs
// over the same population.
std::uint64_t population_hash(const std::vector<Household>& population);

}  // namespace hhsim

#endif
