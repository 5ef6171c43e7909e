// Aggregation of household outcomes: poverty rates, recovery statistics,
// recovery curves, quintile tables and per-tract summaries. All rates and
// means are person-weighted.

#ifndef HHSIM_METRICS_HPP
#define HHSIM_METRICS_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "hhsim/trajectory.hpp"
#include "hhsim/types.hpp"

namespace hhsim {

struct PovertyThresholds {
  double poverty_annual = 25844.0;  // $/year gross, HUD low income level
  double deep_annual = 12922.0;     // half the LIL

  double poverty_monthly() const { return poverty_annual / 12.0; }
  double deep_monthly() const { return deep_annual / 12.0; }
};

// Per-household simulation outcome consumed by the aggregations.
struct HouseholdOutcome {
  std::uint32_t id = 0;
  std::uint32_t tract_id = 0;
  int size = 1;
  int n_workers = 0;
  int n_affected = 0;
  double income0 = 0.0;  // household $/month
  double c0 = 0.0;       // household $/month
  double s0 = 0.0;       // household $
  double c_end = 0.0;    // floored consumption on the last crisis segment
  double sf_star = 0.0;
  double tr = 0.0;       // months
  double w = 0.0;
  double w0 = 0.0;
  double delta_w = 0.0;
  double total_benefits = 0.0;
  double total_stimulus = 0.0;
  std::vector<SavingsDeposit> deposits;  // for savings-path reconstruction
  double tc = 0.0;
  bool failed = false;
};

// Neumaier compensated summation; used so parallel-then-sequential reductions
// match plain sequential sums to tight tolerance.
class CompensatedSum {
 public:
  void add(double v) {
    double t = sum_ + v;
    comp_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

enum class Phase { initial, end_of_crisis };

struct PovertyRates {
  double poverty_rate = 0.0;
  double deep_poverty_rate = 0.0;
  double headcount_increase = 0.0;  // persons vs the initial phase
  double deep_headcount_increase = 0.0;
};

PovertyRates poverty_rates(const std::vector<HouseholdOutcome>& outcomes,
                           const PovertyThresholds& thresholds, Phase at);

struct RecoveryStats {
  bool empty = true;
  double weight = 0.0;  // persons covered
  double mean = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  std::vector<double> histogram;  // one-month bins from 0
};

// Person-weighted statistics of recovery time; affected_only restricts to
// affected individuals (the usual reporting population).
RecoveryStats recovery_stats(const std::vector<HouseholdOutcome>& outcomes,
                             bool affected_only);

struct CurvePoint {
  double t = 0.0;
  double savings_share = 0.0;  // total savings relative to pre-crisis, in [0, ...)
};

std::vector<CurvePoint> recovery_curve(const std::vector<HouseholdOutcome>& outcomes,
                                       double horizon, double step);

struct QuintileRow {
  double consumption_loss = 0.0;       // $/month per capita
  double consumption_loss_pct = 0.0;   // percent of pre-crisis consumption
  double savings_loss = 0.0;           // $ per capita
  double recovery_months = 0.0;        // mean over affected individuals
  double persons = 0.0;
};

std::array<QuintileRow, 5> quintile_table(const std::vector<HouseholdOutcome>& outcomes);

struct TractRow {
  std::uint32_t tract_id = 0;
  double persons = 0.0;
  double consumption_change_pct = 0.0;  // signed; positive = gain
  double recovery_months = 0.0;         // mean over affected individuals
};

std::vector<TractRow> tract_summary(const std::vector<HouseholdOutcome>& outcomes);

}  // namespace hhsim

#endif
