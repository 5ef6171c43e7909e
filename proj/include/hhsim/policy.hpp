// Social-protection cash flows per worker: state UI, the federal pandemic
// package (UI extension, flat weekly supplement, stimulus checks), exclusion
// sampling and payment delays.

#ifndef HHSIM_POLICY_HPP
#define HHSIM_POLICY_HPP

#include <cstdint>
#include <vector>

#include "hhsim/rng.hpp"
#include "hhsim/types.hpp"

namespace hhsim {

enum class PolicyCaseId { A_base, B_ui, C_cares };

const char* policy_case_name(PolicyCaseId c);
PolicyCaseId parse_policy_case(const std::string& name);

struct PolicyCase {
  PolicyCaseId id = PolicyCaseId::A_base;
  double exclusion_rate = 0.40;
  double puc_expiry_months = 4.5;    // flat supplement ends (from crisis onset)
  double ui_b_duration_months = 6.0;   // 26 weeks of regular state UI
  double ui_c_duration_months = 9.0;   // 39 weeks with the federal extension
  double puc_weekly = 600.0;
  double delay_mean_weeks = 6.0;
  double delay_sd_weeks = 3.0;

  double ui_duration_months() const {
    return id == PolicyCaseId::C_cares ? ui_c_duration_months : ui_b_duration_months;
  }
  void validate() const;
};

// Weekly state UI benefit for a given quarterly gross income. Ineligible
// below $900/quarter; otherwise the benefit is the quarterly income divided
// by 26 rounded up to the next dollar, clamped to [$40, $450]. The rounding
// makes the published cap point exact: $11,676/26 = $449.08 pays $450.
double ui_weekly_benefit(double quarterly_income);

// One-off stimulus check for a given annual gross income: $1,200 up to
// $75,000, phased out at $5 per $100 above, zero from $99,000 up.
double stimulus_check(double annual_income);

// Payment delay in weeks, lognormal with arithmetic mean/sd from the policy.
double sample_delay(RngStream& rng, double mean_weeks, double sd_weeks);

// Whether the worker is excluded from all benefits. Undocumented workers are
// always excluded; the rest with probability `rate`.
bool sample_exclusion(RngStream& rng, const Worker& w, double rate);

// Monthly-rate benefit segments over [0, T_C] for one worker.
struct CashflowSegment {
  double start = 0.0;   // months
  double end = 0.0;     // months
  double amount = 0.0;  // $/month
};

struct CashflowSchedule {
  std::vector<CashflowSegment> segments;

  double total() const;             // $ paid over the schedule
  double rate_at(double t) const;   // $/month at time t
  bool empty() const { return segments.empty(); }
};

// UI (+ flat supplement for the CARES case) cash flow for one worker given
// the resolved delay and exclusion draw. Empty for the base case, excluded
// or unaffected workers. The stimulus check is not part of this schedule:
// it deposits into savings.
CashflowSchedule benefit_schedule(const Worker& w, const PolicyCase& pc, double tc,
                                  double delay_weeks, bool excluded);

// All policy randomness for one worker, resolved from keyed streams.
struct WorkerBenefits {
  bool excluded = false;
  double benefit_delay_weeks = 0.0;
  double stimulus_delay_weeks = 0.0;
  CashflowSchedule schedule;
  double stimulus = 0.0;  // $ deposited into savings (CARES case only)
};

WorkerBenefits resolve_worker_benefits(const Worker& w, const PolicyCase& pc, double tc,
                                       std::uint64_t seed, std::uint32_t household_id,
                                       std::size_t worker_index);

}  // namespace hhsim

#endif
