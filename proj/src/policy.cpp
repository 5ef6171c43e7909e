#include "hhsim/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hhsim {

const char* policy_case_name(PolicyCaseId c) {
  switch (c) {
    case PolicyCaseId::A_base: return "A";
    case PolicyCaseId::B_ui: return "B";
    case PolicyCaseId::C_cares: return "C";
  }
  return "?";
}

PolicyCaseId parse_policy_case(const std::string& name) {
  if (name == "A" || name == "a" || name == "base") return PolicyCaseId::A_base;
  if (name == "B" || name == "b" || name == "ui") return PolicyCaseId::B_ui;
  if (name == "C" || name == "c" || name == "cares") return PolicyCaseId::C_cares;
  throw std::invalid_argument("unknown policy case: " + name);
}

void PolicyCase::validate() const {
  if (!(exclusion_rate >= 0.0 && exclusion_rate <= 1.0))
    throw std::invalid_argument("policy: exclusion rate outside [0,1]");
  if (!(puc_expiry_months > 0.0)) throw std::invalid_argument("policy: puc expiry must be > 0");
  if (!(ui_b_duration_months > 0.0 && ui_c_duration_months > 0.0))
    throw std::invalid_argument("policy: UI durations must be > 0");
  if (!(delay_mean_weeks > 0.0 && delay_sd_weeks > 0.0))
    throw std::invalid_argument("policy: delay moments must be > 0");
}

double ui_weekly_benefit(double quarterly_income) {
  if (quarterly_income < 900.0) return 0.0;
  double weekly = std::ceil(quarterly_income / 26.0);
  return std::clamp(weekly, 40.0, 450.0);
}

double stimulus_check(double annual_income) {
  if (annual_income <= 75000.0) return 1200.0;
  double check = 1200.0 - 5.0 * (annual_income - 75000.0) / 100.0;
  return std::max(check, 0.0);
}

double sample_delay(RngStream& rng, double mean_weeks, double sd_weeks) {
  auto p = lognormal_from_mean_sd(mean_weeks, sd_weeks);
  return rng.lognormal(p.mu, p.sigma);
}

bool sample_exclusion(RngStream& rng, const Worker& w, double rate) {
  if (!w.documented) return true;
  return rng.bernoulli(rate);
}

double CashflowSchedule::total() const {
  double acc = 0.0;
  for (const auto& s : segments) acc += s.amount * (s.end - s.start);
  return acc;
}

double CashflowSchedule::rate_at(double t) const {
  double acc = 0.0;
  for (const auto& s : segments)
    if (t >= s.start && t < s.end) acc += s.amount;
  return acc;
}

CashflowSchedule benefit_schedule(const Worker& w, const PolicyCase& pc, double tc,
                                  double delay_weeks, bool excluded) {
  CashflowSchedule out;
  if (pc.id == PolicyCaseId::A_base || excluded || !w.affected) return out;

  double quarterly = 3.0 * w.labor_income;
  double weekly = ui_weekly_benefit(quarterly);
  double start = std::min(weeks_to_months(delay_weeks), tc);

  if (weekly > 0.0) {
    double end = std::min(tc, start + pc.ui_duration_months());
    if (end > start)
      out.segments.push_back({start, end, weekly_to_monthly(weekly)});
  }
  if (pc.id == PolicyCaseId::C_cares) {
    double end = std::min(tc, pc.puc_expiry_months);
    if (end > start)
      out.segments.push_back({start, end, weekly_to_monthly(pc.puc_weekly)});
  }
  return out;
}

WorkerBenefits resolve_worker_benefits(const Worker& w, const PolicyCase& pc, double tc,
                                       std::uint64_t seed, std::uint32_t household_id,
                                       std::size_t worker_index) {
  WorkerBenefits out;
  RngStream excl(seed, Draw::exclusion, household_id, worker_index);
  out.excluded = sample_exclusion(excl, w, pc.exclusion_rate);

  RngStream d1(seed, Draw::benefit_delay, household_id, worker_index);
  out.benefit_delay_weeks = sample_delay(d1, pc.delay_mean_weeks, pc.delay_sd_weeks);
  RngStream d2(seed, Draw::stimulus_delay, household_id, worker_index);
  out.stimulus_delay_weeks = sample_delay(d2, pc.delay_mean_weeks, pc.delay_sd_weeks);

  out.schedule = benefit_schedule(w, pc, tc, out.benefit_delay_weeks, out.excluded);
  if (pc.id == PolicyCaseId::C_cares && w.affected && !out.excluded)
    out.stimulus = stimulus_check(12.0 * w.labor_income);
  return out;
}

}  // namespace hhsim
