// Piecewise income, consumption and savings paths for one household during
// the crisis and recovery periods, and the recovery time itself.

#ifndef HHSIM_TRAJECTORY_HPP
#define HHSIM_TRAJECTORY_HPP

#include <vector>

#include "hhsim/piecewise.hpp"
#include "hhsim/policy.hpp"
#include "hhsim/shock.hpp"
#include "hhsim/types.hpp"

namespace hhsim {

// Savings deposit arriving at a fixed time (stimulus checks).
struct SavingsDeposit {
  double amount = 0.0;  // $
  double time = 0.0;    // months
};

// Everything needed to evaluate one household's paths for any candidate
// final-savings level: the resolved shock and benefit cash flows, collapsed
// into a piecewise-constant net income loss over [0, T_C].
struct HouseholdContext {
  double c0 = 0.0;       // pre-crisis consumption, $/month
  double s0 = 0.0;       // pre-crisis savings, $
  double tc = 0.0;       // crisis duration, months
  PiecewisePath net_loss;  // piecewise-constant net income loss on [0, T_C]
  std::vector<SavingsDeposit> deposits;  // stimulus, clipped to [0, T_C]
  bool any_worker_affected = false;
  double total_benefits = 0.0;  // $ over the crisis (UI + supplement)
  double total_stimulus = 0.0;  // $

  double deposits_total() const {
    double acc = 0.0;
    for (const auto& d : deposits) acc += d.amount;
    return acc;
  }
};

// Net income loss of the household at time t: lost wages minus benefit
// inflows. Negative when benefits exceed the lost wages.
double net_income_loss(const Household& h, const ShockTable& table,
                       const std::vector<WorkerBenefits>& benefits, double t, double tc);

// Builds the context from resolved per-worker benefits.
HouseholdContext make_household_context(const Household& h, const EconomyParams& p,
                                        const ShockTable& table,
                                        const std::vector<WorkerBenefits>& benefits,
                                        double tc);

// Recovery duration implied by a final savings level: the depleted amount
// over the exogenous saving flow gamma * c0.
double recovery_time(double s0, double sf, double c0, double gamma);

// Piecewise-constant consumption path on [0, T_C + T_R] for a candidate
// final savings level, before the survival floor is applied.
PiecewisePath consumption_path(const HouseholdContext& ctx, double sf,
                               const EconomyParams& p);

// Piecewise-linear savings path on [0, T_C + T_R]: linear drawdown to sf,
// deposit steps, then a linear rebuild to the pre-crisis level.
PiecewisePath savings_path(double s0, double sf, std::vector<SavingsDeposit> deposits,
                           double tc, double tr);

PiecewisePath savings_path(const HouseholdContext& ctx, double sf,
                           const EconomyParams& p);

// Single-deposit common case.
PiecewisePath savings_path(double s0, double sf, double stimulus, double stimulus_delay,
                           double tc, double tr);

}  // namespace hhsim

#endif
