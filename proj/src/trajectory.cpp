#include "hhsim/trajectory.hpp"

#include <algorithm>
#include <stdexcept>

namespace hhsim {

double net_income_loss(const Household& h, const ShockTable& table,
                       const std::vector<WorkerBenefits>& benefits, double t, double tc) {
  double loss = 0.0;
  for (std::size_t wi = 0; wi < h.workers.size(); ++wi) {
    loss += labor_income_loss(h.workers[wi], table, t, tc);
    if (wi < benefits.size()) loss -= benefits[wi].schedule.rate_at(t);
  }
  return loss;
}

HouseholdContext make_household_context(const Household& h, const EconomyParams& p,
                                        const ShockTable& table,
                                        const std::vector<WorkerBenefits>& benefits,
                                        double tc) {
  if (!(tc > 0.0)) throw std::invalid_argument("crisis duration must be > 0");
  HouseholdContext ctx;
  ctx.c0 = initial_consumption(h, p);
  ctx.s0 = h.savings0;
  ctx.tc = tc;

  std::vector<double> cuts;
  for (std::size_t wi = 0; wi < h.workers.size(); ++wi) {
    if (h.workers[wi].affected) ctx.any_worker_affected = true;
    if (wi >= benefits.size()) continue;
    const auto& b = benefits[wi];
    ctx.total_benefits += b.schedule.total();
    for (const auto& seg : b.schedule.segments) {
      cuts.push_back(seg.start);
      cuts.push_back(seg.end);
    }
    if (b.stimulus > 0.0) {
      double at = std::min(weeks_to_months(b.stimulus_delay_weeks), tc);
      ctx.deposits.push_back({b.stimulus, at});
      ctx.total_stimulus += b.stimulus;
    }
  }
  std::sort(ctx.deposits.begin(), ctx.deposits.end(),
            [](const SavingsDeposit& a, const SavingsDeposit& b) { return a.time < b.time; });

  auto breaks = merge_breakpoints(std::move(cuts), 0.0, tc);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double mid = 0.5 * (breaks[i] + breaks[i + 1]);
    ctx.net_loss.append_constant(breaks[i], breaks[i + 1],
                                 net_income_loss(h, table, benefits, mid, tc));
  }
  return ctx;
}

double recovery_time(double s0, double sf, double c0, double gamma) {
  if (!(c0 > 0.0)) throw std::invalid_argument("recovery_time: c0 must be > 0");
  double depleted = s0 - sf;
  if (depleted <= 0.0) return 0.0;
  return depleted / (gamma * c0);
}

PiecewisePath consumption_path(const HouseholdContext& ctx, double sf,
                               const EconomyParams& p) {
  if (!(ctx.tc > 0.0)) throw std::invalid_argument("consumption_path: T_C must be > 0");
  if (sf < 0.0 || sf > ctx.s0 + 1e-9)
    throw std::invalid_argument("consumption_path: sf outside [0, s0]");

  const double drawdown = (ctx.s0 - sf) / ctx.tc;  // $/month during the crisis
  PiecewisePath path;
  for (const auto& seg : ctx.net_loss.segments())
    path.append_constant(seg.t0, seg.t1, ctx.c0 - seg.v0 + drawdown);

  double tr = recovery_time(ctx.s0, sf, ctx.c0, p.gamma);
  if (tr > 0.0) {
    // (s0-sf)/tr == gamma*c0 exactly, so the recovery level is c0*(1-gamma).
    path.append_constant(ctx.tc, ctx.tc + tr, ctx.c0 - (ctx.s0 - sf) / tr);
  }
  return path;
}

PiecewisePath savings_path(double s0, double sf, std::vector<SavingsDeposit> deposits,
                           double tc, double tr) {
  if (!(tc > 0.0)) throw std::invalid_argument("savings_path: T_C must be > 0");
  if (sf < 0.0 || sf > s0 + 1e-9)
    throw std::invalid_argument("savings_path: sf outside [0, s0]");
  std::sort(deposits.begin(), deposits.end(),
            [](const SavingsDeposit& a, const SavingsDeposit& b) { return a.time < b.time; });

  const double slope = (s0 - sf) / tc;  // drawdown per month
  PiecewisePath path;
  auto level_at = [&](double t) { return s0 - slope * t; };
  double t_prev = 0.0;
  double deposited = 0.0;
  for (const auto& d : deposits) {
    double at = std::min(d.time, tc);
    if (at > t_prev)
      path.append(t_prev, at, level_at(t_prev) + deposited, level_at(at) + deposited);
    deposited += d.amount;
    t_prev = at;
  }
  if (tc > t_prev)
    path.append(t_prev, tc, level_at(t_prev) + deposited, level_at(tc) + deposited);
  if (tr > 0.0)
    path.append(tc, tc + tr, sf + deposited, s0 + deposited);
  return path;
}

PiecewisePath savings_path(const HouseholdContext& ctx, double sf,
                           const EconomyParams& p) {
  return savings_path(ctx.s0, sf, ctx.deposits, ctx.tc,
                      recovery_time(ctx.s0, sf, ctx.c0, p.gamma));
}

PiecewisePath savings_path(double s0, double sf, double stimulus, double stimulus_delay,
                           double tc, double tr) {
  std::vector<SavingsDeposit> deposits;
  if (stimulus > 0.0) deposits.push_back({stimulus, std::min(stimulus_delay, tc)});
  return savings_path(s0, sf, std::move(deposits), tc, tr);
}

}  // namespace hhsim
