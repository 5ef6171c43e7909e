// Discounted utility of consumption and savings paths, calibration of the
// savings-utility parameters, and the per-household maximization over the
// final savings level.

#ifndef HHSIM_WELLBEING_HPP
#define HHSIM_WELLBEING_HPP

#include <functional>
#include <string>
#include <vector>

#include "hhsim/piecewise.hpp"
#include "hhsim/trajectory.hpp"
#include "hhsim/types.hpp"

namespace hhsim {

// Savings enter utility through v(S) = alpha * S^(1-beta) / (1-beta); the
// floor keeps v finite when a path touches zero savings.
inline constexpr double kSavingsUtilityFloor = 1.0;  // $

struct SavingsUtilityParams {
  double a = 0.0;      // exponential-law scale, S = a * c^b
  double b = 0.0;      // exponential-law exponent
  double alpha = 0.0;  // utility scale
  double beta = 0.0;   // utility exponent, eta / b
  double r_squared = 0.0;
  double median_c = 0.0;  // calibration point
  double median_s = 0.0;
  double anchor_rho = 0.0;  // v'(median_s) = anchor_rho * u'(median_c)
};

// CRRA consumption utility, c^(1-eta)/(1-eta). Requires c > 0.
double utility_consumption(double c, double eta);

// Savings utility at max(S, floor).
double utility_savings(double s, const SavingsUtilityParams& su);

// Marginal utilities, used by the calibration coherence checks.
double marginal_utility_consumption(double c, double eta);
double marginal_utility_savings(double s, const SavingsUtilityParams& su);

struct CalibrationPoint {
  double c = 0.0;  // $/month
  double s = 0.0;  // $
};

// Least-squares fit of log s against log c over the points, plus the utility
// parameters anchored at the point medians: beta = eta/b and alpha chosen so
// that v'(median_s) = anchor_rho * u'(median_c).
SavingsUtilityParams calibrate_savings_utility(const std::vector<CalibrationPoint>& points,
                                               double eta, double anchor_rho);

// Discounted utility integral over the crisis+recovery paths:
//   W = int e^(-rho t) [ u(c(t)) + v(S(t)) ] dt
// The consumption path must already be floored at c_min. Consumption terms
// are integrated in closed form per constant segment; savings terms by
// fixed-order Gauss-Legendre per linear segment.
double wellbeing(const PiecewisePath& consumption_floored, const PiecewisePath& savings,
                 const SavingsUtilityParams& su, double eta, double rho_month);

// Closed-form baseline: constant (c0, S0) flows discounted over the horizon.
double baseline_wellbeing(double c0, double s0, const SavingsUtilityParams& su,
                          double eta, double rho_month, double horizon_months);

// How candidate final-savings levels are scored against each other.
//
// truncated: the objective integrates over [0, T_C + T_R(S_f)] only, exactly
//   the two-period sum; candidates with different S_f are compared over
//   horizons of different length.
// anchored: every candidate is scored over the household's common horizon
//   H = T_C + T_R(0) by continuing the baseline (c0, S0) flow after its
//   recovery completes. This removes the incentive to shorten the horizon
//   for its own sake and is the fixed-horizon problem the concavity
//   argument actually covers.
enum class HorizonMode { truncated, anchored };

const char* horizon_mode_name(HorizonMode m);
HorizonMode parse_horizon_mode(const std::string& name);

// Objective value for one candidate final savings level.
double household_objective(const HouseholdContext& ctx, double sf,
                           const SavingsUtilityParams& su, const EconomyParams& p,
                           HorizonMode mode);

struct WellbeingResult {
  double sf_star = 0.0;   // optimal final savings, $
  double w = 0.0;         // well-being at the optimum
  double w0 = 0.0;        // baseline well-being over the matching horizon
  double delta_w = 0.0;   // w0 - w
  double tr = 0.0;        // recovery time at the optimum, months
  double horizon = 0.0;   // months the comparison covers
};

// Golden-section maximization on [lo, hi] to absolute tolerance xtol; the
// endpoints are also evaluated so boundary optima are returned exactly.
double golden_section_maximize(const std::function<double(double)>& f, double lo,
                               double hi, double xtol);

// The consumption floor puts a convex kink into W(S_f) wherever a crisis
// segment crosses c_min, so the objective is piecewise concave rather than
// globally concave. The optimizer therefore brackets the best basin with a
// deterministic coarse scan before refining with golden section; the scan is
// the documented grid fallback for the non-concave cases.
inline constexpr int kOptimizerScanPoints = 48;

// Solves max_{0 <= S_f <= S_0} W(S_f) for one household.
WellbeingResult optimize_final_savings(const HouseholdContext& ctx,
                                       const SavingsUtilityParams& su,
                                       const EconomyParams& p, HorizonMode mode);

}  // namespace hhsim

#endif
