#include "hhsim/wellbeing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hhsim/quadrature.hpp"

namespace hhsim {

double utility_consumption(double c, double eta) {
  if (!(c > 0.0)) throw std::domain_error("utility_consumption: c must be > 0");
  return std::pow(c, 1.0 - eta) / (1.0 - eta);
}

double utility_savings(double s, const SavingsUtilityParams& su) {
  double sf = std::max(s, kSavingsUtilityFloor);
  return su.alpha * std::pow(sf, 1.0 - su.beta) / (1.0 - su.beta);
}

double marginal_utility_consumption(double c, double eta) { return std::pow(c, -eta); }

double marginal_utility_savings(double s, const SavingsUtilityParams& su) {
  return su.alpha * std::pow(std::max(s, kSavingsUtilityFloor), -su.beta);
}

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

SavingsUtilityParams calibrate_savings_utility(const std::vector<CalibrationPoint>& points,
                                               double eta, double anchor_rho) {
  std::vector<double> lc, ls, cs, ss;
  lc.reserve(points.size());
  ls.reserve(points.size());
  for (const auto& p : points) {
    if (!(p.c > 0.0) || !(p.s > 0.0)) continue;
    lc.push_back(std::log(p.c));
    ls.push_back(std::log(p.s));
    cs.push_back(p.c);
    ss.push_back(p.s);
  }
  const std::size_t n = lc.size();
  if (n < 2) throw std::invalid_argument("calibration: need at least 2 positive (c, S) pairs");

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lc[i];
    my += ls[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = lc[i] - mx;
    double dy = ls[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("calibration: degenerate data, all c equal");

  SavingsUtilityParams su;
  su.b = sxy / sxx;
  su.a = std::exp(my - su.b * mx);
  if (!(su.b > 0.0)) throw std::invalid_argument("calibration: non-positive slope b");

  double ss_res = syy - su.b * sxy;  // residual sum of squares of the fit
  su.r_squared = syy > 0.0 ? 1.0 - std::max(ss_res, 0.0) / syy : 1.0;

  su.beta = eta / su.b;
  su.median_c = median_of(cs);
  su.median_s = median_of(ss);
  su.anchor_rho = anchor_rho;
  // v'(S_med) = anchor_rho * u'(c_med)
  su.alpha = anchor_rho * std::pow(su.median_c, -eta) * std::pow(su.median_s, su.beta);
  return su;
}

namespace {

// int_{t0}^{t1} e^(-rho t) dt
inline double discount_window(double rho, double t0, double t1) {
  return (std::exp(-rho * t0) - std::exp(-rho * t1)) / rho;
}

}  // namespace

double wellbeing(const PiecewisePath& consumption_floored, const PiecewisePath& savings,
                 const SavingsUtilityParams& su, double eta, double rho_month) {
  double w = 0.0;
  for (const auto& seg : consumption_floored.segments()) {
    if (!seg.constant())
      throw std::invalid_argument("wellbeing: consumption path must be piecewise constant");
    w += utility_consumption(seg.v0, eta) * discount_window(rho_month, seg.t0, seg.t1);
  }
  const auto& rule = savings_quadrature();
  for (const auto& seg : savings.segments()) {
    auto piece = [&](double a, double b) {
      return integrate(rule, a, b, [&](double t) {
        return std::exp(-rho_month * t) * utility_savings(seg.at(t), su);
      });
    };
    // v kinks where the path crosses the utility floor; split there so the
    // integrand stays smooth on each quadrature interval.
    const double f = kSavingsUtilityFloor;
    if ((seg.v0 - f) * (seg.v1 - f) < 0.0) {
      double tc = seg.t0 + (f - seg.v0) / (seg.v1 - seg.v0) * (seg.t1 - seg.t0);
      w += piece(seg.t0, tc) + piece(tc, seg.t1);
    } else {
      w += piece(seg.t0, seg.t1);
    }
  }
  if (!std::isfinite(w)) throw std::runtime_error("wellbeing: non-finite value");
  return w;
}

double baseline_wellbeing(double c0, double s0, const SavingsUtilityParams& su,
                          double eta, double rho_month, double horizon_months) {
  double flow = utility_consumption(c0, eta) + utility_savings(s0, su);
  return flow * (1.0 - std::exp(-rho_month * horizon_months)) / rho_month;
}

const char* horizon_mode_name(HorizonMode m) {
  return m == HorizonMode::anchored ? "anchored" : "truncated";
}

HorizonMode parse_horizon_mode(const std::string& name) {
  if (name == "anchored") return HorizonMode::anchored;
  if (name == "truncated") return HorizonMode::truncated;
  throw std::invalid_argument("unknown horizon mode: " + name);
}

double household_objective(const HouseholdContext& ctx, double sf,
                           const SavingsUtilityParams& su, const EconomyParams& p,
                           HorizonMode mode) {
  PiecewisePath c = consumption_path(ctx, sf, p).floored_at(p.c_min);
  PiecewisePath s = savings_path(ctx, sf, p);
  double w = wellbeing(c, s, su, p.eta, p.rho_month);
  if (mode == HorizonMode::anchored) {
    double end = ctx.tc + recovery_time(ctx.s0, sf, ctx.c0, p.gamma);
    double h = ctx.tc + recovery_time(ctx.s0, 0.0, ctx.c0, p.gamma);
    if (h > end) {
      double flow = utility_consumption(ctx.c0, p.eta) + utility_savings(ctx.s0, su);
      w += flow * (std::exp(-p.rho_month * end) - std::exp(-p.rho_month * h)) / p.rho_month;
    }
  }
  return w;
}

double golden_section_maximize(const std::function<double(double)>& f, double lo,
                               double hi, double xtol) {
  if (hi < lo) std::swap(lo, hi);
  double flo = f(lo);
  if (hi - lo <= xtol) return flo >= f(hi) ? lo : hi;

  const double gr = 0.6180339887498948482;  // (sqrt(5)-1)/2
  double a = lo, b = hi;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > xtol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  double x = fc >= fd ? c : d;
  double fx = std::max(fc, fd);
  // Boundary optima are returned exactly.
  double fhi = f(hi);
  if (flo >= fx && flo >= fhi) return lo;
  if (fhi >= fx) return hi;
  return x;
}

WellbeingResult optimize_final_savings(const HouseholdContext& ctx,
                                       const SavingsUtilityParams& su,
                                       const EconomyParams& p, HorizonMode mode) {
  WellbeingResult res;
  const double s0 = ctx.s0;
  auto objective = [&](double sf) { return household_objective(ctx, sf, su, p, mode); };

  if (s0 <= 0.0) {
    res.sf_star = 0.0;
  } else {
    double xtol = std::max(0.01, 1e-6 * s0);
    // Coarse scan to bracket the global basin (see kOptimizerScanPoints).
    int best = 0;
    double best_w = objective(0.0);
    double best_x = 0.0;
    for (int i = 1; i <= kOptimizerScanPoints; ++i) {
      double x = s0 * i / kOptimizerScanPoints;
      double w = objective(x);
      if (w > best_w) {
        best_w = w;
        best = i;
        best_x = x;
      }
    }
    double lo = s0 * std::max(0, best - 1) / kOptimizerScanPoints;
    double hi = s0 * std::min(kOptimizerScanPoints, best + 1) / kOptimizerScanPoints;
    double refined = golden_section_maximize(objective, lo, hi, xtol);
    res.sf_star = objective(refined) >= best_w ? refined : best_x;
  }
  res.w = objective(res.sf_star);
  res.tr = recovery_time(s0, res.sf_star, ctx.c0, p.gamma);
  res.horizon = mode == HorizonMode::anchored
                    ? ctx.tc + recovery_time(s0, 0.0, ctx.c0, p.gamma)
                    : ctx.tc + res.tr;
  res.w0 = baseline_wellbeing(ctx.c0, s0, su, p.eta, p.rho_month, res.horizon);
  res.delta_w = res.w0 - res.w;
  return res;
}

}  // namespace hhsim
