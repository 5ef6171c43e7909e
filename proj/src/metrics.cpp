#include "hhsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace hhsim {

namespace {

struct WeightedValue {
  double value;
  double weight;
};

// Smallest value whose cumulative weight reaches q of the total.
double weighted_quantile(std::vector<WeightedValue>& wv, double q) {
  std::sort(wv.begin(), wv.end(),
            [](const WeightedValue& a, const WeightedValue& b) { return a.value < b.value; });
  double total = 0.0;
  for (const auto& x : wv) total += x.weight;
  double target = q * total;
  double acc = 0.0;
  for (const auto& x : wv) {
    acc += x.weight;
    if (acc >= target) return x.value;
  }
  return wv.empty() ? 0.0 : wv.back().value;
}

}  // namespace

PovertyRates poverty_rates(const std::vector<HouseholdOutcome>& outcomes,
                           const PovertyThresholds& thresholds, Phase at) {
  if (outcomes.empty()) throw std::invalid_argument("poverty_rates: empty population");
  const double pov = thresholds.poverty_monthly();
  const double deep = thresholds.deep_monthly();

  CompensatedSum persons, poor0, deep0, poor, deepc;
  for (const auto& o : outcomes) {
    if (o.failed) continue;
    const double w = o.size;
    persons.add(w);
    const double pc0 = o.c0 / o.size;
    if (pc0 < pov) poor0.add(w);
    if (pc0 < deep) deep0.add(w);
    const double pc = (at == Phase::initial ? o.c0 : o.c_end) / o.size;
    if (pc < pov) poor.add(w);
    if (pc < deep) deepc.add(w);
  }
  const double n = persons.value();
  if (!(n > 0.0)) throw std::invalid_argument("poverty_rates: no persons");

  PovertyRates r;
  r.poverty_rate = poor.value() / n;
  r.deep_poverty_rate = deepc.value() / n;
  r.headcount_increase = poor.value() - poor0.value();
  r.deep_headcount_increase = deepc.value() - deep0.value();
  return r;
}

RecoveryStats recovery_stats(const std::vector<HouseholdOutcome>& outcomes,
                             bool affected_only) {
  RecoveryStats r;
  std::vector<WeightedValue> wv;
  CompensatedSum wsum, vsum;
  double tr_max = 0.0;
  for (const auto& o : outcomes) {
    if (o.failed) continue;
    double w = affected_only ? static_cast<double>(o.n_affected)
                             : static_cast<double>(o.size);
    if (w <= 0.0) continue;
    wv.push_back({o.tr, w});
    wsum.add(w);
    vsum.add(w * o.tr);
    tr_max = std::max(tr_max, o.tr);
  }
  if (wv.empty()) return r;  // empty-stats marker, not an error

  r.empty = false;
  r.weight = wsum.value();
  r.mean = vsum.value() / r.weight;
  r.q1 = weighted_quantile(wv, 0.25);
  r.median = weighted_quantile(wv, 0.50);
  r.q3 = weighted_quantile(wv, 0.75);

  r.histogram.assign(static_cast<std::size_t>(std::ceil(tr_max)) + 1, 0.0);
  for (const auto& x : wv) {
    auto bin = static_cast<std::size_t>(x.value);
    if (bin >= r.histogram.size()) bin = r.histogram.size() - 1;
    r.histogram[bin] += x.weight;
  }
  return r;
}

std::vector<CurvePoint> recovery_curve(const std::vector<HouseholdOutcome>& outcomes,
                                       double horizon, double step) {
  if (!(step > 0.0) || !(horizon > 0.0))
    throw std::invalid_argument("recovery_curve: horizon and step must be > 0");

  std::vector<CurvePoint> curve;
  for (double t = 0.0; t <= horizon + 1e-9; t += step) curve.push_back({t, 0.0});

  CompensatedSum base_sum;
  std::vector<CompensatedSum> at(curve.size());
  for (const auto& o : outcomes) {
    if (o.failed) continue;
    base_sum.add(o.s0);
    PiecewisePath s = savings_path(o.s0, o.sf_star, o.deposits, o.tc, o.tr);
    // after full recovery the household sits at its restored savings plus
    // any stimulus deposits
    double steady = o.s0;
    for (const auto& d : o.deposits) steady += d.amount;
    for (std::size_t i = 0; i < curve.size(); ++i) {
      double t = curve[i].t;
      at[i].add(t >= s.end() ? steady : s.value(t));
    }
  }
  double base = base_sum.value();
  if (!(base > 0.0)) throw std::invalid_argument("recovery_curve: zero total savings");
  for (std::size_t i = 0; i < curve.size(); ++i) curve[i].savings_share = at[i].value() / base;
  return curve;
}

std::array<QuintileRow, 5> quintile_table(const std::vector<HouseholdOutcome>& outcomes) {
  std::vector<const HouseholdOutcome*> ordered;
  double persons = 0.0;
  for (const auto& o : outcomes) {
    if (o.failed) continue;
    ordered.push_back(&o);
    persons += o.size;
  }
  if (ordered.size() < 5) throw std::invalid_argument("quintile_table: need >= 5 households");
  std::sort(ordered.begin(), ordered.end(), [](const HouseholdOutcome* a,
                                               const HouseholdOutcome* b) {
    double ia = a->income0 / a->size, ib = b->income0 / b->size;
    if (ia != ib) return ia < ib;
    return a->id < b->id;
  });

  std::array<QuintileRow, 5> table{};
  std::array<CompensatedSum, 5> loss, loss_pct, sav, w_all, tr_sum, w_aff;
  double acc = 0.0;
  for (const auto* o : ordered) {
    int q = std::min(4, static_cast<int>(5.0 * (acc + 0.5 * o->size) / persons));
    acc += o->size;
    const double w = o->size;
    w_all[q].add(w);
    loss[q].add(w * (o->c0 - o->c_end) / o->size);
    loss_pct[q].add(w * 100.0 * (o->c0 - o->c_end) / o->c0);
    sav[q].add(w * (o->s0 - o->sf_star) / o->size);
    if (o->n_affected > 0) {
      w_aff[q].add(o->n_affected);
      tr_sum[q].add(o->n_affected * o->tr);
    }
  }
  for (int q = 0; q < 5; ++q) {
    double w = w_all[q].value();
    table[q].persons = w;
    if (w > 0.0) {
      table[q].consumption_loss = loss[q].value() / w;
      table[q].consumption_loss_pct = loss_pct[q].value() / w;
      table[q].savings_loss = sav[q].value() / w;
    }
    double wa = w_aff[q].value();
    table[q].recovery_months = wa > 0.0 ? tr_sum[q].value() / wa : 0.0;
  }
  return table;
}

std::vector<TractRow> tract_summary(const std::vector<HouseholdOutcome>& outcomes) {
  struct Agg {
    CompensatedSum persons, change, tr, aff;
  };
  std::map<std::uint32_t, Agg> tracts;
  for (const auto& o : outcomes) {
    if (o.failed) continue;
    auto& a = tracts[o.tract_id];
    a.persons.add(o.size);
    a.change.add(o.size * 100.0 * (o.c_end - o.c0) / o.c0);
    if (o.n_affected > 0) {
      a.aff.add(o.n_affected);
      a.tr.add(o.n_affected * o.tr);
    }
  }
  std::vector<TractRow> rows;
  rows.reserve(tracts.size());
  for (auto& [tid, a] : tracts) {
    TractRow r;
    r.tract_id = tid;
    r.persons = a.persons.value();
    r.consumption_change_pct = r.persons > 0.0 ? a.change.value() / r.persons : 0.0;
    double wa = a.aff.value();
    r.recovery_months = wa > 0.0 ? a.tr.value() / wa : 0.0;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace hhsim
