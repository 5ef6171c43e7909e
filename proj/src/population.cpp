#include "hhsim/population.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>

#include "hhsim/rng.hpp"

namespace hhsim {

// Sector employment weights of a Bay-Area-like workforce. Fitted so that the
// weighted affected share under the default shock table reproduces the 27.4%
// end-of-crisis unemployment aggregate (see docs/population.md).
std::array<double, kNumSectors> default_sector_weights() {
  return {
      0.010,  // AGR
      0.002,  // MIN
      0.005,  // UTI
      0.052,  // CON
      0.078,  // MAN
      0.025,  // WHO
      0.090,  // RET
      0.036,  // TRA
      0.080,  // INF
      0.050,  // FIN
      0.208,  // PRO
      0.190,  // EDU
      0.112,  // ART
      0.040,  // OTH
      0.022,  // GOV
  };
}

void SynthesisTargets::validate() const {
  if (!(median_pc_consumption > 0.0) || !(median_pc_savings > 0.0))
    throw std::invalid_argument("synthesis: medians must be positive");
  if (!(income_gini > 0.0 && income_gini < 1.0))
    throw std::invalid_argument("synthesis: gini must be in (0,1)");
  if (!(savings_slope_b > 0.0)) throw std::invalid_argument("synthesis: slope b must be > 0");
  if (!(savings_noise_sigma >= 0.0))
    throw std::invalid_argument("synthesis: savings noise sigma must be >= 0");
  if (!(undocumented_share >= 0.0 && undocumented_share < 1.0))
    throw std::invalid_argument("synthesis: undocumented share outside [0,1)");
  if (!(zero_worker_share >= 0.0 && zero_worker_share < 1.0) ||
      !(second_worker_share >= 0.0 && second_worker_share <= 1.0) ||
      !(third_worker_share >= 0.0 && third_worker_share <= 1.0))
    throw std::invalid_argument("synthesis: worker shares outside [0,1]");
  double wsum = 0.0;
  for (double w : sector_shares) {
    if (w < 0.0) throw std::invalid_argument("synthesis: negative sector share");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-6)
    throw std::invalid_argument("synthesis: sector shares must sum to 1");
  if (size_probs.empty()) throw std::invalid_argument("synthesis: empty size distribution");
  double psum = 0.0;
  for (double q : size_probs) {
    if (q < 0.0) throw std::invalid_argument("synthesis: negative size probability");
    psum += q;
  }
  if (std::abs(psum - 1.0) > 1e-6)
    throw std::invalid_argument("synthesis: size probabilities must sum to 1");
  if (households_per_tract < 1)
    throw std::invalid_argument("synthesis: households_per_tract must be >= 1");
  if (!(tract_income_sigma >= 0.0) || !(housing_jitter_sigma >= 0.0) ||
      !(capital_jitter_sigma >= 0.0) || !(sector_rank_sigma >= 0.0))
    throw std::invalid_argument("synthesis: dispersion parameters must be >= 0");
  if (!(housing_cost_ratio >= 0.0 && housing_cost_ratio < 1.0))
    throw std::invalid_argument("synthesis: housing_cost_ratio outside [0,1)");
  if (!(owner_share >= 0.0 && owner_share <= 1.0) ||
      !(owner_equity_share >= 0.0 && owner_equity_share <= 1.0))
    throw std::invalid_argument("synthesis: ownership shares outside [0,1]");
  if (!(capital_income_ratio >= 0.0 && capital_income_ratio < 1.0))
    throw std::invalid_argument("synthesis: capital_income_ratio outside [0,1)");
}

namespace {

// Center of the wage-rank window each sector's workers are drawn from.
// Low-wage service sectors sit near the bottom, professional sectors near
// the top; spread comes from sector_rank_sigma.
constexpr std::array<double, kNumSectors> kSectorRankCenter = {
    0.34,  // AGR
    0.58,  // MIN
    0.62,  // UTI
    0.46,  // CON
    0.56,  // MAN
    0.52,  // WHO
    0.36,  // RET
    0.45,  // TRA
    0.78,  // INF
    0.70,  // FIN
    0.74,  // PRO
    0.52,  // EDU
    0.30,  // ART
    0.36,  // OTH
    0.58,  // GOV
};

std::vector<int> keyed_permutation(std::size_t n, std::uint64_t seed, Draw tag,
                                   std::uint64_t key) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  RngStream rng(seed, tag, key);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  return perm;
}

// Jittered stratified standard normals for one tract channel: quantile strata
// are shuffled across the tract's households, with a uniform jitter inside
// each stratum. Keeps sample medians tight without lattice artifacts.
std::vector<double> stratified_normals(std::size_t n, std::uint64_t seed, Draw tag,
                                       std::uint64_t tract) {
  auto perm = keyed_permutation(n, seed, tag, tract * 2 + 1);
  RngStream jitter(seed, tag, tract * 2);
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    double u = (perm[i] + jitter.uniform(0.02, 0.98)) / static_cast<double>(n);
    z[i] = inverse_normal_cdf(u);
  }
  return z;
}

// Largest-remainder allocation of n items to the given shares.
std::vector<int> allocate_counts(int n, const std::array<double, kNumSectors>& shares) {
  std::vector<int> counts(kNumSectors, 0);
  std::vector<std::pair<double, int>> rem;
  int assigned = 0;
  for (int s = 0; s < kNumSectors; ++s) {
    double exact = shares[s] * n;
    counts[s] = static_cast<int>(exact);
    assigned += counts[s];
    rem.push_back({exact - counts[s], s});
  }
  std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (int i = 0; i < n - assigned; ++i) counts[rem[i % kNumSectors].second] += 1;
  return counts;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double gini_of(std::vector<double> v) {
  if (v.size() < 2) return 0.0;
  std::sort(v.begin(), v.end());
  double total = 0.0, weighted = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    total += v[i];
    weighted += (i + 1.0) * v[i];
  }
  double n = static_cast<double>(v.size());
  if (total <= 0.0) return 0.0;
  return 2.0 * weighted / (n * total) - (n + 1.0) / n;
}

}  // namespace

std::vector<Household> synthesize_population(int n_households, const SynthesisTargets& t,
                                             std::uint64_t seed, SynthesisReport* report) {
  if (n_households < 1) throw std::invalid_argument("synthesis: n_households must be >= 1");
  t.validate();

  const EconomyParams econ;  // pi default; only pi is used below
  const double sigma_total = std::sqrt(2.0) * inverse_normal_cdf((t.income_gini + 1.0) / 2.0);
  double sigma_tract = std::min(t.tract_income_sigma, 0.8 * sigma_total);
  const double sigma_within = std::sqrt(sigma_total * sigma_total - sigma_tract * sigma_tract);
  const double savings_scale =
      t.median_pc_savings / std::pow(t.median_pc_consumption, t.savings_slope_b);

  const int n_tracts = std::max(1, (n_households + t.households_per_tract / 2) /
                                       t.households_per_tract);

  // Normalizer keeping the median per-capita level on target when per-capita
  // income is tilted by household size.
  double mean_log_size_scale = 0.0;
  for (std::size_t k = 0; k < t.size_probs.size(); ++k)
    mean_log_size_scale += t.size_probs[k] * t.size_income_exponent * std::log((k + 1.0) / 2.0);
  const double size_scale_norm = std::exp(-mean_log_size_scale);

  // Tract sizes: exact partition of n_households.
  std::vector<int> tract_size(n_tracts, n_households / n_tracts);
  for (int i = 0; i < n_households % n_tracts; ++i) tract_size[i] += 1;

  // Stratified tract income multipliers.
  auto tract_perm = keyed_permutation(n_tracts, seed, Draw::synth_tract, 0);
  std::vector<double> tract_mult(n_tracts);
  for (int tr = 0; tr < n_tracts; ++tr) {
    double q = (tract_perm[tr] + 0.5) / n_tracts;
    tract_mult[tr] = std::exp(sigma_tract * inverse_normal_cdf(q));
  }

  std::vector<Household> population;
  population.reserve(n_households);

  struct WorkerSlot {
    std::uint32_t hid;
    std::uint32_t widx;
    double wage;
  };
  std::vector<WorkerSlot> all_workers;

  std::uint32_t hid = 0;
  for (int tr = 0; tr < n_tracts; ++tr) {
    const std::size_t m = tract_size[tr];
    auto z_income = stratified_normals(m, seed, Draw::synth_income, tr);
    auto z_savings = stratified_normals(m, seed, Draw::synth_savings, tr);

    for (std::size_t j = 0; j < m; ++j, ++hid) {
      Household h;
      h.id = hid;
      h.tract_id = tr;

      RngStream rsize(seed, Draw::synth_size, hid);
      double u = rsize.uniform01();
      int size = 1;
      double acc = 0.0;
      for (std::size_t k = 0; k < t.size_probs.size(); ++k) {
        acc += t.size_probs[k];
        if (u < acc) {
          size = static_cast<int>(k) + 1;
          break;
        }
        size = static_cast<int>(t.size_probs.size());
      }
      h.size = size;

      const double size_scale =
          size_scale_norm * std::pow(h.size / 2.0, t.size_income_exponent);
      const double c_pc = t.median_pc_consumption * tract_mult[tr] * size_scale *
                          std::exp(sigma_within * z_income[j]);
      const double c_hh = c_pc * h.size;
      const double s_pc = savings_scale * std::pow(c_pc, t.savings_slope_b) *
                          std::exp(t.savings_noise_sigma * z_savings[j]);
      h.savings0 = s_pc * h.size;

      RngStream rworkers(seed, Draw::synth_workers, hid);
      int n_w = 0;
      if (!rworkers.bernoulli(t.zero_worker_share)) {
        n_w = 1;
        if (h.size >= 2 && rworkers.bernoulli(t.second_worker_share)) {
          n_w = 2;
          if (h.size >= 3 && rworkers.bernoulli(t.third_worker_share)) n_w = 3;
        }
      }

      RngStream rhousing(seed, Draw::synth_housing, hid);
      double housing = t.housing_cost_ratio * c_hh *
                       std::exp(t.housing_jitter_sigma * rhousing.normal());
      housing = std::min(housing, 0.65 * c_hh);
      bool owner = rhousing.bernoulli(t.owner_share);
      double imputed_rent = 0.0;
      if (owner) {
        imputed_rent = t.owner_equity_share * housing;
        h.mortgage = housing;
        h.k_h = imputed_rent * 12.0 / econ.pi_year;
      } else {
        h.rent = housing;
      }

      RngStream rcap(seed, Draw::synth_capital, hid);
      double cap_income = t.capital_income_ratio * c_hh *
                          std::exp(t.capital_jitter_sigma * rcap.normal());
      // Budget identity: labor = c + rent + mortgage - capital - imputed rent.
      double non_labor_needed = c_hh + h.rent + h.mortgage - imputed_rent;
      if (n_w == 0) {
        cap_income = non_labor_needed;  // all income from capital
      } else {
        cap_income = std::min(cap_income, 0.6 * non_labor_needed);
      }
      h.k_oth = cap_income * 12.0 / econ.pi_year;
      double labor_total = non_labor_needed - cap_income;

      if (n_w > 0) {
        RngStream rsplit(seed, Draw::synth_split, hid);
        std::vector<double> shares;
        if (n_w == 1) {
          shares = {1.0};
        } else if (n_w == 2) {
          double s1 = rsplit.uniform(0.36, 0.64);
          shares = {s1, 1.0 - s1};
        } else {
          double s1 = rsplit.uniform(0.32, 0.48);
          double s2 = rsplit.uniform(0.24, 0.36);
          shares = {s1, s2, 1.0 - s1 - s2};
        }
        for (int wi = 0; wi < n_w; ++wi) {
          Worker w;
          w.labor_income = shares[wi] * labor_total;
          h.workers.push_back(w);
          all_workers.push_back({hid, static_cast<std::uint32_t>(wi), w.labor_income});
        }
      }
      population.push_back(std::move(h));
    }
  }

  // Sector assignment with exact shares, correlated with the wage rank.
  const int n_workers = static_cast<int>(all_workers.size());
  if (n_workers > 0) {
    auto counts = allocate_counts(n_workers, t.sector_shares);
    struct Slot {
      double key;
      int sector;
      int idx;
    };
    std::vector<Slot> slots;
    slots.reserve(n_workers);
    RngStream rslot(seed, Draw::synth_sector, 0);
    int idx = 0;
    for (int s = 0; s < kNumSectors; ++s)
      for (int k = 0; k < counts[s]; ++k, ++idx)
        slots.push_back({kSectorRankCenter[s] + t.sector_rank_sigma * rslot.normal(), s, idx});
    std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
      if (a.key != b.key) return a.key < b.key;
      return a.idx < b.idx;
    });

    std::vector<int> worker_order(n_workers);
    std::iota(worker_order.begin(), worker_order.end(), 0);
    std::sort(worker_order.begin(), worker_order.end(), [&](int a, int b) {
      const auto& wa = all_workers[a];
      const auto& wb = all_workers[b];
      if (wa.wage != wb.wage) return wa.wage < wb.wage;
      if (wa.hid != wb.hid) return wa.hid < wb.hid;
      return wa.widx < wb.widx;
    });
    for (int i = 0; i < n_workers; ++i) {
      const auto& ws = all_workers[worker_order[i]];
      population[ws.hid].workers[ws.widx].sector = static_cast<Sector>(slots[i].sector);
    }

    // Undocumented status, tilted towards low wages; the tilt scale is solved
    // so the expected share matches the target.
    if (t.undocumented_share > 0.0) {
      std::vector<double> wages;
      wages.reserve(n_workers);
      for (const auto& w : all_workers) wages.push_back(w.wage);
      double wage_med = std::max(1.0, median_of(wages));
      auto expected_share = [&](double k) {
        double acc = 0.0;
        for (const auto& w : all_workers)
          acc += std::clamp(k * std::pow(std::max(w.wage, 1.0) / wage_med,
                                         -t.undocumented_wage_tilt),
                            0.0, 0.6);
        return acc / n_workers;
      };
      double klo = 0.0, khi = 1.0;
      while (expected_share(khi) < t.undocumented_share && khi < 64.0) khi *= 2.0;
      for (int it = 0; it < 60; ++it) {
        double kmid = 0.5 * (klo + khi);
        (expected_share(kmid) < t.undocumented_share ? klo : khi) = kmid;
      }
      double kstar = 0.5 * (klo + khi);
      for (const auto& w : all_workers) {
        double p = std::clamp(
            kstar * std::pow(std::max(w.wage, 1.0) / wage_med, -t.undocumented_wage_tilt),
            0.0, 0.6);
        RngStream rdoc(seed, Draw::synth_documented, w.hid, w.widx);
        population[w.hid].workers[w.widx].documented = !rdoc.bernoulli(p);
      }
    }
  }

  if (report) *report = summarize_population(population, econ);
  return population;
}

SynthesisReport summarize_population(const std::vector<Household>& population,
                                     const EconomyParams& p) {
  SynthesisReport r;
  r.households = static_cast<int>(population.size());
  std::vector<double> pc_cons, pc_sav, pc_inc;
  std::array<int, kNumSectors> sector_counts{};
  int undocumented = 0;
  std::vector<std::uint32_t> tract_ids;
  for (const auto& h : population) {
    r.persons += h.size;
    r.workers += static_cast<int>(h.workers.size());
    tract_ids.push_back(h.tract_id);
    double c0 = initial_consumption(h, p);
    pc_cons.push_back(c0 / h.size);
    pc_sav.push_back(h.savings0 / h.size);
    pc_inc.push_back(initial_income(h, p) / h.size);
    for (const auto& w : h.workers) {
      sector_counts[static_cast<int>(w.sector)] += 1;
      if (!w.documented) undocumented += 1;
    }
  }
  std::sort(tract_ids.begin(), tract_ids.end());
  r.tracts = static_cast<int>(std::unique(tract_ids.begin(), tract_ids.end()) -
                              tract_ids.begin());
  r.realized_median_pc_consumption = median_of(pc_cons);
  r.realized_median_pc_savings = median_of(pc_sav);
  r.realized_income_gini = gini_of(pc_inc);
  if (r.workers > 0) {
    r.realized_undocumented_share = static_cast<double>(undocumented) / r.workers;
    for (int s = 0; s < kNumSectors; ++s)
      r.realized_sector_shares[s] = static_cast<double>(sector_counts[s]) / r.workers;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Tract-level file IO
// ---------------------------------------------------------------------------

namespace {

const std::vector<std::string>& canonical_columns() {
  static const std::vector<std::string> cols = [] {
    std::vector<std::string> c = {"tract_id", "households", "persons",  "workers",
                                  "labor_income", "k_oth",  "k_h",      "rent",
                                  "mortgage",     "savings", "undocumented"};
    for (int s = 0; s < kNumSectors; ++s)
      c.push_back(std::string("workers_") + kSectorNames[s]);
    return c;
  }();
  return cols;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim
    std::size_t b = field.find_first_not_of(" \t\r");
    std::size_t e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

std::vector<Household> ingest_population(const std::string& path, const ColumnSchema& schema,
                                         IngestReport* report) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open population file: " + path);

  std::string header_line;
  if (!std::getline(in, header_line))
    throw std::runtime_error("population file is empty: " + path);
  auto header = split_csv_line(header_line);

  // Resolve each canonical column to its index in this file.
  std::map<std::string, int> col_index;
  for (const auto& canonical : canonical_columns()) {
    auto it = schema.find(canonical);
    const std::string& actual = it != schema.end() ? it->second : canonical;
    auto pos = std::find(header.begin(), header.end(), actual);
    if (pos == header.end())
      throw SchemaError(canonical, "population file missing column '" + actual +
                                       "' (for '" + canonical + "')");
    col_index[canonical] = static_cast<int>(pos - header.begin());
  }

  IngestReport local;
  IngestReport& rep = report ? *report : local;
  std::vector<Household> population;
  std::uint32_t next_hid = 0;
  std::uint32_t next_tract = 0;

  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rep.rows_read += 1;
    auto fields = split_csv_line(line);
    auto get = [&](const std::string& name) -> const std::string& {
      static const std::string empty;
      int idx = col_index.at(name);
      return idx < static_cast<int>(fields.size()) ? fields[idx] : empty;
    };

    try {
      auto num = [&](const std::string& name) {
        const std::string& s = get(name);
        if (s.empty()) throw std::runtime_error("empty value in column " + name);
        return std::stod(s);
      };
      auto money = [&](const std::string& name) {
        double v = num(name);
        if (v < 0.0)
          throw std::runtime_error("negative value " + std::to_string(v) + " in column " + name);
        return v;
      };

      const int n_h = static_cast<int>(num("households"));
      const int persons = static_cast<int>(num("persons"));
      const int workers = static_cast<int>(num("workers"));
      if (n_h < 1) throw std::runtime_error("households must be >= 1");
      if (persons < n_h) throw std::runtime_error("persons must be >= households");
      const double labor = money("labor_income");
      const double k_oth = money("k_oth");
      const double k_h = money("k_h");
      const double rent = money("rent");
      const double mortgage = money("mortgage");
      const double savings = money("savings");
      int undocumented = static_cast<int>(num("undocumented"));
      if (undocumented < 0) throw std::runtime_error("undocumented must be >= 0");

      std::vector<int> sector_counts(kNumSectors);
      int sector_total = 0;
      for (int s = 0; s < kNumSectors; ++s) {
        sector_counts[s] = static_cast<int>(num(std::string("workers_") + kSectorNames[s]));
        if (sector_counts[s] < 0) throw std::runtime_error("negative sector worker count");
        sector_total += sector_counts[s];
      }
      if (sector_total != workers)
        throw std::runtime_error("sector worker counts do not sum to workers");
      if (undocumented > workers)
        throw std::runtime_error("undocumented exceeds workers");

      // Disaggregate evenly: persons and workers round-robin, money equally.
      std::vector<Household> tract_households(n_h);
      for (int i = 0; i < n_h; ++i) {
        auto& h = tract_households[i];
        h.id = next_hid + i;
        h.tract_id = next_tract;
        h.size = persons / n_h + (i < persons % n_h ? 1 : 0);
        h.k_oth = k_oth / n_h;
        h.k_h = k_h / n_h;
        h.rent = rent / n_h;
        h.mortgage = mortgage / n_h;
        h.savings0 = savings / n_h;
      }
      double wage = workers > 0 ? labor / workers : 0.0;
      int wi = 0;
      for (int s = 0; s < kNumSectors; ++s) {
        for (int k = 0; k < sector_counts[s]; ++k, ++wi) {
          Worker w;
          w.sector = static_cast<Sector>(s);
          w.labor_income = wage;
          w.documented = wi >= undocumented;  // first `undocumented` slots
          tract_households[wi % n_h].workers.push_back(w);
        }
      }
      next_hid += n_h;
      next_tract += 1;
      std::string label = get("tract_id");
      rep.tract_labels.push_back(label.empty() ? std::to_string(next_tract - 1) : label);
      for (auto& h : tract_households) population.push_back(std::move(h));
    } catch (const std::exception& e) {
      rep.rows_rejected += 1;
      rep.diagnostics.push_back("line " + std::to_string(lineno) + " (tract '" +
                                get("tract_id") + "') rejected: " + e.what());
    }
  }

  if (rep.rows_read == 0) throw std::runtime_error("population file has no data rows: " + path);
  return population;
}

void write_population_file(const std::string& path, const std::vector<Household>& population,
                           const std::vector<std::string>& tract_labels) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write population file: " + path);

  struct TractAgg {
    int households = 0, persons = 0, workers = 0, undocumented = 0;
    double labor = 0, k_oth = 0, k_h = 0, rent = 0, mortgage = 0, savings = 0;
    std::array<int, kNumSectors> sector_counts{};
  };
  std::map<std::uint32_t, TractAgg> tracts;
  for (const auto& h : population) {
    auto& t = tracts[h.tract_id];
    t.households += 1;
    t.persons += h.size;
    t.k_oth += h.k_oth;
    t.k_h += h.k_h;
    t.rent += h.rent;
    t.mortgage += h.mortgage;
    t.savings += h.savings0;
    for (const auto& w : h.workers) {
      t.workers += 1;
      t.labor += w.labor_income;
      t.sector_counts[static_cast<int>(w.sector)] += 1;
      if (!w.documented) t.undocumented += 1;
    }
  }

  const auto& cols = canonical_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  char buf[64];
  auto fmt = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return std::string(buf);
  };
  for (const auto& [tid, t] : tracts) {
    out << tract_label(tract_labels, tid) << "," << t.households << "," << t.persons << ","
        << t.workers << ","
        << fmt(t.labor) << "," << fmt(t.k_oth) << "," << fmt(t.k_h) << "," << fmt(t.rent)
        << "," << fmt(t.mortgage) << "," << fmt(t.savings) << "," << t.undocumented;
    for (int s = 0; s < kNumSectors; ++s) out << "," << t.sector_counts[s];
    out << "\n";
  }
}

std::vector<Household> validate_population(std::vector<Household> population,
                                           const EconomyParams& p,
                                           std::vector<std::string>* diagnostics) {
  std::vector<Household> kept;
  kept.reserve(population.size());
  for (auto& h : population) {
    double c0 = initial_consumption(h, p);
    if (!(c0 > 0.0)) {
      if (diagnostics)
        diagnostics->push_back("household " + std::to_string(h.id) +
                               " excluded: non-positive consumption " + std::to_string(c0));
      continue;
    }
    bool ok = h.size >= 1 && h.savings0 >= 0.0 && h.k_oth >= 0.0 && h.k_h >= 0.0 &&
              h.rent >= 0.0 && h.mortgage >= 0.0;
    for (const auto& w : h.workers)
      if (w.labor_income < 0.0) ok = false;
    if (!ok) {
      if (diagnostics)
        diagnostics->push_back("household " + std::to_string(h.id) +
                               " excluded: negative field");
      continue;
    }
    kept.push_back(std::move(h));
  }
  return kept;
}

std::uint64_t population_hash(const std::vector<Household>& population) {
  auto mix = [](std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  };
  auto dbl = [](double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, sizeof u);
    return u;
  };
  std::uint64_t acc = 0x6a09e667f3bcc908ULL;
  for (const auto& h : population) {
    std::uint64_t hh = mix(mix(h.id, h.tract_id), static_cast<std::uint64_t>(h.size));
    hh = mix(hh, dbl(h.k_oth));
    hh = mix(hh, dbl(h.k_h));
    hh = mix(hh, dbl(h.rent));
    hh = mix(hh, dbl(h.mortgage));
    hh = mix(hh, dbl(h.savings0));
    for (const auto& w : h.workers) {
      hh = mix(hh, static_cast<std::uint64_t>(w.sector) * 2 + (w.documented ? 1 : 0));
      hh = mix(hh, dbl(w.labor_income));
    }
    acc = mix(acc, hh);
  }
  return acc;
}

}  // namespace hhsim
