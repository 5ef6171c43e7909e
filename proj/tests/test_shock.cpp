#include <doctest.h>

#include <algorithm>
#include <map>

#include "hhsim/population.hpp"
#include "hhsim/shock.hpp"

using namespace hhsim;

namespace {

std::vector<Household> single_sector_population(int n, Sector s) {
  std::vector<Household> pop(n);
  for (int i = 0; i < n; ++i) {
    pop[i].id = i;
    Worker w;
    w.sector = s;
    w.labor_income = 4000.0;
    pop[i].workers.push_back(w);
  }
  return pop;
}

}  // namespace

TEST_CASE("default table matches the published sector shares") {
  auto t = ShockTable::defaults();
  auto share = [&](Sector s) { return t.affected_share[static_cast<int>(s)]; };
  CHECK(share(Sector::AGR) == 0.0);
  CHECK(share(Sector::MIN) == 0.0);
  CHECK(share(Sector::UTI) == 0.0);
  CHECK(share(Sector::CON) == 0.5);
  CHECK(share(Sector::MAN) == 0.1);
  CHECK(share(Sector::WHO) == 0.1);
  CHECK(share(Sector::RET) == 0.5);
  CHECK(share(Sector::TRA) == 0.5);
  CHECK(share(Sector::INF) == 0.1);
  CHECK(share(Sector::FIN) == 0.1);
  CHECK(share(Sector::PRO) == 0.1);
  CHECK(share(Sector::EDU) == 0.1);
  CHECK(share(Sector::ART) == 0.8);
  CHECK(share(Sector::OTH) == 0.8);
  CHECK(share(Sector::GOV) == 0.0);
  CHECK(t.loss_fraction == 1.0);
}

TEST_CASE("government workers are never affected") {
  auto pop = single_sector_population(5000, Sector::GOV);
  assign_shock(pop, ShockTable::defaults(), 3);
  for (const auto& h : pop) CHECK(!h.workers[0].affected);
}

TEST_CASE("arts sector hits its 80% share") {
  auto pop = single_sector_population(100000, Sector::ART);
  assign_shock(pop, ShockTable::defaults(), 3);
  int affected = 0;
  for (const auto& h : pop) affected += h.workers[0].affected ? 1 : 0;
  CHECK(affected / 100000.0 == doctest::Approx(0.80).epsilon(0.0125));  // +-0.01 absolute
}

TEST_CASE("shock assignment is deterministic and order independent") {
  auto pop1 = single_sector_population(2000, Sector::RET);
  auto pop2 = pop1;
  std::reverse(pop2.begin(), pop2.end());
  assign_shock(pop1, ShockTable::defaults(), 11);
  assign_shock(pop2, ShockTable::defaults(), 11);
  std::map<std::uint32_t, bool> flags;
  for (const auto& h : pop1) flags[h.id] = h.workers[0].affected;
  for (const auto& h : pop2) CHECK(flags[h.id] == h.workers[0].affected);

  auto pop3 = single_sector_population(2000, Sector::RET);
  assign_shock(pop3, ShockTable::defaults(), 11);
  for (std::size_t i = 0; i < pop1.size(); ++i)
    CHECK(pop1[i].workers[0].affected == pop3[i].workers[0].affected);
}

TEST_CASE("labor income loss over time") {
  auto table = ShockTable::defaults();
  Worker w;
  w.labor_income = 4000.0;
  w.affected = true;
  CHECK(labor_income_loss(w, table, 1.0, 3.0) == 4000.0);   // full loss during crisis
  CHECK(labor_income_loss(w, table, 3.0, 3.0) == 0.0);      // recovery begun at T_C
  CHECK(labor_income_loss(w, table, -0.5, 3.0) == 0.0);
  w.affected = false;
  CHECK(labor_income_loss(w, table, 1.0, 3.0) == 0.0);

  w.affected = true;
  table.loss_fraction = 0.5;
  CHECK(labor_income_loss(w, table, 1.0, 3.0) == 2000.0);
}

TEST_CASE("default sector weights reproduce the aggregate affected share") {
  auto weights = default_sector_weights();
  double wsum = 0.0;
  for (double w : weights) wsum += w;
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
  double share = expected_affected_share(ShockTable::defaults(), weights);
  CHECK(share == doctest::Approx(0.274).epsilon(0.02));  // 27.4% +- 0.5 p.p.
  CHECK(std::abs(share - 0.274) < 0.005);
}

TEST_CASE("raising any sector share never decreases expected loss") {
  auto weights = default_sector_weights();
  auto base_table = ShockTable::defaults();
  double base = expected_affected_share(base_table, weights);
  for (int s = 0; s < kNumSectors; ++s) {
    auto t = base_table;
    t.affected_share[s] = std::min(1.0, t.affected_share[s] + 0.1);
    CHECK(expected_affected_share(t, weights) >= base);
  }
}

TEST_CASE("table validation rejects out-of-range shares") {
  auto t = ShockTable::defaults();
  t.affected_share[0] = 1.5;
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  t = ShockTable::defaults();
  t.loss_fraction = -0.1;
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
}
