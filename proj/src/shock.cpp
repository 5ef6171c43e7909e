#include "hhsim/shock.hpp"

#include <stdexcept>

#include "hhsim/rng.hpp"

namespace hhsim {

ShockTable ShockTable::defaults() {
  ShockTable t;
  auto set = [&t](Sector s, double v) { t.affected_share[static_cast<int>(s)] = v; };
  set(Sector::AGR, 0.0);
  set(Sector::MIN, 0.0);
  set(Sector::UTI, 0.0);
  set(Sector::CON, 0.5);
  set(Sector::MAN, 0.1);
  set(Sector::WHO, 0.1);
  set(Sector::RET, 0.5);
  set(Sector::TRA, 0.5);
  set(Sector::INF, 0.1);
  set(Sector::FIN, 0.1);
  set(Sector::PRO, 0.1);
  set(Sector::EDU, 0.1);
  set(Sector::ART, 0.8);
  set(Sector::OTH, 0.8);
  set(Sector::GOV, 0.0);
  t.loss_fraction = 1.0;
  return t;
}

void ShockTable::validate() const {
  for (double s : affected_share)
    if (!(s >= 0.0 && s <= 1.0))
      throw std::invalid_argument("shock table: affected share outside [0,1]");
  if (!(loss_fraction >= 0.0 && loss_fraction <= 1.0))
    throw std::invalid_argument("shock table: loss fraction outside [0,1]");
}

void assign_shock(std::vector<Household>& population, const ShockTable& table,
                  std::uint64_t seed) {
  table.validate();
  // TODO: sensitivity hook for within-household correlation of the draws;
  // workers are currently independent.
  for (auto& h : population) {
    for (std::size_t wi = 0; wi < h.workers.size(); ++wi) {
      Worker& w = h.workers[wi];
      RngStream rng(seed, Draw::shock, h.id, wi);
      w.affected = rng.bernoulli(table.affected_share[static_cast<int>(w.sector)]);
    }
  }
}

double labor_income_loss(const Worker& w, const ShockTable& table, double t, double tc) {
  if (!w.affected) return 0.0;
  if (t < 0.0 || t >= tc) return 0.0;
  return table.loss_fraction * w.labor_income;
}

double expected_affected_share(const ShockTable& table,
                               const std::array<double, kNumSectors>& sector_weights) {
  double acc = 0.0;
  for (int s = 0; s < kNumSectors; ++s) acc += sector_weights[s] * table.affected_share[s];
  return acc;
}

}  // namespace hhsim
