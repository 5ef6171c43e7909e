// Sectoral income shock: which workers lose their labor income during the
// crisis, and the loss as a function of time.

#ifndef HHSIM_SHOCK_HPP
#define HHSIM_SHOCK_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "hhsim/types.hpp"

namespace hhsim {

struct ShockTable {
  // Fraction of individuals affected per BEA sector.
  std::array<double, kNumSectors> affected_share{};
  // Income drop for affected workers (1.0 = full loss).
  double loss_fraction = 1.0;

  static ShockTable defaults();
  void validate() const;
};

// Draws the affected flag for every worker, Bernoulli(affected_share[sector]),
// keyed by (seed, household id, worker index). Order-independent.
void assign_shock(std::vector<Household>& population, const ShockTable& table,
                  std::uint64_t seed);

// Labor income loss of one worker at time t (months from crisis onset),
// $/month. Zero outside [0, T_C): income is fully restored at T_C.
double labor_income_loss(const Worker& w, const ShockTable& table, double t, double tc);

// Expected affected share under the given sector employment weights.
double expected_affected_share(const ShockTable& table,
                               const std::array<double, kNumSectors>& sector_weights);

}  // namespace hhsim

#endif
