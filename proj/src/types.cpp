#include "hhsim/types.hpp"

namespace hhsim {

Sector parse_sector(const std::string& code) {
  for (int i = 0; i < kNumSectors; ++i)
    if (code == kSectorNames[i]) return static_cast<Sector>(i);
  throw std::invalid_argument("unknown sector code: " + code);
}

double initial_income(const Household& h, const EconomyParams& p) {
  double labor = 0.0;
  for (const auto& w : h.workers) labor += w.labor_income;
  return labor + (p.pi_year / 12.0) * (h.k_oth + h.k_h);
}

double initial_consumption(const Household& h, const EconomyParams& p) {
  return initial_income(h, p) - h.rent - h.mortgage;
}

}  // namespace hhsim
