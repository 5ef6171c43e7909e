// Core domain types: workers, households, economy-wide constants.

#ifndef HHSIM_TYPES_HPP
#define HHSIM_TYPES_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hhsim {

// The 15 aggregated BEA industry sectors.
enum class Sector : int {
  AGR = 0,  // agriculture, forestry, fishing, hunting
  MIN,      // mining
  UTI,      // utilities
  CON,      // construction
  MAN,      // manufacturing
  WHO,      // wholesale trade
  RET,      // retail trade
  TRA,      // transportation and warehousing
  INF,      // information
  FIN,      // finance, insurance, real estate
  PRO,      // professional and business services
  EDU,      // education, health care, social assistance
  ART,      // arts, entertainment, recreation, accommodation, food
  OTH,      // other services except government
  GOV,      // government
};

inline constexpr int kNumSectors = 15;

inline constexpr std::array<const char*, kNumSectors> kSectorNames = {
    "AGR", "MIN", "UTI", "CON", "MAN", "WHO", "RET", "TRA",
    "INF", "FIN", "PRO", "EDU", "ART", "OTH", "GOV"};

inline const char* sector_name(Sector s) { return kSectorNames[static_cast<int>(s)]; }

Sector parse_sector(const std::string& code);

struct Worker {
  Sector sector = Sector::GOV;
  double labor_income = 0.0;  // $/month
  bool documented = true;
  bool affected = false;  // set by the shock module
};

struct Household {
  std::uint32_t id = 0;
  std::uint32_t tract_id = 0;
  int size = 1;  // persons
  std::vector<Worker> workers;
  double k_oth = 0.0;     // investment capital stock, $
  double k_h = 0.0;       // housing capital stock, $
  double rent = 0.0;      // $/month
  double mortgage = 0.0;  // $/month
  double savings0 = 0.0;  // precautionary savings, $
};

// Economy-wide constants. Rates are stored in the unit of the canonical
// internal time axis (months), except pi which is quoted per year as usual.
struct EconomyParams {
  double pi_year = 0.05;       // productivity of capital, 1/year
  double eta = 1.5;            // elasticity of marginal utility of consumption
  double rho_month = 0.06 / 12.0;  // discount rate, 1/month
  double gamma = 0.10;         // recovery saving rate
  double c_min = 1e-3;         // survival consumption, $/month

  void validate() const {
    if (!(eta > 1.0)) throw std::invalid_argument("economy: eta must be > 1");
    if (!(rho_month > 0.0)) throw std::invalid_argument("economy: rho must be > 0");
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("economy: gamma must be in (0,1)");
    if (!(c_min > 0.0)) throw std::invalid_argument("economy: c_min must be > 0");
    if (!(pi_year > 0.0)) throw std::invalid_argument("economy: pi must be > 0");
  }
};

// Exact weekly<->monthly conversion: one month = 52/12 weeks.
inline constexpr double kWeeksPerMonth = 52.0 / 12.0;

inline double weekly_to_monthly(double per_week) { return per_week * kWeeksPerMonth; }
inline double weeks_to_months(double weeks) { return weeks / kWeeksPerMonth; }

// Pre-crisis household income, Sum of labor incomes plus capital returns.
double initial_income(const Household& h, const EconomyParams& p);

// Pre-crisis household consumption: income net of rent and mortgage.
// A non-positive result marks the household invalid (checked by the caller).
double initial_consumption(const Household& h, const EconomyParams& p);

}  // namespace hhsim

#endif
