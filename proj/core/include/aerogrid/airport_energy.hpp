#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "aerogrid/scenario.hpp"

namespace aerogrid {

/// Airport-side power and storage profile over the full day.
/// Sign convention: bess_kw > 0 discharges into the airport bus.
struct AirportPowerProfile {
  std::string airport_id;
  std::vector<double> grid_kw;       // day_steps
  std::vector<double> renewable_kw;  // day_steps
  std::vector<double> bess_kw;       // day_steps
  std::vector<double> apron_kw;      // day_steps, zero outside operations
  std::vector<double> bess_kwh;      // day_steps + 1 layers

  bool operator==(const AirportPowerProfile&) const = default;
};

/// Usable solar power bound, kW: irradiance * area * efficiency, converted
/// from W. This is the single W-to-kW conversion point of the library.
double solar_cap_kw(double irradiance_w_m2, double area_m2, double efficiency);

/// Grid draw from the airport power split: apron + aux - renewable - bess.
double grid_power_kw(double apron_kw, double aux_kw, double renewable_kw, double bess_kw);

/// One-step BESS feasibility: both dynamic inequalities
///   E(t+1) <= E(t) - eta * P_b * dt   and   E(t+1) <= E(t) - P_b / eta * dt.
/// For P_b < 0 (charging) the first branch binds, for P_b > 0 the second.
struct BessStepCheck {
  double residual_kwh = 0.0;  // max violation over both branches, <= 0 when feasible
  bool pass = false;
};

BessStepCheck bess_feasible_step(double e_t_kwh, double e_t1_kwh, double bess_kw,
                                 double efficiency, int dt_minutes);

/// Profile CSV export: `airport,t,P_gr,P_rnw,P_b,P_a,E_b` (E_b at the step's
/// start layer; one trailing row carries the final layer).
void write_profile_csv(std::ostream& out, const AirportPowerProfile& profile);

}  // namespace aerogrid
