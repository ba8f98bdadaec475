#include "aerogrid/airport_energy.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace aerogrid {

double solar_cap_kw(double irradiance_w_m2, double area_m2, double efficiency) {
  return irradiance_w_m2 * area_m2 * efficiency / 1000.0;
}

double grid_power_kw(double apron_kw, double aux_kw, double renewable_kw, double bess_kw) {
  return apron_kw + aux_kw - renewable_kw - bess_kw;
}

BessStepCheck bess_feasible_step(double e_t_kwh, double e_t1_kwh, double bess_kw,
                                 double efficiency, int dt_minutes) {
  const double dt_h = dt_minutes / 60.0;
  const double charge_bound = e_t_kwh - efficiency * bess_kw * dt_h;
  const double discharge_bound = e_t_kwh - bess_kw / efficiency * dt_h;
  const double violation = std::max(e_t1_kwh - charge_bound, e_t1_kwh - discharge_bound);
  return BessStepCheck{violation, violation <= 1e-9};
}

void write_profile_csv(std::ostream& out, const AirportPowerProfile& p) {
  out << "airport,t,P_gr,P_rnw,P_b,P_a,E_b\n";
  char buf[256];
  const int steps = static_cast<int>(p.grid_kw.size());
  for (int t = 0; t < steps; ++t) {
    std::snprintf(buf, sizeof(buf), "%s,%d,%.6f,%.6f,%.6f,%.6f,%.6f\n", p.airport_id.c_str(), t,
                  p.grid_kw[t], p.renewable_kw[t], p.bess_kw[t], p.apron_kw[t], p.bess_kwh[t]);
    out << buf;
  }
  // Final layer: only the stored energy is defined.
  std::snprintf(buf, sizeof(buf), "%s,%d,,,,,%.6f\n", p.airport_id.c_str(), steps,
                p.bess_kwh[steps]);
  out << buf;
}

}  // namespace aerogrid
