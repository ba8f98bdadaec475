#include "aerogrid/scenario.hpp"

#include <algorithm>
#include <set>

#include "aerogrid/error.hpp"

namespace aerogrid {

namespace {

std::string quoted(const std::string& s) { return "'" + s + "'"; }

}  // namespace

void TimeGrid::validate() const {
  if (dt_minutes <= 0) fail("time.dt_minutes must be positive, got " + std::to_string(dt_minutes));
  if ((24 * 60) % dt_minutes != 0)
    fail("time.dt_minutes must divide 24*60 exactly, got " + std::to_string(dt_minutes));
  if (day_steps != (24 * 60) / dt_minutes)
    fail("time.day_steps must equal 24*60/dt_minutes = " + std::to_string((24 * 60) / dt_minutes) +
         ", got " + std::to_string(day_steps));
  if (ops_start_index < 0 || ops_start_index >= ops_end_index || ops_end_index > day_steps)
    fail("time operations window invalid: need 0 <= ops_start_index < ops_end_index <= day_steps, got [" +
         std::to_string(ops_start_index) + ", " + std::to_string(ops_end_index) + "] with day_steps=" +
         std::to_string(day_steps));
}

void AirportSpec::validate() const {
  const std::string where = "airport " + quoted(id) + ": ";
  if (id.empty()) fail("airport with empty id");
  if (solar_area_m2 < 0) fail(where + "solar_area_m2 must be >= 0");
  if (solar_efficiency <= 0 || solar_efficiency > 1) fail(where + "solar_efficiency must be in (0,1]");
  if (bess_capacity_kwh < 0) fail(where + "bess_capacity_kwh must be >= 0");
  if (bess_min_kwh < 0 || bess_min_kwh > bess_capacity_kwh)
    fail(where + "bess_min_kwh must be in [0, bess_capacity_kwh]");
  if (bess_power_min_kw > 0) fail(where + "bess_power_min_kw must be <= 0");
  if (bess_power_max_kw < 0) fail(where + "bess_power_max_kw must be >= 0");
  if (bess_efficiency <= 0 || bess_efficiency > 1) fail(where + "bess_efficiency must be in (0,1]");
  if (apron_power_max_kw < 0) fail(where + "apron_power_max_kw must be >= 0");
  if (aux_power_kw < 0) fail(where + "aux_power_kw must be >= 0");
  if (bess_init_soc_frac < 0 || bess_init_soc_frac > 1)
    fail(where + "bess_init_soc_frac must be in [0,1]");
  const double init_kwh = bess_init_soc_frac * bess_capacity_kwh;
  if (init_kwh < bess_min_kwh - 1e-9)
    fail(where + "bess_init_soc_frac * bess_capacity_kwh is below bess_min_kwh");
}

void AircraftSpec::validate() const {
  const std::string where = "aircraft " + quoted(id) + ": ";
  if (id.empty()) fail("aircraft with empty id");
  if (mass_kg <= 0) fail(where + "mass_kg must be > 0");
  if (lift_over_drag <= 0) fail(where + "lift_over_drag must be > 0");
  if (eta_takeoff <= 0 || eta_takeoff > 1) fail(where + "eta_takeoff must be in (0,1]");
  if (eta_cruise <= 0 || eta_cruise > 1) fail(where + "eta_cruise must be in (0,1]");
  if (cruise_altitude_m <= 0) fail(where + "cruise_altitude_m must be > 0");
  if (battery_capacity_kwh <= 0) fail(where + "battery_capacity_kwh must be > 0");
  if (charge_power_max_kw < 0) fail(where + "charge_power_max_kw must be >= 0");
  if (initial_energy_kwh < 0 || initial_energy_kwh > battery_capacity_kwh)
    fail(where + "initial_energy_kwh must be in [0, battery_capacity_kwh]");
  if (min_final_energy_kwh &&
      (*min_final_energy_kwh < 0 || *min_final_energy_kwh > battery_capacity_kwh))
    fail(where + "min_final_energy_kwh must be in [0, battery_capacity_kwh]");
  if (origin_airport.empty()) fail(where + "origin_airport missing");
  if (destination_airport.empty()) fail(where + "destination_airport missing");
}

void FlightConnection::validate() const {
  const std::string where = "flight " + quoted(id) + ": ";
  if (id.empty()) fail("flight with empty id");
  if (origin == destination) fail(where + "origin must differ from destination (origin != destination)");
  if (distance_km <= 0) fail(where + "distance_km must be > 0");
  if (block_time_minutes <= 0) fail(where + "block_time_minutes must be > 0");
  if (demand_per_day < 0) fail(where + "demand_per_day must be >= 0");
}

int Scenario::airport_index(const std::string& id) const {
  for (std::size_t i = 0; i < airports.size(); ++i)
    if (airports[i].id == id) return static_cast<int>(i);
  return -1;
}

int Scenario::flight_index(const std::string& id) const {
  for (std::size_t i = 0; i < flights.size(); ++i)
    if (flights[i].id == id) return static_cast<int>(i);
  return -1;
}

int Scenario::aircraft_index(const std::string& id) const {
  for (std::size_t i = 0; i < fleet.size(); ++i)
    if (fleet[i].id == id) return static_cast<int>(i);
  return -1;
}

std::vector<double> Scenario::irradiance_for(const std::string& airport_id) const {
  auto it = irradiance.by_airport.find(airport_id);
  if (it != irradiance.by_airport.end()) return it->second;
  return std::vector<double>(time_grid.day_steps, 0.0);
}

void Scenario::validate() const {
  time_grid.validate();

  std::set<std::string> airport_ids;
  for (const auto& a : airports) {
    a.validate();
    if (!airport_ids.insert(a.id).second) fail("duplicate airport id " + quoted(a.id));
  }
  std::set<std::string> aircraft_ids;
  for (const auto& p : fleet) {
    p.validate();
    if (!aircraft_ids.insert(p.id).second) fail("duplicate aircraft id " + quoted(p.id));
    if (airport_index(p.origin_airport) < 0)
      fail("aircraft " + quoted(p.id) + ": unknown origin_airport " + quoted(p.origin_airport));
    if (airport_index(p.destination_airport) < 0)
      fail("aircraft " + quoted(p.id) + ": unknown destination_airport " + quoted(p.destination_airport));
  }
  std::set<std::string> flight_ids;
  for (const auto& f : flights) {
    f.validate();
    if (!flight_ids.insert(f.id).second) fail("duplicate flight id " + quoted(f.id));
    if (airport_index(f.origin) < 0)
      fail("flight " + quoted(f.id) + ": unknown origin airport " + quoted(f.origin));
    if (airport_index(f.destination) < 0)
      fail("flight " + quoted(f.id) + ": unknown destination airport " + quoted(f.destination));
  }
  for (const auto& [id, series] : irradiance.by_airport) {
    if (airport_index(id) < 0) fail("irradiance references undeclared airport " + quoted(id));
    if (static_cast<int>(series.size()) != time_grid.day_steps)
      fail("irradiance for " + quoted(id) + " must have day_steps=" +
           std::to_string(time_grid.day_steps) + " values, got " + std::to_string(series.size()));
    for (double v : series)
      if (v < 0) fail("irradiance for " + quoted(id) + " contains a negative value");
  }
  if (k_max < 1) fail("k_max must be >= 1, got " + std::to_string(k_max));
  for (const auto& m : fixed_schedule) {
    if (flight_index(m.flight_id) < 0)
      fail("fixed_schedule references undeclared flight " + quoted(m.flight_id));
    if (m.aircraft_id && aircraft_index(*m.aircraft_id) < 0)
      fail("fixed_schedule references undeclared aircraft " + quoted(*m.aircraft_id));
    if (m.departure_step < time_grid.ops_start_index || m.departure_step >= time_grid.ops_end_index)
      fail("fixed_schedule movement of flight " + quoted(m.flight_id) + " departs at step " +
           std::to_string(m.departure_step) + ", outside the operations window");
  }
}

std::map<std::string, int> demand_total(const Scenario& scenario) {
  std::map<std::string, int> demand;
  for (const auto& f : scenario.flights) demand[f.id] = f.demand_per_day;
  return demand;
}

}  // namespace aerogrid
