#include "test_scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace aerogrid::testsupport {

namespace {

constexpr double kPi = 3.14159265358979323846;

AirportSpec make_airport(std::string id, double solar_m2, double bess_kwh) {
  AirportSpec a;
  a.id = std::move(id);
  a.solar_area_m2 = solar_m2;
  a.solar_efficiency = 0.20;
  a.bess_capacity_kwh = bess_kwh;
  a.bess_min_kwh = 0.0;
  a.bess_power_min_kw = -500.0;
  a.bess_power_max_kw = 500.0;
  a.bess_efficiency = 0.95;
  a.apron_power_max_kw = 2400.0;
  a.aux_power_kw = 0.0;
  a.bess_init_soc_frac = 0.5;
  return a;
}

AircraftSpec make_alice(std::string id, std::string base) {
  AircraftSpec p;
  p.id = std::move(id);
  p.mass_kg = 7000.0;
  p.lift_over_drag = 16.0;
  p.eta_takeoff = 0.85;
  p.eta_cruise = 0.90;
  p.cruise_altitude_m = 3000.0;
  p.battery_capacity_kwh = 850.0;
  p.charge_power_max_kw = 600.0;
  p.initial_energy_kwh = 300.0;
  p.min_final_energy_kwh = 300.0;
  p.origin_airport = base;
  p.destination_airport = std::move(base);
  return p;
}

}  // namespace

std::vector<double> bell_irradiance(const TimeGrid& grid, double peak_w_m2, double sunrise_minute,
                                    double sunset_minute) {
  std::vector<double> series(grid.day_steps, 0.0);
  for (int s = 0; s < grid.day_steps; ++s) {
    const double minute = s * grid.dt_minutes;
    if (minute <= sunrise_minute || minute >= sunset_minute) continue;
    series[s] = peak_w_m2 * std::sin(kPi * (minute - sunrise_minute) / (sunset_minute - sunrise_minute));
  }
  return series;
}

Scenario tiny_scenario() {
  Scenario s;
  s.time_grid = TimeGrid{60, 24, 6, 13};  // hourly grid, 06:00-13:00 operations

  AirportSpec aaa = make_airport("AAA", 1500.0, 200.0);
  aaa.bess_power_min_kw = -100.0;
  aaa.bess_power_max_kw = 100.0;
  aaa.bess_efficiency = 0.90;
  aaa.apron_power_max_kw = 500.0;
  AirportSpec bbb = make_airport("BBB", 0.0, 0.0);
  bbb.bess_init_soc_frac = 0.0;
  bbb.apron_power_max_kw = 500.0;
  bbb.aux_power_kw = 5.0;  // anchors the optimum at 5 kW * 24 h
  s.airports = {aaa, bbb};

  AircraftSpec ac;
  ac.id = "AC1";
  ac.mass_kg = 4000.0;
  ac.lift_over_drag = 14.0;
  ac.eta_takeoff = 0.85;
  ac.eta_cruise = 0.90;
  ac.cruise_altitude_m = 2000.0;
  ac.battery_capacity_kwh = 300.0;
  ac.charge_power_max_kw = 150.0;
  ac.initial_energy_kwh = 150.0;
  ac.min_final_energy_kwh = 150.0;
  ac.origin_airport = "AAA";
  ac.destination_airport = "BBB";
  s.fleet = {ac};

  FlightConnection f;
  f.id = "F1";
  f.origin = "AAA";
  f.destination = "BBB";
  f.distance_km = 50.0;
  f.block_time_minutes = 60.0;
  f.demand_per_day = 1;
  s.flights = {f};

  s.irradiance.by_airport["AAA"] = bell_irradiance(s.time_grid, 900.0);
  s.k_max = 1;
  s.validate();
  return s;
}

const std::vector<double>& abc_irradiance_peaks() {
  // Monday .. Sunday; Saturday is the abundant-solar day. Peaks stay clear
  // of the band where available solar roughly equals the fleet's energy
  // need, where proving optimality becomes disproportionately expensive.
  static const std::vector<double> peaks = {950.0, 450.0, 300.0, 1000.0, 500.0, 1300.0, 250.0};
  return peaks;
}

Scenario abc_scenario(int day) {
  if (day < 0 || day > 6) throw std::out_of_range("abc_scenario: day must be in [0, 7)");
  Scenario s;
  s.time_grid = TimeGrid{10, 144, 36, 132};  // 06:00-22:00 operations

  s.airports = {make_airport("AUA", 2000.0, 1000.0), make_airport("BON", 2000.0, 1000.0),
                make_airport("CUR", 2000.0, 1000.0)};
  for (int k = 1; k <= 8; ++k) s.fleet.push_back(make_alice("AC" + std::to_string(k), "CUR"));

  // Monday .. Sunday scheduled flights per direction.
  static const int demand_aua[7] = {8, 5, 5, 8, 8, 6, 5};
  static const int demand_bon[7] = {11, 10, 9, 10, 11, 9, 8};
  auto connection = [](std::string id, std::string from, std::string to, double km, double minutes,
                       int demand) {
    FlightConnection f;
    f.id = std::move(id);
    f.origin = std::move(from);
    f.destination = std::move(to);
    f.distance_km = km;
    f.block_time_minutes = minutes;
    f.demand_per_day = demand;
    return f;
  };
  s.flights = {connection("CUR_AUA", "CUR", "AUA", 125.0, 35.0, demand_aua[day]),
               connection("AUA_CUR", "AUA", "CUR", 125.0, 35.0, demand_aua[day]),
               connection("CUR_BON", "CUR", "BON", 80.0, 25.0, demand_bon[day]),
               connection("BON_CUR", "BON", "CUR", 80.0, 25.0, demand_bon[day])};

  const double peak = abc_irradiance_peaks()[day];
  for (const auto& a : s.airports)
    s.irradiance.by_airport[a.id] = bell_irradiance(s.time_grid, peak);
  s.k_max = 2;
  s.fixed_schedule = abc_timetable(s);
  s.validate();
  return s;
}

std::vector<FixedMovement> abc_timetable(const Scenario& s) {
  // Morning and evening waves, the commuter pattern of a real island
  // timetable: half the rotations leave right at the start of operations,
  // the other half return just before close. Four dedicated aircraft per
  // route, rotating in declaration order; assignments are explicit so the
  // chains are feasible by construction.
  std::vector<FixedMovement> movements;
  const int ops_start = s.time_grid.ops_start_index;
  const int ops_end = s.time_grid.ops_end_index;

  struct Route {
    const char* outbound;
    const char* inbound;
    int tf;           // steps per leg
    int first_k;      // first of four dedicated aircraft
    int offset;       // destagger departures between routes
    int demand;
  };
  const int demand_aua = s.flights[s.flight_index("CUR_AUA")].demand_per_day;
  const int demand_bon = s.flights[s.flight_index("CUR_BON")].demand_per_day;
  const Route routes[2] = {{"CUR_AUA", "AUA_CUR", 4, 0, 2, demand_aua},
                           {"CUR_BON", "BON_CUR", 3, 4, 3, demand_bon}};

  for (const Route& r : routes) {
    const int morning = (r.demand + 1) / 2;
    const int evening = r.demand - morning;
    const int cycle = 2 * r.tf + 1;
    // Last outbound leaves so its rotation lands with four charge steps spare.
    const int last_out = ops_end - cycle - 4;
    for (int trip = 0; trip < r.demand; ++trip) {
      const int dep = trip < morning
                          ? ops_start + r.offset + 3 * trip
                          : last_out - 3 * (r.demand - 1 - trip);
      const std::string aircraft = s.fleet[r.first_k + trip % 4].id;
      movements.push_back(FixedMovement{r.outbound, dep, aircraft});
      movements.push_back(FixedMovement{r.inbound, dep + r.tf + 1, aircraft});
    }
  }
  std::stable_sort(movements.begin(), movements.end(),
                   [](const FixedMovement& a, const FixedMovement& b) {
                     return a.departure_step < b.departure_step;
                   });
  return movements;
}

Scenario two_leg_scenario(int n_aircraft) {
  Scenario s;
  s.time_grid = TimeGrid{60, 24, 6, 12};  // 7 layers, 6 steps

  AirportSpec aaa = make_airport("AAA", 1800.0, 300.0);
  aaa.bess_power_min_kw = -150.0;
  aaa.bess_power_max_kw = 150.0;
  aaa.apron_power_max_kw = 600.0;
  AirportSpec bbb = make_airport("BBB", 0.0, 0.0);
  bbb.aux_power_kw = 4.0;
  bbb.apron_power_max_kw = 600.0;
  s.airports = {aaa, bbb};

  for (int k = 0; k < n_aircraft; ++k) {
    AircraftSpec ac;
    ac.id = "AC" + std::to_string(k + 1);
    ac.mass_kg = 4000.0;
    ac.lift_over_drag = 14.0;
    ac.eta_takeoff = 0.85;
    ac.eta_cruise = 0.90;
    ac.cruise_altitude_m = 2000.0;
    ac.battery_capacity_kwh = 300.0;
    ac.charge_power_max_kw = 150.0;
    ac.initial_energy_kwh = 160.0;
    ac.origin_airport = "AAA";
    ac.destination_airport = "AAA";
    s.fleet.push_back(std::move(ac));
  }

  FlightConnection out;
  out.id = "OUT";
  out.origin = "AAA";
  out.destination = "BBB";
  out.distance_km = 50.0;
  out.block_time_minutes = 110.0;  // two steps
  out.demand_per_day = 1;
  FlightConnection back = out;
  back.id = "BACK";
  back.origin = "BBB";
  back.destination = "AAA";
  s.flights = {out, back};

  s.irradiance.by_airport["AAA"] = bell_irradiance(s.time_grid, 900.0);
  s.k_max = 1;
  s.validate();
  return s;
}

Solution make_idle_solution(const Scenario& s, const TimeExpandedGraph& graph) {
  const TimeGrid& grid = s.time_grid;
  Solution sol;
  sol.paths.resize(s.fleet.size());
  sol.charge_kw.resize(s.fleet.size());
  sol.soc_kwh.resize(s.fleet.size());
  for (std::size_t k = 0; k < s.fleet.size(); ++k) {
    const int home = s.airport_index(s.fleet[k].origin_airport);
    for (int l = grid.ops_start_index; l < grid.ops_end_index; ++l)
      sol.paths[k].push_back(graph.ground_edge_id(home, l));
    sol.charge_kw[k].assign(s.airports.size(), std::vector<double>(grid.ops_steps(), 0.0));
    sol.soc_kwh[k].assign(grid.ops_layers(), s.fleet[k].initial_energy_kwh);
  }
  for (const auto& ap : s.airports) {
    AirportPowerProfile p;
    p.airport_id = ap.id;
    p.grid_kw.assign(grid.day_steps, ap.aux_power_kw);
    p.renewable_kw.assign(grid.day_steps, 0.0);
    p.bess_kw.assign(grid.day_steps, 0.0);
    p.apron_kw.assign(grid.day_steps, 0.0);
    p.bess_kwh.assign(grid.day_steps + 1, ap.bess_init_soc_frac * ap.bess_capacity_kwh);
    sol.objective_kwh += ap.aux_power_kw * grid.day_steps * grid.step_hours();
    sol.airports.push_back(std::move(p));
  }
  return sol;
}

Scenario random_guarded_scenario(std::uint32_t seed) {
  std::mt19937 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  auto pick_int = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  Scenario s;
  const int n_flights = pick_int(1, 2);
  const int n_aircraft = pick_int(1, 2);
  const int dt = 120;  // coarse: 12 day steps
  const int layers = n_flights == 2 ? pick_int(6, 7) : pick_int(6, 10);
  const int day_steps = (24 * 60) / dt;
  const int ops_start = pick_int(0, day_steps - layers + 1);
  s.time_grid = TimeGrid{dt, day_steps, ops_start, ops_start + layers - 1};

  for (const char* id : {"AAA", "BBB"}) {
    AirportSpec a;
    a.id = id;
    a.solar_area_m2 = rng() % 3 == 0 ? 0.0 : uniform(500.0, 3000.0);
    a.solar_efficiency = 0.2;
    a.bess_capacity_kwh = rng() % 3 == 0 ? 0.0 : uniform(50.0, 400.0);
    a.bess_min_kwh = 0.0;
    a.bess_power_min_kw = -uniform(50.0, 300.0);
    a.bess_power_max_kw = uniform(50.0, 300.0);
    a.bess_efficiency = uniform(0.85, 1.0);
    a.apron_power_max_kw = uniform(200.0, 800.0);
    a.aux_power_kw = rng() % 2 == 0 ? 0.0 : uniform(2.0, 20.0);
    a.bess_init_soc_frac = uniform(0.2, 0.7);
    s.airports.push_back(std::move(a));
  }

  int total_demand = 0;
  const bool forward = rng() % 2 == 0;
  for (int f = 0; f < n_flights; ++f) {
    FlightConnection fc;
    fc.id = "F" + std::to_string(f + 1);
    // A second connection always runs the other way, so round trips exist.
    const bool this_forward = f == 0 ? forward : !forward;
    fc.origin = this_forward ? "AAA" : "BBB";
    fc.destination = this_forward ? "BBB" : "AAA";
    fc.distance_km = uniform(30.0, 120.0);
    fc.block_time_minutes = uniform(0.6, 1.8) * dt;
    fc.demand_per_day = pick_int(0, 2);
    total_demand += fc.demand_per_day;
    s.flights.push_back(std::move(fc));
  }

  // Zero-demand instances keep one aircraft so the oracle's path product
  // stays small (no demand filter prunes the combinations).
  const int fleet_size = total_demand == 0 ? 1 : n_aircraft;
  for (int k = 0; k < fleet_size; ++k) {
    AircraftSpec p;
    p.id = "AC" + std::to_string(k + 1);
    p.mass_kg = uniform(3000.0, 8000.0);
    p.lift_over_drag = uniform(12.0, 18.0);
    p.eta_takeoff = uniform(0.80, 0.95);
    p.eta_cruise = uniform(0.85, 0.95);
    p.cruise_altitude_m = uniform(1000.0, 3000.0);
    p.battery_capacity_kwh = uniform(300.0, 700.0);
    p.charge_power_max_kw = uniform(100.0, 400.0);
    p.initial_energy_kwh = uniform(0.4, 1.0) * p.battery_capacity_kwh;
    if (rng() % 3 == 0) p.min_final_energy_kwh = 0.6 * p.initial_energy_kwh;
    // Mostly day trips from the first flight's origin; the rest stress the
    // continuity constraints with harder endpoints.
    p.origin_airport = rng() % 4 == 0 ? "BBB" : s.flights[0].origin;
    p.destination_airport = rng() % 4 == 0 ? "BBB" : p.origin_airport;
    s.fleet.push_back(std::move(p));
  }

  const int mode = pick_int(0, 2);
  const double scale = mode == 0 ? 0.0 : (mode == 1 ? uniform(100.0, 900.0) : 5000.0);
  for (const auto& a : s.airports)
    s.irradiance.by_airport[a.id] = std::vector<double>(day_steps, scale);

  s.k_max = pick_int(1, 2);
  s.validate();
  return s;
}

}  // namespace aerogrid::testsupport
