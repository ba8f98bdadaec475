#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace aerogrid {

/// Uniform discretization of one local day.
///
/// Powers live on steps s in [0, day_steps); stored energies live on the
/// day_steps+1 layer boundaries. The airport operations window is the
/// contiguous layer range [ops_start_index, ops_end_index]; aircraft exist
/// only on those layers, so the flight network has
/// ops_end_index - ops_start_index + 1 time layers.
struct TimeGrid {
  int dt_minutes = 10;
  int day_steps = 144;
  int ops_start_index = 0;
  int ops_end_index = 144;

  int ops_steps() const { return ops_end_index - ops_start_index; }
  int ops_layers() const { return ops_steps() + 1; }
  double step_hours() const { return dt_minutes / 60.0; }
  int minute_of_layer(int layer) const { return layer * dt_minutes; }

  void validate() const;
  bool operator==(const TimeGrid&) const = default;
};

struct AirportSpec {
  std::string id;
  double solar_area_m2 = 0.0;
  double solar_efficiency = 1.0;
  double bess_capacity_kwh = 0.0;
  double bess_min_kwh = 0.0;
  double bess_power_min_kw = 0.0;  // <= 0, max charge rate
  double bess_power_max_kw = 0.0;  // >= 0, max discharge rate
  double bess_efficiency = 1.0;
  double apron_power_max_kw = 0.0;
  double aux_power_kw = 0.0;
  double bess_init_soc_frac = 0.5;

  void validate() const;
  bool operator==(const AirportSpec&) const = default;
};

struct AircraftSpec {
  std::string id;
  double mass_kg = 0.0;
  double lift_over_drag = 0.0;
  double eta_takeoff = 1.0;
  double eta_cruise = 1.0;
  double cruise_altitude_m = 0.0;
  double battery_capacity_kwh = 0.0;
  double charge_power_max_kw = 0.0;
  double initial_energy_kwh = 0.0;
  // Minimum stored energy required at the last operations layer. The model
  // imposes nothing at end of day unless this is set.
  std::optional<double> min_final_energy_kwh;
  std::string origin_airport;
  std::string destination_airport;

  void validate() const;
  bool operator==(const AircraftSpec&) const = default;
};

struct FlightConnection {
  std::string id;
  std::string origin;
  std::string destination;
  double distance_km = 0.0;
  double block_time_minutes = 0.0;
  int demand_per_day = 0;

  void validate() const;
  bool operator==(const FlightConnection&) const = default;
};

/// Per-airport solar irradiance in W/m^2, one value per day step.
struct IrradianceSeries {
  std::map<std::string, std::vector<double>> by_airport;

  bool operator==(const IrradianceSeries&) const = default;
};

/// One movement of a fixed timetable: flight departing at a given layer,
/// optionally pinned to a specific aircraft.
struct FixedMovement {
  std::string flight_id;
  int departure_step = 0;
  std::optional<std::string> aircraft_id;

  bool operator==(const FixedMovement&) const = default;
};

struct Scenario {
  TimeGrid time_grid;
  std::vector<AirportSpec> airports;
  std::vector<AircraftSpec> fleet;
  std::vector<FlightConnection> flights;
  IrradianceSeries irradiance;
  int k_max = 1;
  std::vector<FixedMovement> fixed_schedule;

  int airport_index(const std::string& id) const;
  int flight_index(const std::string& id) const;
  int aircraft_index(const std::string& id) const;

  /// Irradiance for one airport; zero-filled series when none was supplied.
  std::vector<double> irradiance_for(const std::string& airport_id) const;

  /// Checks every structural invariant; throws Error naming the first
  /// violating field.
  void validate() const;

  bool operator==(const Scenario&) const = default;
};

/// Per-flight daily demand; the sum over flights is the number of required
/// departures for the day.
std::map<std::string, int> demand_total(const Scenario& scenario);

}  // namespace aerogrid
