#pragma once

#include <vector>

#include "aerogrid/scenario.hpp"

namespace aerogrid {

namespace constants {
inline constexpr double kGravity = 9.81;          // m/s^2
inline constexpr double kJoulePerKwh = 3.6e6;
}  // namespace constants

struct FlightEnergyInputs {
  double mass_kg = 0.0;
  double cruise_altitude_m = 0.0;
  double eta_takeoff = 1.0;
  double eta_cruise = 1.0;
  double lift_over_drag = 0.0;
  double distance_km = 0.0;
};

/// Energy drawn from the aircraft battery for one flight, kWh:
/// take-off/climb term m*g*h/eta_TO plus Breguet-style cruise term
/// m*g/(eta_cruise*(L/D))*d. Evaluated in joules, converted once.
double flight_energy(const FlightEnergyInputs& inputs);

double flight_energy(const AircraftSpec& aircraft, const FlightConnection& flight);

/// [aircraft][flight] energy matrix for a scenario.
std::vector<std::vector<double>> flight_energy_matrix(const Scenario& scenario);

/// Net battery change over one step: charging minus the expenditure of any
/// flight departing this step. Path structure guarantees at most one of the
/// two is active.
double soc_delta(double charging_kw, double flight_energy_kwh, int dt_minutes);

struct SocTrajectory {
  std::vector<double> energy_kwh;      // one per layer
  std::vector<int> violation_layers;   // layers breaching [0, capacity]

  bool feasible() const { return violation_layers.empty(); }
};

/// Cumulative sum of deltas from the initial energy. Bound violations are
/// recorded, not thrown; the validator consumes them.
SocTrajectory propagate_soc(double initial_kwh, const std::vector<double>& deltas_kwh,
                            double capacity_kwh);

}  // namespace aerogrid
