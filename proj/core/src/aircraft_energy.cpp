#include "aerogrid/aircraft_energy.hpp"

#include "aerogrid/error.hpp"

namespace aerogrid {

double flight_energy(const FlightEnergyInputs& in) {
  if (in.eta_takeoff <= 0 || in.eta_cruise <= 0 || in.lift_over_drag <= 0)
    fail("flight_energy: efficiencies and L/D must be positive");
  if (in.mass_kg <= 0 || in.cruise_altitude_m < 0 || in.distance_km < 0)
    fail("flight_energy: mass must be positive, altitude and distance non-negative");
  const double weight_n = in.mass_kg * constants::kGravity;
  const double climb_j = weight_n * in.cruise_altitude_m / in.eta_takeoff;
  const double cruise_j =
      weight_n / (in.eta_cruise * in.lift_over_drag) * (in.distance_km * 1000.0);
  return (climb_j + cruise_j) / constants::kJoulePerKwh;
}

double flight_energy(const AircraftSpec& aircraft, const FlightConnection& flight) {
  return flight_energy(FlightEnergyInputs{aircraft.mass_kg, aircraft.cruise_altitude_m,
                                          aircraft.eta_takeoff, aircraft.eta_cruise,
                                          aircraft.lift_over_drag, flight.distance_km});
}

std::vector<std::vector<double>> flight_energy_matrix(const Scenario& scenario) {
  std::vector<std::vector<double>> matrix(scenario.fleet.size());
  for (std::size_t k = 0; k < scenario.fleet.size(); ++k) {
    matrix[k].reserve(scenario.flights.size());
    for (const auto& f : scenario.flights) matrix[k].push_back(flight_energy(scenario.fleet[k], f));
  }
  return matrix;
}

double soc_delta(double charging_kw, double flight_energy_kwh, int dt_minutes) {
  return charging_kw * (dt_minutes / 60.0) - flight_energy_kwh;
}

SocTrajectory propagate_soc(double initial_kwh, const std::vector<double>& deltas_kwh,
                            double capacity_kwh) {
  SocTrajectory traj;
  traj.energy_kwh.reserve(deltas_kwh.size() + 1);
  traj.energy_kwh.push_back(initial_kwh);
  for (double d : deltas_kwh) traj.energy_kwh.push_back(traj.energy_kwh.back() + d);
  constexpr double tol = 1e-9;
  for (std::size_t l = 0; l < traj.energy_kwh.size(); ++l) {
    const double e = traj.energy_kwh[l];
    if (e < -tol || e > capacity_kwh + tol) traj.violation_layers.push_back(static_cast<int>(l));
  }
  return traj;
}

}  // namespace aerogrid
