#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aerogrid/graph.hpp"
#include "aerogrid/milp_builder.hpp"
#include "aerogrid/scenario.hpp"

namespace aerogrid::testsupport {

/// 2 airports, 1 aircraft, 1 demanded flight on a coarse grid. Small enough
/// for the exhaustive oracle, non-trivial enough to need charging.
Scenario tiny_scenario();

/// ABC-style instance: 3 airports (AUA, BON, CUR), 8 aircraft based at CUR,
/// 4 flight connections. `day` in [0, 7) selects the weekday demand column
/// (Monday..Sunday) and the irradiance profile.
Scenario abc_scenario(int day);

/// Morning-and-evening-wave timetable covering the scenario's demand with
/// explicit aircraft assignments; feasible by construction.
std::vector<FixedMovement> abc_timetable(const Scenario& scenario);

/// Daily irradiance peaks used by abc_scenario, W/m^2, Monday..Sunday.
const std::vector<double>& abc_irradiance_peaks();

/// Sine-bell irradiance over [sunrise, sunset], evaluated per day step.
std::vector<double> bell_irradiance(const TimeGrid& grid, double peak_w_m2,
                                    double sunrise_minute = 390.0, double sunset_minute = 1140.0);

/// Randomized instance inside the oracle guard (<= 2 aircraft, <= 12 layers,
/// <= 12 flight edges). Deterministic in `seed`.
Scenario random_guarded_scenario(std::uint32_t seed);

/// Out-and-back pair of two-step flights between two airports; every aircraft
/// starts and ends at AAA. Exercises virtual-edge chains. Oracle-guard sized.
Scenario two_leg_scenario(int n_aircraft = 1);

/// Hand-built everything-idle solution: aircraft parked at their origins, no
/// charging, BESS held flat at its floor, grid covering only the auxiliary
/// load. Feasible (and every BESS dynamic tight) whenever demand is zero and
/// each aircraft starts where it ends with enough initial energy.
Solution make_idle_solution(const Scenario& scenario, const TimeExpandedGraph& graph);

}  // namespace aerogrid::testsupport
