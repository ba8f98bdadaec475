#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aerogrid/milp_builder.hpp"
#include "aerogrid/scenario.hpp"
#include "aerogrid/solver.hpp"
#include "aerogrid/validator.hpp"

namespace aerogrid {

struct FlightStats {
  std::string flight_id;
  int demanded = 0;
  int flown = 0;
};

/// First departure / last arrival layers of one aircraft; unset when the
/// aircraft stays on the ground all day.
struct AircraftWindow {
  std::string aircraft_id;
  std::optional<int> first_departure_layer;
  std::optional<int> last_arrival_layer;
};

struct RunSummary {
  std::string status;
  std::string backend;
  double objective_kwh = 0.0;
  double gap = 0.0;
  double solve_wall_time_s = 0.0;
  double total_grid_energy_kwh = 0.0;
  std::map<std::string, double> grid_energy_kwh_by_airport;
  std::vector<FlightStats> flights;
  std::vector<AircraftWindow> aircraft_windows;
};

RunSummary make_run_summary(const Scenario& scenario, const TimeExpandedGraph& graph,
                            const Solution& solution, const SolveResult& result);

// --- file exports (byte-stable for identical inputs) ---

/// Schedule CSV: `aircraft,t,activity{ground|flight|virtual},airport_or_flight,P_c_kw,E_p_kwh`.
void write_schedule_csv(std::ostream& out, const Scenario& scenario,
                        const TimeExpandedGraph& graph, const Solution& solution);

std::string summary_to_json(const RunSummary& summary);
std::string report_to_json(const ValidationReport& report);
std::string solution_to_json(const Scenario& scenario, const Solution& solution);
Solution solution_from_json(const std::string& text, const Scenario& scenario,
                            const TimeExpandedGraph& graph);
Solution load_solution(const std::string& path, const Scenario& scenario,
                       const TimeExpandedGraph& graph);

// --- command orchestration (the CLI front end maps flags onto these) ---

struct RunOptions {
  std::string scenario_path;
  std::string irradiance_path;  // optional; overrides irradiance embedded in the scenario
  std::string out_dir;
  std::string backend = "highs";
  std::string fixed_schedule_path;  // optional; overrides the scenario's fixed_schedule
  std::optional<int> dt_minutes;    // optional grid override
  double time_limit_s = 600.0;
  double gap_tol = 1e-6;
  int threads = 1;
  int seed = 0;
  bool export_lp = false;
  bool accept_gap = false;
  bool quiet = false;
};

// Exit codes shared by the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitNotOptimal = 4;

/// solve: load, build, solve, validate, export. Writes schedule.csv,
/// airport_<id>.csv, summary.json, validation.json, solution.json and
/// optionally model.lp into the run directory.
int cmd_solve(const RunOptions& options, std::ostream& log);

/// compare: baseline (fixed timetable, charging optimized) vs. free model;
/// writes both run directories plus compare.json with the grid-energy
/// reduction. Baseline infeasibility is an error naming the first violating
/// movement where detectable.
int cmd_compare(const RunOptions& options, std::ostream& log);

/// validate: re-check a previously exported solution file.
int cmd_validate(const RunOptions& options, const std::string& solution_path, std::ostream& log);

}  // namespace aerogrid
