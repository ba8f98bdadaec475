#include "aerogrid/reporting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "aerogrid/error.hpp"
#include "aerogrid/lp_writer.hpp"
#include "aerogrid/scenario_io.hpp"

namespace aerogrid {

namespace {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string hhmm(int layer, int dt_minutes) {
  const int minute = layer * dt_minutes;
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%02d:%02d", (minute / 60) % 24, minute % 60);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot open '" + path + "' for writing");
  out << content;
  if (!out) fail("error while writing '" + path + "'");
}

}  // namespace

RunSummary make_run_summary(const Scenario& scenario, const TimeExpandedGraph& graph,
                            const Solution& solution, const SolveResult& result) {
  RunSummary summary;
  summary.status = solve_status_name(result.status);
  summary.backend = result.backend;
  summary.objective_kwh = result.objective;
  summary.gap = result.gap;
  summary.solve_wall_time_s = result.wall_time_s;

  const double dt_h = scenario.time_grid.step_hours();
  for (std::size_t a = 0; a < scenario.airports.size(); ++a) {
    double e = 0.0;
    for (double p : solution.airports[a].grid_kw) e += p * dt_h;
    summary.grid_energy_kwh_by_airport[scenario.airports[a].id] = e;
    summary.total_grid_energy_kwh += e;
  }

  std::vector<int> flown(scenario.flights.size(), 0);
  for (const auto& path : solution.paths)
    for (int e : path)
      if (graph.edges()[e].kind == EdgeKind::Flight) ++flown[graph.edges()[e].flight];
  for (std::size_t f = 0; f < scenario.flights.size(); ++f)
    summary.flights.push_back(
        FlightStats{scenario.flights[f].id, scenario.flights[f].demand_per_day, flown[f]});

  for (std::size_t k = 0; k < scenario.fleet.size(); ++k) {
    AircraftWindow w;
    w.aircraft_id = scenario.fleet[k].id;
    for (int e : solution.paths[k]) {
      const Edge& edge = graph.edges()[e];
      if (edge.kind != EdgeKind::Flight) continue;
      const int dep = graph.vertex(edge.tail).layer;
      if (!w.first_departure_layer) w.first_departure_layer = dep;
      w.last_arrival_layer = dep + edge.steps;
    }
    summary.aircraft_windows.push_back(std::move(w));
  }
  return summary;
}

void write_schedule_csv(std::ostream& out, const Scenario& scenario,
                        const TimeExpandedGraph& graph, const Solution& solution) {
  out << "aircraft,t,activity,airport_or_flight,P_c_kw,E_p_kwh\n";
  const int ops_steps = scenario.time_grid.ops_steps();
  for (std::size_t k = 0; k < scenario.fleet.size(); ++k) {
    // Steps covered by a preceding flight edge's virtual chain.
    std::vector<int> virtual_flight(ops_steps, -1);
    for (int s = 0; s < ops_steps; ++s) {
      const Edge& edge = graph.edges()[solution.paths[k][s]];
      if (edge.kind != EdgeKind::Flight) continue;
      for (int tau = 1; tau < edge.steps && s + tau < ops_steps; ++tau)
        virtual_flight[s + tau] = edge.flight;
    }
    for (int s = 0; s < ops_steps; ++s) {
      const Edge& edge = graph.edges()[solution.paths[k][s]];
      const int t = scenario.time_grid.ops_start_index + s;
      std::string activity, what;
      if (edge.kind == EdgeKind::Flight) {
        activity = "flight";
        what = scenario.flights[edge.flight].id;
      } else if (virtual_flight[s] >= 0) {
        activity = "virtual";
        what = scenario.flights[virtual_flight[s]].id;
      } else {
        activity = "ground";
        what = scenario.airports[graph.vertex(edge.tail).airport].id;
      }
      double pc = 0.0;
      for (std::size_t a = 0; a < scenario.airports.size(); ++a)
        pc += solution.charge_kw[k][a][s];
      out << scenario.fleet[k].id << ',' << t << ',' << activity << ',' << what << ','
          << fixed6(pc) << ',' << fixed6(solution.soc_kwh[k][s]) << '\n';
    }
  }
}

std::string summary_to_json(const RunSummary& s) {
  ordered_json doc;
  doc["status"] = s.status;
  doc["backend"] = s.backend;
  doc["objective_kwh"] = s.objective_kwh;
  doc["gap"] = s.gap;
  doc["solve_wall_time_s"] = s.solve_wall_time_s;
  doc["total_grid_energy_kwh"] = s.total_grid_energy_kwh;
  doc["grid_energy_kwh_by_airport"] = ordered_json::object();
  for (const auto& [id, e] : s.grid_energy_kwh_by_airport)
    doc["grid_energy_kwh_by_airport"][id] = e;
  doc["flights"] = ordered_json::array();
  for (const auto& f : s.flights)
    doc["flights"].push_back({{"flight", f.flight_id}, {"demanded", f.demanded}, {"flown", f.flown}});
  doc["aircraft_windows"] = ordered_json::array();
  for (const auto& w : s.aircraft_windows) {
    ordered_json j;
    j["aircraft"] = w.aircraft_id;
    j["first_departure_layer"] =
        w.first_departure_layer ? ordered_json(*w.first_departure_layer) : ordered_json(nullptr);
    j["last_arrival_layer"] =
        w.last_arrival_layer ? ordered_json(*w.last_arrival_layer) : ordered_json(nullptr);
    doc["aircraft_windows"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

std::string report_to_json(const ValidationReport& report) {
  ordered_json doc;
  doc["overall_pass"] = report.overall_pass;
  doc["tolerance"] = report.tolerance;
  doc["recomputed_objective_kwh"] = report.recomputed_objective_kwh;
  doc["families"] = ordered_json::array();
  doc["failures"] = ordered_json::array();
  for (const auto& row : report.rows) {
    if (row.summary) {
      doc["families"].push_back({{"family", row.family},
                                 {"pass", row.pass},
                                 {"checked", row.checked},
                                 {"worst_residual", row.residual},
                                 {"worst_location", row.location}});
    } else {
      doc["failures"].push_back(
          {{"family", row.family}, {"location", row.location}, {"residual", row.residual}});
    }
  }
  return doc.dump(2) + "\n";
}

std::string solution_to_json(const Scenario& scenario, const Solution& solution) {
  ordered_json doc;
  doc["objective_kwh"] = solution.objective_kwh;
  doc["aircraft"] = ordered_json::array();
  for (std::size_t k = 0; k < scenario.fleet.size(); ++k) {
    doc["aircraft"].push_back({{"id", scenario.fleet[k].id},
                               {"path_edges", solution.paths[k]},
                               {"charge_kw", solution.charge_kw[k]},
                               {"soc_kwh", solution.soc_kwh[k]}});
  }
  doc["airports"] = ordered_json::array();
  for (const auto& p : solution.airports) {
    doc["airports"].push_back({{"id", p.airport_id},
                               {"grid_kw", p.grid_kw},
                               {"renewable_kw", p.renewable_kw},
                               {"bess_kw", p.bess_kw},
                               {"apron_kw", p.apron_kw},
                               {"bess_kwh", p.bess_kwh}});
  }
  return doc.dump(2) + "\n";
}

Solution solution_from_json(const std::string& text, const Scenario& scenario,
                            const TimeExpandedGraph& graph) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(std::string("solution file: ") + e.what());
  }
  Solution sol;
  sol.objective_kwh = doc.value("objective_kwh", 0.0);
  const auto& aircraft = doc.at("aircraft");
  if (aircraft.size() != scenario.fleet.size())
    fail("solution dimension mismatch: " + std::to_string(aircraft.size()) + " aircraft, scenario has " +
         std::to_string(scenario.fleet.size()));
  for (std::size_t k = 0; k < scenario.fleet.size(); ++k) {
    const auto& j = aircraft[k];
    if (j.at("id").get<std::string>() != scenario.fleet[k].id)
      fail("solution aircraft order mismatch at index " + std::to_string(k));
    sol.paths.push_back(j.at("path_edges").get<std::vector<int>>());
    sol.charge_kw.push_back(j.at("charge_kw").get<std::vector<std::vector<double>>>());
    sol.soc_kwh.push_back(j.at("soc_kwh").get<std::vector<double>>());
    for (int e : sol.paths.back())
      if (e < 0 || e >= static_cast<int>(graph.edges().size()))
        fail("solution path references edge " + std::to_string(e) + " outside the graph");
  }
  const auto& airports = doc.at("airports");
  if (airports.size() != scenario.airports.size())
    fail("solution dimension mismatch: " + std::to_string(airports.size()) +
         " airports, scenario has " + std::to_string(scenario.airports.size()));
  for (std::size_t a = 0; a < scenario.airports.size(); ++a) {
    const auto& j = airports[a];
    AirportPowerProfile p;
    p.airport_id = j.at("id").get<std::string>();
    if (p.airport_id != scenario.airports[a].id)
      fail("solution airport order mismatch at index " + std::to_string(a));
    p.grid_kw = j.at("grid_kw").get<std::vector<double>>();
    p.renewable_kw = j.at("renewable_kw").get<std::vector<double>>();
    p.bess_kw = j.at("bess_kw").get<std::vector<double>>();
    p.apron_kw = j.at("apron_kw").get<std::vector<double>>();
    p.bess_kwh = j.at("bess_kwh").get<std::vector<double>>();
    sol.airports.push_back(std::move(p));
  }
  return sol;
}

Solution load_solution(const std::string& path, const Scenario& scenario,
                       const TimeExpandedGraph& graph) {
  std::ifstream in(path);
  if (!in) fail("cannot open solution file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return solution_from_json(buf.str(), scenario, graph);
}

namespace {

Scenario load_inputs(const RunOptions& options) {
  Scenario scenario = load_scenario(options.scenario_path);

  if (options.dt_minutes && *options.dt_minutes != scenario.time_grid.dt_minutes) {
    const int new_dt = *options.dt_minutes;
    const TimeGrid& old = scenario.time_grid;
    auto rescale = [&](int index, const char* what) {
      const int minute = index * old.dt_minutes;
      if (minute % new_dt != 0)
        fail(std::string("--dt ") + std::to_string(new_dt) + " does not align with " + what +
             " at minute " + std::to_string(minute));
      return minute / new_dt;
    };
    TimeGrid regridded;
    regridded.dt_minutes = new_dt;
    if (new_dt <= 0 || (24 * 60) % new_dt != 0) fail("--dt must divide 24*60");
    regridded.day_steps = (24 * 60) / new_dt;
    regridded.ops_start_index = rescale(old.ops_start_index, "ops_start_index");
    regridded.ops_end_index = rescale(old.ops_end_index, "ops_end_index");
    for (auto& m : scenario.fixed_schedule)
      m.departure_step = rescale(m.departure_step, ("fixed_schedule flight " + m.flight_id).c_str());
    if (!scenario.irradiance.by_airport.empty() && options.irradiance_path.empty())
      fail("--dt with embedded irradiance requires --irradiance to re-resample the series");
    scenario.time_grid = regridded;
  }

  if (!options.irradiance_path.empty()) {
    const RawIrradiance raw = load_irradiance_csv(options.irradiance_path);
    const IrradianceSeries resampled = resample_irradiance(raw, scenario.time_grid);
    for (const auto& [id, series] : resampled.by_airport) {
      if (scenario.airport_index(id) < 0)
        fail("irradiance file covers unknown airport '" + id + "'");
      scenario.irradiance.by_airport[id] = series;
    }
  }

  if (!options.fixed_schedule_path.empty()) {
    std::ifstream in(options.fixed_schedule_path);
    if (!in) fail("cannot open fixed schedule file '" + options.fixed_schedule_path + "'");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      fail("fixed schedule file: " + std::string(e.what()));
    }
    scenario.fixed_schedule.clear();
    for (const auto& j : doc) {
      FixedMovement m;
      m.flight_id = j.at("flight").get<std::string>();
      m.departure_step = j.at("departure_step").get<int>();
      if (j.contains("aircraft") && !j["aircraft"].is_null())
        m.aircraft_id = j["aircraft"].get<std::string>();
      scenario.fixed_schedule.push_back(std::move(m));
    }
  }

  scenario.validate();
  return scenario;
}

struct RunArtifacts {
  SolveResult result;
  Solution solution;
  ValidationReport report;
  RunSummary summary;
};

// solve + validate + export one model into `dir`; returns the exit code.
int run_and_export(const Scenario& scenario, const TimeExpandedGraph& graph, const ModelIR& model,
                   const VariableIndex& index, const RunOptions& options, const std::string& dir,
                   std::ostream& log, RunArtifacts* artifacts) {
  fs::create_directories(dir);
  if (options.export_lp) write_lp_file(dir + "/model.lp", model);

  SolveOptions sopts;
  sopts.time_limit_s = options.time_limit_s;
  sopts.gap_tol = options.gap_tol;
  sopts.threads = options.threads;
  sopts.seed = options.seed;
  auto solver = make_solver(options.backend);
  SolveResult result = solver->solve(model, sopts);
  if (!options.quiet)
    log << "solve: " << solve_status_name(result.status) << ", objective " << result.objective
        << " kWh, " << fixed6(result.wall_time_s) << " s\n";

  if (result.status == SolveStatus::Infeasible) {
    log << "model is infeasible\n";
    return kExitInfeasible;
  }
  const bool usable = result.status == SolveStatus::Optimal ||
                      (result.status == SolveStatus::TimeLimit && options.accept_gap &&
                       !result.col_values.empty());
  if (!usable) {
    log << "no usable solution (status " << solve_status_name(result.status) << ")"
        << (result.message.empty() ? "" : ": " + result.message) << "\n";
    return kExitNotOptimal;
  }

  Solution solution =
      extract_solution(scenario, graph, index, result.col_values, result.objective);
  ValidationReport report = validate_schedule(scenario, graph, solution);
  RunSummary summary = make_run_summary(scenario, graph, solution, result);

  {
    std::ostringstream csv;
    write_schedule_csv(csv, scenario, graph, solution);
    write_file(dir + "/schedule.csv", csv.str());
  }
  for (const auto& profile : solution.airports) {
    std::ostringstream csv;
    write_profile_csv(csv, profile);
    write_file(dir + "/airport_" + profile.airport_id + ".csv", csv.str());
  }
  write_file(dir + "/summary.json", summary_to_json(summary));
  write_file(dir + "/validation.json", report_to_json(report));
  write_file(dir + "/solution.json", solution_to_json(scenario, solution));

  if (!options.quiet) write_report_text(log, report);
  const bool pass = report.overall_pass;
  if (artifacts) *artifacts = RunArtifacts{std::move(result), std::move(solution),
                                           std::move(report), std::move(summary)};
  if (!pass) {
    log << "validation FAILED\n";
    return kExitValidationFailed;
  }
  return kExitOk;
}

}  // namespace

int cmd_solve(const RunOptions& options, std::ostream& log) {
  Scenario scenario = load_inputs(options);
  const TimeExpandedGraph graph = TimeExpandedGraph::build(scenario);
  BuildResult built = build_model(scenario, graph);
  if (!options.fixed_schedule_path.empty()) {
    built.model = fix_flights(built.model, built.index, scenario, graph, scenario.fixed_schedule);
    if (!options.quiet) log << "flights fixed to the provided timetable\n";
  }
  RunArtifacts artifacts;
  return run_and_export(scenario, graph, built.model, built.index, options, options.out_dir, log,
                        &artifacts);
}

int cmd_compare(const RunOptions& options, std::ostream& log) {
  Scenario scenario = load_inputs(options);
  if (scenario.fixed_schedule.empty())
    fail("compare needs a fixed schedule (scenario fixed_schedule or --fixed-schedule)");
  const TimeExpandedGraph graph = TimeExpandedGraph::build(scenario);
  const BuildResult built = build_model(scenario, graph);
  const ModelIR baseline_model =
      fix_flights(built.model, built.index, scenario, graph, scenario.fixed_schedule);

  log << "baseline (fixed timetable, charging optimized):\n";
  RunArtifacts baseline;
  int rc = run_and_export(scenario, graph, baseline_model, built.index, options,
                          options.out_dir + "/baseline", log, &baseline);
  if (rc != kExitOk) {
    log << "baseline run failed\n";
    return rc;
  }
  log << "optimized (free flight assignment):\n";
  RunArtifacts optimized;
  rc = run_and_export(scenario, graph, built.model, built.index, options,
                      options.out_dir + "/optimized", log, &optimized);
  if (rc != kExitOk) return rc;

  const double base = baseline.summary.total_grid_energy_kwh;
  const double opt = optimized.summary.total_grid_energy_kwh;
  if (opt > base + 1e-6 * (1.0 + base)) {
    log << "ERROR: optimized grid energy " << opt << " exceeds baseline " << base << "\n";
    return kExitValidationFailed;
  }

  ordered_json doc;
  doc["baseline_grid_energy_kwh"] = base;
  doc["optimized_grid_energy_kwh"] = opt;
  if (base > 1e-9) {
    doc["reduction_percent"] = 100.0 * (1.0 - opt / base);
  } else {
    doc["reduction_percent"] = nullptr;  // undefined when the baseline needs no grid energy
  }
  doc["baseline"] = nlohmann::ordered_json::parse(summary_to_json(baseline.summary));
  doc["optimized"] = nlohmann::ordered_json::parse(summary_to_json(optimized.summary));
  write_file(options.out_dir + "/compare.json", doc.dump(2) + "\n");

  if (base > 1e-9)
    log << "grid energy reduction: " << fixed6(100.0 * (1.0 - opt / base)) << " % (" << base
        << " -> " << opt << " kWh)\n";
  else
    log << "grid energy reduction: undefined (baseline already needs no grid energy)\n";
  return kExitOk;
}

int cmd_validate(const RunOptions& options, const std::string& solution_path, std::ostream& log) {
  Scenario scenario = load_inputs(options);
  const TimeExpandedGraph graph = TimeExpandedGraph::build(scenario);
  const Solution solution = load_solution(solution_path, scenario, graph);
  const ValidationReport report = validate_schedule(scenario, graph, solution);
  write_report_text(log, report);
  return report.overall_pass ? kExitOk : kExitValidationFailed;
}

}  // namespace aerogrid
