#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "aerogrid/error.hpp"
#include "aerogrid/graph.hpp"
#include "aerogrid/reporting.hpp"
#include "aerogrid/scenario_io.hpp"

namespace {

void add_common_flags(CLI::App* cmd, aerogrid::RunOptions& options) {
  cmd->add_option("--scenario", options.scenario_path, "Scenario JSON file")->required();
  cmd->add_option("--irradiance", options.irradiance_path,
                  "Irradiance CSV (timestamp,<airport_id>...); overrides values embedded in the scenario");
  cmd->add_option("--dt", options.dt_minutes, "Regrid to this time step in minutes");
  cmd->add_option("--backend", options.backend, "Solver backend name")->capture_default_str();
  cmd->add_option("--time-limit", options.time_limit_s, "Solver time limit in seconds")
      ->capture_default_str();
  cmd->add_option("--gap", options.gap_tol, "Relative MIP gap tolerance")->capture_default_str();
  cmd->add_option("--seed", options.seed, "Solver random seed")->capture_default_str();
  cmd->add_option("--threads", options.threads, "Solver threads")->capture_default_str();
  cmd->add_flag("--quiet", options.quiet, "Suppress per-run logging");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid-energy-minimal routing and charging of an electric aircraft fleet"};
  app.require_subcommand(1);

  aerogrid::RunOptions options;
  std::string solution_path;
  std::string graph_out;

  CLI::App* solve = app.add_subcommand("solve", "Optimize flight assignment and charging");
  add_common_flags(solve, options);
  solve->add_option("--out", options.out_dir, "Output directory for the run")->required();
  solve->add_option("--fixed-schedule", options.fixed_schedule_path,
                    "Fix flights to this timetable (JSON array) and optimize charging only");
  solve->add_flag("--export-lp", options.export_lp, "Also write model.lp");
  solve->add_flag("--accept-gap", options.accept_gap,
                  "Accept a time-limited incumbent instead of requiring optimality");

  CLI::App* compare = app.add_subcommand(
      "compare", "Solve the fixed-timetable baseline and the free model, report the reduction");
  add_common_flags(compare, options);
  compare->add_option("--out", options.out_dir, "Output directory for both runs")->required();
  compare->add_option("--fixed-schedule", options.fixed_schedule_path,
                      "Baseline timetable (JSON array); defaults to the scenario's fixed_schedule");
  compare->add_flag("--export-lp", options.export_lp, "Also write model.lp for both runs");
  compare->add_flag("--accept-gap", options.accept_gap,
                    "Accept time-limited incumbents instead of requiring optimality");

  CLI::App* validate = app.add_subcommand("validate", "Re-check an exported solution file");
  add_common_flags(validate, options);
  validate->add_option("--solution", solution_path, "solution.json produced by solve")->required();

  CLI::App* dump = app.add_subcommand("dump-graph", "Write the time-expanded edge list as CSV");
  add_common_flags(dump, options);
  dump->add_option("--out", graph_out, "Output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return aerogrid::cmd_solve(options, std::cout);
    if (compare->parsed()) return aerogrid::cmd_compare(options, std::cout);
    if (validate->parsed()) return aerogrid::cmd_validate(options, solution_path, std::cout);
    if (dump->parsed()) {
      aerogrid::Scenario scenario = aerogrid::load_scenario(options.scenario_path);
      const auto graph = aerogrid::TimeExpandedGraph::build(scenario);
      std::ofstream out(graph_out);
      if (!out) aerogrid::fail("cannot open '" + graph_out + "' for writing");
      graph.write_edge_csv(out, scenario);
      return aerogrid::kExitOk;
    }
  } catch (const aerogrid::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return aerogrid::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return aerogrid::kExitUsage;
  }
  return aerogrid::kExitUsage;
}
