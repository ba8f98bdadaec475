#pragma once

#include <cstdint>
#include <vector>

#include "aerogrid/graph.hpp"
#include "aerogrid/scenario.hpp"
#include "aerogrid/solver.hpp"

namespace aerogrid {

/// Instance-size guard for the exhaustive oracle.
struct OracleGuard {
  int max_aircraft = 2;
  int max_ops_layers = 12;
  int max_flight_edges = 12;
};

struct OracleResult {
  SolveStatus status = SolveStatus::Infeasible;
  double objective_kwh = 0.0;
  std::vector<std::vector<int>> paths;  // certificate: per-aircraft edge ids
  std::int64_t combinations_tried = 0;
  std::int64_t combinations_feasible = 0;
};

/// Independent optimum for small instances: enumerates every combination of
/// feasible aircraft paths (continuity, virtual-edge forcing, demand and
/// departure caps checked combinatorially), solves the continuous
/// charging/airport subproblem of each as an LP, and returns the minimum.
/// Ties keep the lexicographically first combination. The LP is assembled
/// here, independently of the model builder; only the LP solve itself goes
/// through `lp_backend`.
OracleResult brute_force_optimum(const Scenario& scenario, const TimeExpandedGraph& graph,
                                 SolverBackend& lp_backend, const OracleGuard& guard = {});

}  // namespace aerogrid
