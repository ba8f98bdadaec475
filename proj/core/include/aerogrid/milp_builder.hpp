#pragma once

#include <string>
#include <vector>

#include "aerogrid/airport_energy.hpp"
#include "aerogrid/graph.hpp"
#include "aerogrid/model_ir.hpp"
#include "aerogrid/scenario.hpp"

namespace aerogrid {

/// One solved schedule: per-aircraft paths, charging and stored energy, and
/// per-airport power profiles. Continuous quantities are taken from the
/// solver columns; paths come from the rounded binaries and the aircraft
/// energies are re-propagated from them.
struct Solution {
  std::vector<std::vector<int>> paths;                     // [k] -> edge ids, one per ops step
  std::vector<std::vector<std::vector<double>>> charge_kw; // [k][a][s], ops steps
  std::vector<std::vector<double>> soc_kwh;                // [k][l], ops layers
  std::vector<AirportPowerProfile> airports;               // [a]
  double objective_kwh = 0.0;
};

struct BuildResult {
  ModelIR model;
  VariableIndex index;
};

/// Assembles the grid-energy minimization MILP for a scenario over its
/// time-expanded graph: binary edge selections with flow continuity, demand
/// covering, virtual-edge forcing and departure caps; charging with big-M
/// gating; aircraft energy dynamics; and the airport-side power split, BESS
/// dynamics and solar bounds. Objective: total grid energy, kWh.
BuildResult build_model(const Scenario& scenario, const TimeExpandedGraph& graph);

/// Pins the flight binaries to a fixed timetable, leaving charging and
/// airport dispatch free. Movements without an aircraft id are assigned
/// greedily: first aircraft available at the origin, in fleet order.
/// Unused flight binaries are fixed to zero unless `allow_repositioning`.
ModelIR fix_flights(const ModelIR& model, const VariableIndex& index, const Scenario& scenario,
                    const TimeExpandedGraph& graph, const std::vector<FixedMovement>& fixed_schedule,
                    bool allow_repositioning = false);

/// Reconstructs a Solution from raw solver column values. Binaries are
/// rounded (integrality tolerance 1e-6) and each aircraft's selected edges
/// must form a single origin-to-destination path.
Solution extract_solution(const Scenario& scenario, const TimeExpandedGraph& graph,
                          const VariableIndex& index, const std::vector<double>& col_values,
                          double objective);

}  // namespace aerogrid
