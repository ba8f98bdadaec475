#include "aerogrid/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "aerogrid/aircraft_energy.hpp"
#include "aerogrid/airport_energy.hpp"
#include "aerogrid/error.hpp"
#include "aerogrid/model_ir.hpp"

namespace aerogrid {

namespace {

// One enumerated aircraft path with everything the continuous subproblem
// needs: where the aircraft can charge and what each step costs.
struct PathInfo {
  std::vector<int> edges;           // one per operations step
  std::vector<int> parked_airport;  // -1 while flying or on a virtual edge
  std::vector<double> expended_kwh; // flight energy charged to the departure step
  std::vector<int> flight_counts;   // per flight connection
  std::vector<int> flight_edges;    // flight edge ids, for the departure cap
};

void enumerate_paths(const TimeExpandedGraph& graph, const Scenario& scenario, int k,
                     std::vector<PathInfo>& out) {
  const int ops_steps = graph.ops_layers() - 1;
  const int origin = scenario.airport_index(scenario.fleet[k].origin_airport);
  const int dest_vertex =
      graph.vertex_id(scenario.airport_index(scenario.fleet[k].destination_airport), graph.ops_end());
  const auto energy = flight_energy_matrix(scenario);

  PathInfo current;
  current.edges.assign(ops_steps, -1);
  current.parked_airport.assign(ops_steps, -1);
  current.expended_kwh.assign(ops_steps, 0.0);
  current.flight_counts.assign(scenario.flights.size(), 0);

  // DFS over free decisions; virtual chains after a flight edge are forced.
  auto dfs = [&](auto&& self, int vertex, int step) -> void {
    if (step == ops_steps) {
      if (vertex == dest_vertex) out.push_back(current);
      return;
    }
    for (int e : graph.out_edges(vertex)) {
      const Edge& edge = graph.edges()[e];
      if (edge.kind == EdgeKind::Ground) {
        current.edges[step] = e;
        current.parked_airport[step] = graph.vertex(edge.tail).airport;
        self(self, edge.head, step + 1);
        current.parked_airport[step] = -1;
      } else {
        const auto& chain = graph.virtual_edges(e);
        current.edges[step] = e;
        current.expended_kwh[step] = energy[k][edge.flight];
        ++current.flight_counts[edge.flight];
        current.flight_edges.push_back(e);
        for (std::size_t tau = 0; tau < chain.size(); ++tau)
          current.edges[step + 1 + tau] = chain[tau];
        int next = edge.head;
        for (int g : chain) next = graph.edges()[g].head;
        self(self, next, step + 1 + static_cast<int>(chain.size()));
        current.expended_kwh[step] = 0.0;
        --current.flight_counts[edge.flight];
        current.flight_edges.pop_back();
      }
      current.edges[step] = -1;
    }
  };
  dfs(dfs, graph.vertex_id(origin, graph.ops_start()), 0);
}

// The continuous charging/airport subproblem for one path combination,
// assembled from the scenario directly (no shared row code with the model
// builder). Charging variables exist only where an aircraft is parked.
double solve_continuous(const Scenario& scenario, const TimeExpandedGraph& graph,
                        const std::vector<const PathInfo*>& combo, SolverBackend& lp,
                        bool& feasible) {
  const TimeGrid& grid = scenario.time_grid;
  const double dt_h = grid.step_hours();
  const int n_aircraft = static_cast<int>(combo.size());
  const int n_airports = static_cast<int>(scenario.airports.size());
  const int ops_steps = grid.ops_steps();
  const int day_steps = grid.day_steps;

  ModelIR m;
  // pc[k][s] where parked; -1 elsewhere
  std::vector<std::vector<int>> pc(n_aircraft, std::vector<int>(ops_steps, -1));
  for (int k = 0; k < n_aircraft; ++k)
    for (int s = 0; s < ops_steps; ++s)
      if (combo[k]->parked_airport[s] >= 0)
        pc[k][s] = m.add_col(0.0, scenario.fleet[k].charge_power_max_kw, 0.0, false,
                             "pc_" + std::to_string(k) + "_" + std::to_string(s));

  std::vector<std::vector<int>> ep(n_aircraft, std::vector<int>(ops_steps + 1, -1));
  for (int k = 0; k < n_aircraft; ++k) {
    const AircraftSpec& p = scenario.fleet[k];
    for (int l = 0; l <= ops_steps; ++l) {
      double lo = 0.0, hi = p.battery_capacity_kwh;
      if (l == 0) lo = hi = p.initial_energy_kwh;
      if (l == ops_steps && p.min_final_energy_kwh) lo = std::max(lo, *p.min_final_energy_kwh);
      ep[k][l] = m.add_col(lo, hi, 0.0, false, "ep_" + std::to_string(k) + "_" + std::to_string(l));
    }
  }

  std::vector<std::vector<int>> pgr(n_airports), prnw(n_airports), pb(n_airports), eb(n_airports);
  for (int a = 0; a < n_airports; ++a) {
    const AirportSpec& ap = scenario.airports[a];
    const auto irradiance = scenario.irradiance_for(ap.id);
    pgr[a].resize(day_steps);
    prnw[a].resize(day_steps);
    pb[a].resize(day_steps);
    eb[a].resize(day_steps + 1);
    for (int t = 0; t < day_steps; ++t) {
      pgr[a][t] = m.add_col(0.0, kInf, dt_h, false, "gr_" + std::to_string(a) + "_" + std::to_string(t));
      prnw[a][t] = m.add_col(0.0, solar_cap_kw(irradiance[t], ap.solar_area_m2, ap.solar_efficiency),
                             0.0, false, "rw_" + std::to_string(a) + "_" + std::to_string(t));
      pb[a][t] = m.add_col(ap.bess_power_min_kw, ap.bess_power_max_kw, 0.0, false,
                           "pb_" + std::to_string(a) + "_" + std::to_string(t));
    }
    for (int l = 0; l <= day_steps; ++l)
      eb[a][l] = m.add_col(ap.bess_min_kwh, ap.bess_capacity_kwh, 0.0, false,
                           "eb_" + std::to_string(a) + "_" + std::to_string(l));
  }

  for (int k = 0; k < n_aircraft; ++k) {
    for (int s = 0; s < ops_steps; ++s) {
      Row row;
      row.cols = {ep[k][s + 1], ep[k][s]};
      row.coefs = {1.0, -1.0};
      if (pc[k][s] >= 0) {
        row.cols.push_back(pc[k][s]);
        row.coefs.push_back(-dt_h);
      }
      row.sense = RowSense::EQ;
      row.rhs = -combo[k]->expended_kwh[s];
      row.name = "soc_" + std::to_string(k) + "_" + std::to_string(s);
      m.add_row(std::move(row));
    }
  }

  for (int a = 0; a < n_airports; ++a) {
    const AirportSpec& ap = scenario.airports[a];
    for (int t = 0; t < day_steps; ++t) {
      const int s = t - grid.ops_start_index;
      Row split;
      split.cols = {pgr[a][t], prnw[a][t], pb[a][t]};
      split.coefs = {1.0, 1.0, 1.0};
      Row apron;
      if (s >= 0 && s < ops_steps) {
        for (int k = 0; k < n_aircraft; ++k) {
          if (pc[k][s] >= 0 && combo[k]->parked_airport[s] == a) {
            split.cols.push_back(pc[k][s]);
            split.coefs.push_back(-1.0);
            apron.cols.push_back(pc[k][s]);
            apron.coefs.push_back(1.0);
          }
        }
      }
      split.sense = RowSense::EQ;
      split.rhs = ap.aux_power_kw;
      split.name = "split_" + std::to_string(a) + "_" + std::to_string(t);
      m.add_row(std::move(split));
      if (!apron.cols.empty()) {
        apron.sense = RowSense::LE;
        apron.rhs = ap.apron_power_max_kw;
        apron.name = "apron_" + std::to_string(a) + "_" + std::to_string(t);
        m.add_row(std::move(apron));
      }

      Row charge;
      charge.cols = {eb[a][t + 1], eb[a][t], pb[a][t]};
      charge.coefs = {1.0, -1.0, ap.bess_efficiency * dt_h};
      charge.sense = RowSense::LE;
      charge.rhs = 0.0;
      charge.name = "bc_" + std::to_string(a) + "_" + std::to_string(t);
      m.add_row(std::move(charge));
      Row discharge;
      discharge.cols = {eb[a][t + 1], eb[a][t], pb[a][t]};
      discharge.coefs = {1.0, -1.0, dt_h / ap.bess_efficiency};
      discharge.sense = RowSense::LE;
      discharge.rhs = 0.0;
      discharge.name = "bd_" + std::to_string(a) + "_" + std::to_string(t);
      m.add_row(std::move(discharge));
    }
    Row periodic;
    periodic.cols = {eb[a][0], eb[a][day_steps]};
    periodic.coefs = {1.0, -1.0};
    periodic.sense = RowSense::EQ;
    periodic.rhs = 0.0;
    periodic.name = "per_" + std::to_string(a);
    m.add_row(std::move(periodic));
    Row floor;
    floor.cols = {eb[a][grid.ops_start_index]};
    floor.coefs = {1.0};
    floor.sense = RowSense::GE;
    floor.rhs = ap.bess_init_soc_frac * ap.bess_capacity_kwh;
    floor.name = "floor_" + std::to_string(a);
    m.add_row(std::move(floor));
  }

  SolveOptions opts;
  opts.time_limit_s = 60.0;
  opts.relax_integrality = true;
  SolveResult res = lp.solve(m, opts);
  feasible = res.status == SolveStatus::Optimal;
  return feasible ? res.objective : kInf;
}

}  // namespace

OracleResult brute_force_optimum(const Scenario& scenario, const TimeExpandedGraph& graph,
                                 SolverBackend& lp_backend, const OracleGuard& guard) {
  const int n_aircraft = static_cast<int>(scenario.fleet.size());
  if (n_aircraft > guard.max_aircraft)
    fail("oracle guard: " + std::to_string(n_aircraft) + " aircraft exceeds the limit of " +
         std::to_string(guard.max_aircraft));
  if (graph.ops_layers() > guard.max_ops_layers)
    fail("oracle guard: " + std::to_string(graph.ops_layers()) + " layers exceeds the limit of " +
         std::to_string(guard.max_ops_layers));
  if (graph.num_flight_edges() > guard.max_flight_edges)
    fail("oracle guard: " + std::to_string(graph.num_flight_edges()) +
         " flight edges exceeds the limit of " + std::to_string(guard.max_flight_edges));

  std::vector<std::vector<PathInfo>> paths(n_aircraft);
  for (int k = 0; k < n_aircraft; ++k) enumerate_paths(graph, scenario, k, paths[k]);

  OracleResult result;
  for (int k = 0; k < n_aircraft; ++k) {
    if (paths[k].empty()) return result;  // no continuous path exists at all
  }

  std::vector<std::size_t> pick(n_aircraft, 0);
  std::vector<const PathInfo*> combo(n_aircraft);
  std::vector<int> flown(scenario.flights.size());
  const int n_flight_edges = graph.num_flight_edges();
  std::vector<int> edge_use(n_flight_edges);

  bool done = false;
  while (!done) {
    ++result.combinations_tried;
    for (int k = 0; k < n_aircraft; ++k) combo[k] = &paths[k][pick[k]];

    std::fill(flown.begin(), flown.end(), 0);
    std::fill(edge_use.begin(), edge_use.end(), 0);
    bool ok = true;
    for (int k = 0; k < n_aircraft; ++k) {
      for (std::size_t f = 0; f < flown.size(); ++f) flown[f] += combo[k]->flight_counts[f];
      for (int e : combo[k]->flight_edges) {
        if (++edge_use[e - graph.num_ground_edges()] > scenario.k_max) ok = false;
      }
    }
    for (std::size_t f = 0; ok && f < flown.size(); ++f)
      if (flown[f] < scenario.flights[f].demand_per_day) ok = false;

    if (ok) {
      bool feasible = false;
      const double obj = solve_continuous(scenario, graph, combo, lp_backend, feasible);
      if (feasible) {
        ++result.combinations_feasible;
        if (result.status != SolveStatus::Optimal || obj < result.objective_kwh) {
          result.status = SolveStatus::Optimal;
          result.objective_kwh = obj;
          result.paths.clear();
          for (int k = 0; k < n_aircraft; ++k) result.paths.push_back(combo[k]->edges);
        }
      }
    }

    // lexicographic odometer over per-aircraft path lists
    done = true;
    for (int k = n_aircraft - 1; k >= 0; --k) {
      if (++pick[k] < paths[k].size()) {
        done = false;
        break;
      }
      pick[k] = 0;
    }
    if (n_aircraft == 0) break;  // single empty combination
  }
  return result;
}

}  // namespace aerogrid
