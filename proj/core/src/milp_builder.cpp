#include "aerogrid/milp_builder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "aerogrid/aircraft_energy.hpp"
#include "aerogrid/error.hpp"

namespace aerogrid {

namespace {

std::string sanitize(const std::string& id) {
  std::string out = id;
  for (char& c : out)
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  return out;
}

std::string edge_label(const Scenario& scenario, const TimeExpandedGraph& graph, int e) {
  const Edge& edge = graph.edges()[e];
  const Vertex tail = graph.vertex(edge.tail);
  if (edge.kind == EdgeKind::Ground)
    return "g_" + sanitize(scenario.airports[tail.airport].id) + "_" + std::to_string(tail.layer);
  return "f_" + sanitize(scenario.flights[edge.flight].id) + "_" + std::to_string(tail.layer);
}

}  // namespace

BuildResult build_model(const Scenario& scenario, const TimeExpandedGraph& graph) {
  const TimeGrid& grid = scenario.time_grid;
  const double dt_h = grid.step_hours();

  VariableIndex ix;
  ix.n_aircraft = static_cast<int>(scenario.fleet.size());
  ix.n_airports = static_cast<int>(scenario.airports.size());
  ix.n_edges = static_cast<int>(graph.edges().size());
  ix.ops_steps = grid.ops_steps();
  ix.ops_layers = grid.ops_layers();
  ix.ops_start = grid.ops_start_index;
  ix.day_steps = grid.day_steps;

  if (ix.n_airports != graph.num_airports() || ix.ops_layers != graph.ops_layers())
    fail("build_model: scenario and graph disagree on dimensions");
  for (const auto& f : scenario.flights)
    if (f.demand_per_day > 0 && ix.n_aircraft == 0)
      fail("build_model: demand on flight '" + f.id + "' cannot be met with an empty fleet");

  const auto energy = flight_energy_matrix(scenario);

  ModelIR m;
  std::vector<std::string> airport_names(ix.n_airports);
  for (int a = 0; a < ix.n_airports; ++a) airport_names[a] = sanitize(scenario.airports[a].id);

  // Columns, one contiguous block per family.
  ix.x0 = m.num_cols();
  for (int k = 0; k < ix.n_aircraft; ++k) {
    const std::string kid = sanitize(scenario.fleet[k].id);
    for (int e = 0; e < ix.n_edges; ++e)
      m.add_col(0.0, 1.0, 0.0, true, "x_" + kid + "_" + edge_label(scenario, graph, e));
  }
  ix.pc0 = m.num_cols();
  for (int k = 0; k < ix.n_aircraft; ++k) {
    const std::string kid = sanitize(scenario.fleet[k].id);
    const double pmax = scenario.fleet[k].charge_power_max_kw;
    for (int s = 0; s < ix.ops_steps; ++s)
      for (int a = 0; a < ix.n_airports; ++a)
        m.add_col(0.0, pmax, 0.0, false,
                  "Pc_" + kid + "_" + airport_names[a] + "_" + std::to_string(ix.ops_start + s));
  }
  ix.ep0 = m.num_cols();
  for (int k = 0; k < ix.n_aircraft; ++k) {
    const AircraftSpec& p = scenario.fleet[k];
    const std::string kid = sanitize(p.id);
    for (int l = 0; l < ix.ops_layers; ++l) {
      double lower = 0.0;
      if (l == ix.ops_layers - 1 && p.min_final_energy_kwh) lower = *p.min_final_energy_kwh;
      m.add_col(lower, p.battery_capacity_kwh, 0.0, false,
                "Ep_" + kid + "_" + std::to_string(ix.ops_start + l));
    }
  }
  // Grid draw is non-negative by column bound (the airport is a consumer only).
  ix.pgr0 = m.num_cols();
  for (int s = 0; s < ix.day_steps; ++s)
    for (int a = 0; a < ix.n_airports; ++a)
      m.add_col(0.0, kInf, dt_h, false, "Pgr_" + airport_names[a] + "_" + std::to_string(s));
  ix.prnw0 = m.num_cols();
  for (int s = 0; s < ix.day_steps; ++s)
    for (int a = 0; a < ix.n_airports; ++a)
      m.add_col(0.0, kInf, 0.0, false, "Prnw_" + airport_names[a] + "_" + std::to_string(s));
  ix.pb0 = m.num_cols();
  for (int s = 0; s < ix.day_steps; ++s)
    for (int a = 0; a < ix.n_airports; ++a)
      m.add_col(scenario.airports[a].bess_power_min_kw, scenario.airports[a].bess_power_max_kw, 0.0,
                false, "Pb_" + airport_names[a] + "_" + std::to_string(s));
  ix.eb0 = m.num_cols();
  for (int l = 0; l <= ix.day_steps; ++l)
    for (int a = 0; a < ix.n_airports; ++a)
      m.add_col(scenario.airports[a].bess_min_kwh, scenario.airports[a].bess_capacity_kwh, 0.0,
                false, "Eb_" + airport_names[a] + "_" + std::to_string(l));
  ix.num_cols = m.num_cols();

  // Flow continuity with origin/destination indicators on the right-hand side.
  for (int k = 0; k < ix.n_aircraft; ++k) {
    const AircraftSpec& p = scenario.fleet[k];
    const int origin_v = graph.vertex_id(scenario.airport_index(p.origin_airport), graph.ops_start());
    const int dest_v =
        graph.vertex_id(scenario.airport_index(p.destination_airport), graph.ops_end());
    const std::string kid = sanitize(p.id);
    for (int v = 0; v < graph.num_vertices(); ++v) {
      Row row;
      for (int e : graph.in_edges(v)) {
        row.cols.push_back(ix.x(k, e));
        row.coefs.push_back(1.0);
      }
      for (int e : graph.out_edges(v)) {
        row.cols.push_back(ix.x(k, e));
        row.coefs.push_back(-1.0);
      }
      row.sense = RowSense::EQ;
      row.rhs = (v == dest_v ? 1.0 : 0.0) - (v == origin_v ? 1.0 : 0.0);
      row.tag = RowTag::FlowContinuity;
      const Vertex vx = graph.vertex(v);
      row.name = "cont_" + kid + "_" + airport_names[vx.airport] + "_" + std::to_string(vx.layer);
      m.add_row(std::move(row));
    }
  }

  // Demand covering per flight.
  for (std::size_t f = 0; f < scenario.flights.size(); ++f) {
    if (ix.n_aircraft == 0) break;
    Row row;
    for (int e : graph.flight_edges_by_flight()[f])
      for (int k = 0; k < ix.n_aircraft; ++k) {
        row.cols.push_back(ix.x(k, e));
        row.coefs.push_back(1.0);
      }
    row.sense = RowSense::GE;
    row.rhs = scenario.flights[f].demand_per_day;
    row.tag = RowTag::Demand;
    row.name = "dem_" + sanitize(scenario.flights[f].id);
    m.add_row(std::move(row));
  }

  // Virtual-edge forcing and departure caps per flight edge.
  for (std::size_t f = 0; f < scenario.flights.size(); ++f) {
    for (int e : graph.flight_edges_by_flight()[f]) {
      const int dep = graph.vertex(graph.edges()[e].tail).layer;
      const std::string base = sanitize(scenario.flights[f].id) + "_" + std::to_string(dep);
      for (int k = 0; k < ix.n_aircraft; ++k) {
        const std::string kid = sanitize(scenario.fleet[k].id);
        int tau = 1;
        for (int g : graph.virtual_edges(e)) {
          Row row;
          row.cols = {ix.x(k, g), ix.x(k, e)};
          row.coefs = {1.0, -1.0};
          row.sense = RowSense::GE;
          row.rhs = 0.0;
          row.tag = RowTag::VirtualForce;
          row.name = "virt_" + kid + "_" + base + "_" + std::to_string(tau++);
          m.add_row(std::move(row));
        }
      }
      if (ix.n_aircraft > 0) {
        Row row;
        for (int k = 0; k < ix.n_aircraft; ++k) {
          row.cols.push_back(ix.x(k, e));
          row.coefs.push_back(1.0);
        }
        row.sense = RowSense::LE;
        row.rhs = scenario.k_max;
        row.tag = RowTag::StartCap;
        row.name = "kmax_" + base;
        m.add_row(std::move(row));
      }
    }
  }

  // Charging: big-M gate on ground edges (M = P_c,max, the tightest valid
  // value) and the no-charge rule on virtual flight edges.
  for (int k = 0; k < ix.n_aircraft; ++k) {
    const double big_m = scenario.fleet[k].charge_power_max_kw;
    if (big_m <= 0.0) continue;  // columns are already fixed to zero
    const std::string kid = sanitize(scenario.fleet[k].id);
    for (int a = 0; a < ix.n_airports; ++a) {
      for (int s = 0; s < ix.ops_steps; ++s) {
        const int layer = ix.ops_start + s;
        Row row;
        row.cols = {ix.pc(k, a, s), ix.x(k, graph.ground_edge_id(a, layer))};
        row.coefs = {1.0, -big_m};
        row.sense = RowSense::LE;
        row.rhs = 0.0;
        row.tag = RowTag::ChargeGate;
        row.name = "gate_" + kid + "_" + airport_names[a] + "_" + std::to_string(layer);
        m.add_row(std::move(row));
      }
    }
    for (std::size_t f = 0; f < scenario.flights.size(); ++f) {
      const int dest = scenario.airport_index(scenario.flights[f].destination);
      for (int e : graph.flight_edges_by_flight()[f]) {
        const int dep = graph.vertex(graph.edges()[e].tail).layer;
        int tau = 1;
        for (int g : graph.virtual_edges(e)) {
          const int layer = graph.vertex(graph.edges()[g].tail).layer;
          Row row;
          row.cols = {ix.pc(k, dest, layer - ix.ops_start), ix.x(k, e)};
          row.coefs = {1.0, big_m};
          row.sense = RowSense::LE;
          row.rhs = big_m;
          row.tag = RowTag::ChargeVirtual;
          row.name = "novirt_" + kid + "_" + sanitize(scenario.flights[f].id) + "_" +
                     std::to_string(dep) + "_" + std::to_string(tau++);
          m.add_row(std::move(row));
        }
      }
    }
  }

  // Aircraft energy dynamics: E_p(t+1) - E_p(t) - dt * sum_a P_c + sum of
  // expenditures of flights departing at t equals zero.
  for (int k = 0; k < ix.n_aircraft; ++k) {
    const std::string kid = sanitize(scenario.fleet[k].id);
    for (int s = 0; s < ix.ops_steps; ++s) {
      const int layer = ix.ops_start + s;
      Row row;
      row.cols = {ix.ep(k, s + 1), ix.ep(k, s)};
      row.coefs = {1.0, -1.0};
      for (int a = 0; a < ix.n_airports; ++a) {
        row.cols.push_back(ix.pc(k, a, s));
        row.coefs.push_back(-dt_h);
      }
      for (std::size_t f = 0; f < scenario.flights.size(); ++f) {
        const int e = graph.flight_edge_at(static_cast<int>(f), layer);
        if (e < 0) continue;
        row.cols.push_back(ix.x(k, e));
        row.coefs.push_back(energy[k][f]);
      }
      row.sense = RowSense::EQ;
      row.rhs = 0.0;
      row.tag = RowTag::SocDynamics;
      row.name = "soc_" + kid + "_" + std::to_string(layer);
      m.add_row(std::move(row));
    }
    Row init;
    init.cols = {ix.ep(k, 0)};
    init.coefs = {1.0};
    init.sense = RowSense::EQ;
    init.rhs = scenario.fleet[k].initial_energy_kwh;
    init.tag = RowTag::SocInit;
    init.name = "socinit_" + kid;
    m.add_row(std::move(init));
  }

  // Apron limit over the operations window.
  if (ix.n_aircraft > 0) {
    for (int a = 0; a < ix.n_airports; ++a) {
      for (int s = 0; s < ix.ops_steps; ++s) {
        Row row;
        for (int k = 0; k < ix.n_aircraft; ++k) {
          row.cols.push_back(ix.pc(k, a, s));
          row.coefs.push_back(1.0);
        }
        row.sense = RowSense::LE;
        row.rhs = scenario.airports[a].apron_power_max_kw;
        row.tag = RowTag::ApronLimit;
        row.name = "apron_" + airport_names[a] + "_" + std::to_string(ix.ops_start + s);
        m.add_row(std::move(row));
      }
    }
  }

  // Power split over the whole day; outside the operations window the apron
  // term is absent (no charging columns exist there).
  for (int a = 0; a < ix.n_airports; ++a) {
    for (int s = 0; s < ix.day_steps; ++s) {
      Row row;
      row.cols = {ix.pgr(a, s), ix.prnw(a, s), ix.pb(a, s)};
      row.coefs = {1.0, 1.0, 1.0};
      if (s >= ix.ops_start && s < ix.ops_start + ix.ops_steps) {
        for (int k = 0; k < ix.n_aircraft; ++k) {
          row.cols.push_back(ix.pc(k, a, s - ix.ops_start));
          row.coefs.push_back(-1.0);
        }
      }
      row.sense = RowSense::EQ;
      row.rhs = scenario.airports[a].aux_power_kw;
      row.tag = RowTag::PowerSplit;
      row.name = "split_" + airport_names[a] + "_" + std::to_string(s);
      m.add_row(std::move(row));
    }
  }

  // BESS dynamics pair, periodicity, operations-start floor, solar cap.
  for (int a = 0; a < ix.n_airports; ++a) {
    const AirportSpec& ap = scenario.airports[a];
    const auto irradiance = scenario.irradiance_for(ap.id);
    for (int s = 0; s < ix.day_steps; ++s) {
      Row charge;
      charge.cols = {ix.eb(a, s + 1), ix.eb(a, s), ix.pb(a, s)};
      charge.coefs = {1.0, -1.0, ap.bess_efficiency * dt_h};
      charge.sense = RowSense::LE;
      charge.rhs = 0.0;
      charge.tag = RowTag::BessDynCharge;
      charge.name = "bessc_" + airport_names[a] + "_" + std::to_string(s);
      m.add_row(std::move(charge));

      Row discharge;
      discharge.cols = {ix.eb(a, s + 1), ix.eb(a, s), ix.pb(a, s)};
      discharge.coefs = {1.0, -1.0, dt_h / ap.bess_efficiency};
      discharge.sense = RowSense::LE;
      discharge.rhs = 0.0;
      discharge.tag = RowTag::BessDynDischarge;
      discharge.name = "bessd_" + airport_names[a] + "_" + std::to_string(s);
      m.add_row(std::move(discharge));

      Row solar;
      solar.cols = {ix.prnw(a, s)};
      solar.coefs = {1.0};
      solar.sense = RowSense::LE;
      solar.rhs = solar_cap_kw(irradiance[s], ap.solar_area_m2, ap.solar_efficiency);
      solar.tag = RowTag::SolarCap;
      solar.name = "solar_" + airport_names[a] + "_" + std::to_string(s);
      m.add_row(std::move(solar));
    }
    Row periodic;
    periodic.cols = {ix.eb(a, 0), ix.eb(a, ix.day_steps)};
    periodic.coefs = {1.0, -1.0};
    periodic.sense = RowSense::EQ;
    periodic.rhs = 0.0;
    periodic.tag = RowTag::BessPeriodic;
    periodic.name = "bper_" + airport_names[a];
    m.add_row(std::move(periodic));

    Row floor;
    floor.cols = {ix.eb(a, ix.ops_start)};
    floor.coefs = {1.0};
    floor.sense = RowSense::GE;
    floor.rhs = ap.bess_init_soc_frac * ap.bess_capacity_kwh;
    floor.tag = RowTag::BessFloor;
    floor.name = "bfloor_" + airport_names[a];
    m.add_row(std::move(floor));
  }

  return BuildResult{std::move(m), ix};
}

ModelIR fix_flights(const ModelIR& model, const VariableIndex& index, const Scenario& scenario,
                    const TimeExpandedGraph& graph, const std::vector<FixedMovement>& fixed_schedule,
                    bool allow_repositioning) {
  if (fixed_schedule.empty()) return model;
  ModelIR fixed = model;

  struct State {
    int location;
    int available_from;
  };
  std::vector<State> state(scenario.fleet.size());
  for (std::size_t k = 0; k < scenario.fleet.size(); ++k)
    state[k] = {scenario.airport_index(scenario.fleet[k].origin_airport), graph.ops_start()};

  // Aircraft in id order for the greedy pick.
  std::vector<int> by_id(scenario.fleet.size());
  std::iota(by_id.begin(), by_id.end(), 0);
  std::sort(by_id.begin(), by_id.end(),
            [&](int a, int b) { return scenario.fleet[a].id < scenario.fleet[b].id; });

  // Movements in departure order; ties keep input order.
  std::vector<int> order(fixed_schedule.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return fixed_schedule[a].departure_step < fixed_schedule[b].departure_step;
  });

  std::vector<char> pinned(static_cast<std::size_t>(index.n_aircraft) * index.n_edges, 0);
  for (int mi : order) {
    const FixedMovement& mv = fixed_schedule[mi];
    const int f = scenario.flight_index(mv.flight_id);
    if (f < 0) fail("fix_flights: unknown flight '" + mv.flight_id + "'");
    const int e = graph.flight_edge_at(f, mv.departure_step);
    if (e < 0)
      fail("fix_flights: flight '" + mv.flight_id + "' at step " +
           std::to_string(mv.departure_step) +
           " has no corresponding flight edge (departure too late for the operations window)");
    const int origin = scenario.airport_index(scenario.flights[f].origin);

    int chosen = -1;
    if (mv.aircraft_id) {
      chosen = scenario.aircraft_index(*mv.aircraft_id);
      if (chosen < 0) fail("fix_flights: unknown aircraft '" + *mv.aircraft_id + "'");
      if (state[chosen].location != origin || state[chosen].available_from > mv.departure_step)
        fail("fix_flights: aircraft '" + *mv.aircraft_id + "' is not available at '" +
             scenario.flights[f].origin + "' for flight '" + mv.flight_id + "' at step " +
             std::to_string(mv.departure_step));
    } else {
      for (int k : by_id) {
        if (state[k].location == origin && state[k].available_from <= mv.departure_step) {
          chosen = k;
          break;
        }
      }
      if (chosen < 0)
        fail("fix_flights: no aircraft available at '" + scenario.flights[f].origin +
             "' for flight '" + mv.flight_id + "' at step " + std::to_string(mv.departure_step));
    }

    const int col = index.x(chosen, e);
    fixed.col_lower[col] = 1.0;
    fixed.col_upper[col] = 1.0;
    pinned[static_cast<std::size_t>(chosen) * index.n_edges + e] = 1;
    state[chosen].location = scenario.airport_index(scenario.flights[f].destination);
    state[chosen].available_from = mv.departure_step + graph.edges()[e].steps;
  }

  if (!allow_repositioning) {
    for (int k = 0; k < index.n_aircraft; ++k) {
      for (int e = graph.num_ground_edges(); e < index.n_edges; ++e) {
        if (pinned[static_cast<std::size_t>(k) * index.n_edges + e]) continue;
        const int col = index.x(k, e);
        fixed.col_lower[col] = 0.0;
        fixed.col_upper[col] = 0.0;
      }
    }
  }
  return fixed;
}

Solution extract_solution(const Scenario& scenario, const TimeExpandedGraph& graph,
                          const VariableIndex& index, const std::vector<double>& col_values,
                          double objective) {
  if (static_cast<int>(col_values.size()) != index.num_cols)
    fail("extract_solution: column vector has " + std::to_string(col_values.size()) +
         " entries, model has " + std::to_string(index.num_cols));
  constexpr double int_tol = 1e-6;

  const auto energy = flight_energy_matrix(scenario);
  Solution sol;
  sol.objective_kwh = objective;
  sol.paths.resize(index.n_aircraft);
  sol.charge_kw.resize(index.n_aircraft);
  sol.soc_kwh.resize(index.n_aircraft);

  for (int k = 0; k < index.n_aircraft; ++k) {
    int selected_total = 0;
    for (int e = 0; e < index.n_edges; ++e) {
      const double v = col_values[index.x(k, e)];
      if (std::abs(v - std::round(v)) > int_tol)
        fail("extract_solution: fractional binary " + std::to_string(v) + " for aircraft '" +
             scenario.fleet[k].id + "' edge " + std::to_string(e));
      selected_total += static_cast<int>(std::round(v));
    }

    int v = graph.vertex_id(scenario.airport_index(scenario.fleet[k].origin_airport),
                            graph.ops_start());
    const int dest = graph.vertex_id(scenario.airport_index(scenario.fleet[k].destination_airport),
                                     graph.ops_end());
    auto& path = sol.paths[k];
    for (int l = graph.ops_start(); l < graph.ops_end(); ++l) {
      int next = -1;
      int count = 0;
      for (int e : graph.out_edges(v)) {
        if (std::round(col_values[index.x(k, e)]) == 1.0) {
          ++count;
          next = e;
        }
      }
      if (count != 1)
        fail("extract_solution: aircraft '" + scenario.fleet[k].id + "' has " +
             std::to_string(count) + " selected edges leaving layer " + std::to_string(l) +
             "; selected edges do not form a single path");
      path.push_back(next);
      v = graph.edges()[next].head;
    }
    if (v != dest)
      fail("extract_solution: aircraft '" + scenario.fleet[k].id +
           "' does not end at its destination vertex");
    if (selected_total != static_cast<int>(path.size()))
      fail("extract_solution: aircraft '" + scenario.fleet[k].id + "' selects " +
           std::to_string(selected_total) + " edges, path needs " + std::to_string(path.size()));

    sol.charge_kw[k].assign(index.n_airports, std::vector<double>(index.ops_steps, 0.0));
    for (int a = 0; a < index.n_airports; ++a)
      for (int s = 0; s < index.ops_steps; ++s)
        sol.charge_kw[k][a][s] = col_values[index.pc(k, a, s)];

    // Re-propagate stored energy from the rounded path.
    std::vector<double> deltas(index.ops_steps, 0.0);
    for (int s = 0; s < index.ops_steps; ++s) {
      double charging = 0.0;
      for (int a = 0; a < index.n_airports; ++a) charging += sol.charge_kw[k][a][s];
      const Edge& edge = graph.edges()[path[s]];
      const double expended = edge.kind == EdgeKind::Flight ? energy[k][edge.flight] : 0.0;
      deltas[s] = soc_delta(charging, expended, scenario.time_grid.dt_minutes);
    }
    sol.soc_kwh[k] = propagate_soc(scenario.fleet[k].initial_energy_kwh, deltas,
                                   scenario.fleet[k].battery_capacity_kwh)
                         .energy_kwh;
  }

  sol.airports.resize(index.n_airports);
  for (int a = 0; a < index.n_airports; ++a) {
    AirportPowerProfile& p = sol.airports[a];
    p.airport_id = scenario.airports[a].id;
    p.grid_kw.resize(index.day_steps);
    p.renewable_kw.resize(index.day_steps);
    p.bess_kw.resize(index.day_steps);
    p.apron_kw.assign(index.day_steps, 0.0);
    p.bess_kwh.resize(index.day_steps + 1);
    for (int s = 0; s < index.day_steps; ++s) {
      p.grid_kw[s] = col_values[index.pgr(a, s)];
      p.renewable_kw[s] = col_values[index.prnw(a, s)];
      p.bess_kw[s] = col_values[index.pb(a, s)];
      if (s >= index.ops_start && s < index.ops_start + index.ops_steps)
        for (int k = 0; k < index.n_aircraft; ++k)
          p.apron_kw[s] += sol.charge_kw[k][a][s - index.ops_start];
    }
    for (int l = 0; l <= index.day_steps; ++l) p.bess_kwh[l] = col_values[index.eb(a, l)];
  }
  return sol;
}

}  // namespace aerogrid
