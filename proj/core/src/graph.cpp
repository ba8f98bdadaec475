#include "aerogrid/graph.hpp"

#include <cmath>
#include <ostream>

#include "aerogrid/aircraft_energy.hpp"
#include "aerogrid/error.hpp"

namespace aerogrid {

int flight_steps(double block_time_minutes, int dt_minutes) {
  if (block_time_minutes <= 0 || dt_minutes <= 0)
    fail("flight_steps: block time and dt must be positive");
  // Nearest integer with exact halves rounding up; never less than one step.
  const int steps = static_cast<int>(std::floor(block_time_minutes / dt_minutes + 0.5));
  return std::max(1, steps);
}

int TimeExpandedGraph::vertex_id(int airport, int layer) const {
  return airport * ops_layers_ + (layer - ops_start_);
}

Vertex TimeExpandedGraph::vertex(int id) const {
  return Vertex{id / ops_layers_, ops_start_ + id % ops_layers_};
}

int TimeExpandedGraph::ground_edge_id(int airport, int layer) const {
  return airport * (ops_layers_ - 1) + (layer - ops_start_);
}

int TimeExpandedGraph::flight_edge_at(int flight, int layer) const {
  for (int e : flight_edges_by_flight_[flight])
    if (vertex(edges_[e].tail).layer == layer) return e;
  return -1;
}

const std::vector<int>& TimeExpandedGraph::virtual_edges(int edge_id) const {
  if (edge_id < 0 || edge_id >= static_cast<int>(edges_.size()))
    fail("virtual_edges: edge id " + std::to_string(edge_id) + " out of range");
  if (edges_[edge_id].kind != EdgeKind::Flight)
    fail("virtual_edges: edge " + std::to_string(edge_id) + " is not a flight edge");
  return virtual_map_[edge_id - num_ground_edges_];
}

TimeExpandedGraph TimeExpandedGraph::build(const Scenario& scenario) {
  scenario.validate();
  const TimeGrid& grid = scenario.time_grid;

  TimeExpandedGraph g;
  g.num_airports_ = static_cast<int>(scenario.airports.size());
  g.ops_layers_ = grid.ops_layers();
  g.ops_start_ = grid.ops_start_index;

  const int layers = g.ops_layers_;
  const int last_layer = grid.ops_end_index;

  // Ground edges first, ordered airport-major then time, so that
  // ground_edge_id stays a closed form.
  for (int a = 0; a < g.num_airports_; ++a) {
    for (int l = grid.ops_start_index; l < last_layer; ++l) {
      Edge e;
      e.tail = g.vertex_id(a, l);
      e.head = g.vertex_id(a, l + 1);
      e.kind = EdgeKind::Ground;
      g.edges_.push_back(e);
    }
  }
  g.num_ground_edges_ = static_cast<int>(g.edges_.size());

  // Flight edges in flight declaration order, then by departure layer.
  // Departures whose trailing virtual chain would cross the end of the
  // operations window are not generated.
  g.flight_edges_by_flight_.resize(scenario.flights.size());
  for (std::size_t f = 0; f < scenario.flights.size(); ++f) {
    const FlightConnection& fc = scenario.flights[f];
    const int tf = flight_steps(fc.block_time_minutes, grid.dt_minutes);
    if (grid.ops_steps() < tf)
      fail("operations window too short for flight '" + fc.id + "': needs " + std::to_string(tf) +
           " steps, window has " + std::to_string(grid.ops_steps()));
    const int origin = scenario.airport_index(fc.origin);
    const int destination = scenario.airport_index(fc.destination);
    const double energy =
        scenario.fleet.empty() ? 0.0 : flight_energy(scenario.fleet.front(), fc);
    for (int dep = grid.ops_start_index; dep + tf <= last_layer; ++dep) {
      Edge e;
      e.tail = g.vertex_id(origin, dep);
      e.head = g.vertex_id(destination, dep + 1);
      e.kind = EdgeKind::Flight;
      e.flight = static_cast<int>(f);
      e.energy_kwh = energy;
      e.steps = tf;
      const int id = static_cast<int>(g.edges_.size());
      g.edges_.push_back(e);
      g.flight_edges_by_flight_[f].push_back(id);

      std::vector<int> chain;
      chain.reserve(tf - 1);
      for (int tau = 1; tau < tf; ++tau)
        chain.push_back(g.ground_edge_id(destination, dep + tau));
      g.virtual_map_.push_back(std::move(chain));
    }
  }

  g.out_edges_.resize(g.num_vertices());
  g.in_edges_.resize(g.num_vertices());
  for (std::size_t e = 0; e < g.edges_.size(); ++e) {
    g.out_edges_[g.edges_[e].tail].push_back(static_cast<int>(e));
    g.in_edges_[g.edges_[e].head].push_back(static_cast<int>(e));
  }
  return g;
}

void TimeExpandedGraph::write_edge_csv(std::ostream& out, const Scenario& scenario) const {
  out << "tail_airport,tail_t,head_airport,head_t,kind,flight_id\n";
  for (const Edge& e : edges_) {
    const Vertex tail = vertex(e.tail);
    const Vertex head = vertex(e.head);
    out << scenario.airports[tail.airport].id << ',' << tail.layer << ','
        << scenario.airports[head.airport].id << ',' << head.layer << ','
        << (e.kind == EdgeKind::Ground ? "ground" : "flight") << ','
        << (e.flight >= 0 ? scenario.flights[e.flight].id : "") << '\n';
  }
}

}  // namespace aerogrid
