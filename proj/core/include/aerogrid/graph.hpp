#pragma once

#include <string>
#include <vector>

#include "aerogrid/scenario.hpp"

namespace aerogrid {

enum class EdgeKind { Ground, Flight };

/// Space-time vertex (airport, day layer). Layers run over the operations
/// window [ops_start_index, ops_end_index].
struct Vertex {
  int airport = -1;
  int layer = -1;
};

struct Edge {
  int tail = -1;  // packed vertex ids
  int head = -1;
  EdgeKind kind = EdgeKind::Ground;
  int flight = -1;          // index into Scenario::flights, -1 for ground
  double energy_kwh = 0.0;  // expenditure on a flight edge, 0 on ground
  int steps = 1;            // flight duration in steps (t^f), 1 for ground
};

/// Flight duration in steps: nearest integer to block_time/dt, halves round
/// up, clamped to at least 1.
int flight_steps(double block_time_minutes, int dt_minutes);

/// Time-expanded DAG over the operations window: one vertex per
/// (airport, layer), ground edges between consecutive layers at the same
/// airport, and flight edges for every departure whose trailing virtual-edge
/// chain still fits inside the window.
///
/// Immutable after construction; identical scenarios produce identical packed
/// ids and edge orderings.
class TimeExpandedGraph {
public:
  static TimeExpandedGraph build(const Scenario& scenario);

  int num_airports() const { return num_airports_; }
  int ops_layers() const { return ops_layers_; }
  int ops_start() const { return ops_start_; }
  int ops_end() const { return ops_start_ + ops_layers_ - 1; }
  int num_vertices() const { return num_airports_ * ops_layers_; }

  int vertex_id(int airport, int layer) const;
  Vertex vertex(int id) const;

  const std::vector<Edge>& edges() const { return edges_; }
  int num_ground_edges() const { return num_ground_edges_; }
  int num_flight_edges() const { return static_cast<int>(edges_.size()) - num_ground_edges_; }

  /// Ground edge leaving (airport, layer); layer in [ops_start, ops_end).
  int ground_edge_id(int airport, int layer) const;

  /// Flight edge of `flight` departing at `layer`, or -1 if not generated.
  int flight_edge_at(int flight, int layer) const;

  /// Flight edge ids grouped by flight, each ordered by departure layer.
  const std::vector<std::vector<int>>& flight_edges_by_flight() const { return flight_edges_by_flight_; }

  /// The virtual flight edges C_(i,j): the t^f - 1 ground edges at the
  /// destination airport directly after the flight edge's head.
  /// Throws Error when `edge_id` is not a flight edge.
  const std::vector<int>& virtual_edges(int edge_id) const;

  const std::vector<int>& out_edges(int vertex_id) const { return out_edges_[vertex_id]; }
  const std::vector<int>& in_edges(int vertex_id) const { return in_edges_[vertex_id]; }

  /// Debug dump: edge-list CSV `tail_airport,tail_t,head_airport,head_t,kind,flight_id`.
  void write_edge_csv(std::ostream& out, const Scenario& scenario) const;

private:
  int num_airports_ = 0;
  int ops_layers_ = 0;
  int ops_start_ = 0;
  int num_ground_edges_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> flight_edges_by_flight_;
  std::vector<std::vector<int>> virtual_map_;  // flight edge id - ground edge ids
  std::vector<std::vector<int>> out_edges_;
  std::vector<std::vector<int>> in_edges_;
};

}  // namespace aerogrid
