#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace aerogrid {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Constraint families, one per equation of the formulation. Every row
/// carries its family so models can be audited and exported readably.
enum class RowTag {
  FlowContinuity,    // per-vertex, per-aircraft flow balance
  Demand,            // per-flight coverage >= demand
  VirtualForce,      // trailing ground edges forced after a flight edge
  StartCap,          // simultaneous departures per flight edge <= K_max
  ChargeGate,        // P_c <= x * M on ground edges
  ChargeVirtual,     // P_c <= (1 - x) * M on virtual flight edges
  SocDynamics,       // E_p(t+1) = E_p(t) + delta
  SocInit,           // E_p(t0) fixed to the initial energy
  ApronLimit,        // sum of chargers <= apron max
  PowerSplit,        // P_gr = P_a + P_aux - P_rnw - P_b
  BessDynCharge,     // E_b(t+1) <= E_b(t) - eta * P_b * dt
  BessDynDischarge,  // E_b(t+1) <= E_b(t) - P_b / eta * dt
  BessPeriodic,      // E_b(t0) = E_b(tf)
  BessFloor,         // E_b(ops start) >= xi * E_b,max
  SolarCap,          // P_rnw <= I * A * eta
};

const char* row_tag_name(RowTag tag);

enum class RowSense { LE, EQ, GE };

struct Row {
  std::vector<int> cols;
  std::vector<double> coefs;
  RowSense sense = RowSense::EQ;
  double rhs = 0.0;
  RowTag tag = RowTag::FlowContinuity;
  std::string name;
};

/// Solver-agnostic sparse MILP: column bounds and integrality, sparse rows,
/// minimization objective.
struct ModelIR {
  std::vector<double> col_lower;
  std::vector<double> col_upper;
  std::vector<double> objective;
  std::vector<std::uint8_t> integer;
  std::vector<std::string> col_names;
  std::vector<Row> rows;

  int num_cols() const { return static_cast<int>(col_lower.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  int add_col(double lower, double upper, double obj, bool is_integer, std::string name);
  void add_row(Row row);

  /// Rows per constraint family, for model audits.
  std::map<RowTag, int> rows_per_tag() const;
};

/// Dense column layout for one scenario/graph pair. Within each family,
/// columns are ordered aircraft-major, then time, then airport or edge id.
struct VariableIndex {
  int n_aircraft = 0;
  int n_airports = 0;
  int n_edges = 0;
  int ops_steps = 0;   // |T| - 1
  int ops_layers = 0;  // |T|
  int ops_start = 0;   // day layer of the first operations layer
  int day_steps = 0;   // |T_d|

  int x0 = 0;     // x[k][e], binary edge selection
  int pc0 = 0;    // P_c[k][s][a], charging power, operations steps only
  int ep0 = 0;    // E_p[k][l], aircraft stored energy per operations layer
  int pgr0 = 0;   // P_gr[s][a], grid draw per day step
  int prnw0 = 0;  // P_rnw[s][a]
  int pb0 = 0;    // P_b[s][a]
  int eb0 = 0;    // E_b[l][a], BESS energy per day layer
  int num_cols = 0;

  int x(int k, int e) const { return x0 + k * n_edges + e; }
  int pc(int k, int a, int s) const { return pc0 + (k * ops_steps + s) * n_airports + a; }
  int ep(int k, int l) const { return ep0 + k * ops_layers + l; }
  int pgr(int a, int s) const { return pgr0 + s * n_airports + a; }
  int prnw(int a, int s) const { return prnw0 + s * n_airports + a; }
  int pb(int a, int s) const { return pb0 + s * n_airports + a; }
  int eb(int a, int l) const { return eb0 + l * n_airports + a; }
};

}  // namespace aerogrid
