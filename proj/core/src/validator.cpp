#include "aerogrid/validator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "aerogrid/aircraft_energy.hpp"
#include "aerogrid/airport_energy.hpp"

namespace aerogrid {

namespace {

constexpr double kTol = 1e-6;

// Accumulates residuals per constraint family: one summary row per family,
// plus an itemized row for every failing instance.
class Checker {
public:
  void add(const std::string& family, const std::string& location, double residual) {
    Family& f = families_[family];
    ++f.checked;
    if (residual > f.worst) {
      f.worst = residual;
      f.worst_location = location;
    }
    if (residual > kTol)
      failures_.push_back(ValidationRow{family, location, residual, false, false, 1});
  }

  std::vector<ValidationRow> rows(const std::vector<std::string>& family_order) const {
    std::vector<ValidationRow> out;
    for (const auto& name : family_order) {
      auto it = families_.find(name);
      if (it == families_.end()) continue;
      const Family& f = it->second;
      out.push_back(ValidationRow{name, f.worst_location, f.worst, f.worst <= kTol, true, f.checked});
    }
    for (const auto& row : failures_) out.push_back(row);
    return out;
  }

  bool all_pass() const {
    return failures_.empty();
  }

private:
  struct Family {
    double worst = 0.0;
    std::string worst_location;
    int checked = 0;
  };
  std::map<std::string, Family> families_;
  std::vector<ValidationRow> failures_;
};

std::string at_step(const std::string& id, int t) { return id + " t=" + std::to_string(t); }

}  // namespace

int ValidationReport::failures() const {
  int n = 0;
  for (const auto& r : rows)
    if (!r.summary && !r.pass) ++n;
  return n;
}

bool ValidationReport::family_passed(const std::string& family) const {
  for (const auto& r : rows)
    if (r.summary && r.family == family) return r.pass;
  return false;
}

ValidationReport validate_schedule(const Scenario& scenario, const TimeExpandedGraph& graph,
                                   const Solution& solution) {
  const TimeGrid& grid = scenario.time_grid;
  const int n_aircraft = static_cast<int>(scenario.fleet.size());
  const int n_airports = static_cast<int>(scenario.airports.size());
  const int ops_steps = grid.ops_steps();
  const int day_steps = grid.day_steps;
  const double dt_h = grid.step_hours();
  const auto energy = flight_energy_matrix(scenario);

  Checker check;
  ValidationReport report;
  report.tolerance = kTol;

  // Dimension guard: structural mismatches are findings, not exceptions.
  bool dims_ok = static_cast<int>(solution.paths.size()) == n_aircraft &&
                 static_cast<int>(solution.charge_kw.size()) == n_aircraft &&
                 static_cast<int>(solution.soc_kwh.size()) == n_aircraft &&
                 static_cast<int>(solution.airports.size()) == n_airports;
  for (int k = 0; dims_ok && k < n_aircraft; ++k) {
    dims_ok = static_cast<int>(solution.paths[k].size()) == ops_steps &&
              static_cast<int>(solution.charge_kw[k].size()) == n_airports &&
              static_cast<int>(solution.soc_kwh[k].size()) == ops_steps + 1;
    for (int a = 0; dims_ok && a < n_airports; ++a)
      dims_ok = static_cast<int>(solution.charge_kw[k][a].size()) == ops_steps;
  }
  for (int a = 0; dims_ok && a < n_airports; ++a) {
    const AirportPowerProfile& p = solution.airports[a];
    dims_ok = static_cast<int>(p.grid_kw.size()) == day_steps &&
              static_cast<int>(p.renewable_kw.size()) == day_steps &&
              static_cast<int>(p.bess_kw.size()) == day_steps &&
              static_cast<int>(p.apron_kw.size()) == day_steps &&
              static_cast<int>(p.bess_kwh.size()) == day_steps + 1;
  }
  if (!dims_ok) {
    report.rows.push_back(
        ValidationRow{"structure", "solution dimensions do not match scenario/graph", 1.0, false,
                      true, 1});
    report.overall_pass = false;
    return report;
  }

  // Path continuity, endpoints, one edge per step.
  for (int k = 0; k < n_aircraft; ++k) {
    const AircraftSpec& p = scenario.fleet[k];
    const std::string& kid = p.id;
    int v = graph.vertex_id(scenario.airport_index(p.origin_airport), graph.ops_start());
    double broken = 0.0;
    for (int s = 0; s < ops_steps; ++s) {
      const int e = solution.paths[k][s];
      if (e < 0 || e >= static_cast<int>(graph.edges().size()) || graph.edges()[e].tail != v ||
          graph.vertex(graph.edges()[e].tail).layer != graph.ops_start() + s) {
        broken = 1.0;
        check.add("flow.continuity", at_step(kid, graph.ops_start() + s), 1.0);
        break;
      }
      v = graph.edges()[e].head;
    }
    if (broken == 0.0) {
      const int dest = graph.vertex_id(scenario.airport_index(p.destination_airport), graph.ops_end());
      check.add("flow.continuity", kid + " destination", v == dest ? 0.0 : 1.0);
    }
  }

  // Demand coverage and the per-edge departure cap.
  {
    std::vector<int> flown(scenario.flights.size(), 0);
    std::map<int, int> edge_use;
    for (int k = 0; k < n_aircraft; ++k) {
      for (int e : solution.paths[k]) {
        if (e < 0 || e >= static_cast<int>(graph.edges().size())) continue;
        if (graph.edges()[e].kind == EdgeKind::Flight) {
          ++flown[graph.edges()[e].flight];
          ++edge_use[e];
        }
      }
    }
    for (std::size_t f = 0; f < scenario.flights.size(); ++f)
      check.add("demand", scenario.flights[f].id,
                std::max(0.0, static_cast<double>(scenario.flights[f].demand_per_day - flown[f])));
    for (const auto& [e, count] : edge_use) {
      const Edge& edge = graph.edges()[e];
      check.add("start.cap",
                at_step(scenario.flights[edge.flight].id, graph.vertex(edge.tail).layer),
                std::max(0.0, static_cast<double>(count - scenario.k_max)));
    }
    if (edge_use.empty()) check.add("start.cap", "no flights", 0.0);
  }

  // Virtual-edge forcing and the no-charge rule on virtual edges.
  for (int k = 0; k < n_aircraft; ++k) {
    const std::string& kid = scenario.fleet[k].id;
    bool any = false;
    for (int s = 0; s < ops_steps; ++s) {
      const int e = solution.paths[k][s];
      if (e < 0 || e >= static_cast<int>(graph.edges().size())) continue;
      const Edge& edge = graph.edges()[e];
      if (edge.kind != EdgeKind::Flight) continue;
      any = true;
      const int dest = graph.vertex(edge.head).airport;
      const auto& chain = graph.virtual_edges(e);
      for (std::size_t tau = 0; tau < chain.size(); ++tau) {
        const int step = s + 1 + static_cast<int>(tau);
        const bool taken = step < ops_steps && solution.paths[k][step] == chain[tau];
        check.add("virtual.force", at_step(kid, graph.ops_start() + step), taken ? 0.0 : 1.0);
        if (step < ops_steps)
          check.add("charge.virtual", at_step(kid, graph.ops_start() + step),
                    std::abs(solution.charge_kw[k][dest][step]));
      }
    }
    if (!any) {
      check.add("virtual.force", kid + " no flights", 0.0);
      check.add("charge.virtual", kid + " no flights", 0.0);
    }
  }

  // Charging bounds and the parked-here gate.
  for (int k = 0; k < n_aircraft; ++k) {
    const AircraftSpec& p = scenario.fleet[k];
    for (int s = 0; s < ops_steps; ++s) {
      const int e = solution.paths[k][s];
      const Edge* edge = (e >= 0 && e < static_cast<int>(graph.edges().size())) ? &graph.edges()[e] : nullptr;
      for (int a = 0; a < n_airports; ++a) {
        const double pc = solution.charge_kw[k][a][s];
        const std::string loc = p.id + " at " + scenario.airports[a].id + " t=" +
                                std::to_string(graph.ops_start() + s);
        check.add("charge.bounds", loc,
                  std::max(std::max(0.0, -pc), pc - p.charge_power_max_kw));
        const bool parked_here = edge && edge->kind == EdgeKind::Ground &&
                                 graph.vertex(edge->tail).airport == a;
        if (!parked_here) check.add("charge.gate", loc, std::abs(pc));
      }
    }
  }

  // Aircraft stored-energy recursion, initial condition and bounds.
  for (int k = 0; k < n_aircraft; ++k) {
    const AircraftSpec& p = scenario.fleet[k];
    check.add("soc.init", p.id, std::abs(solution.soc_kwh[k][0] - p.initial_energy_kwh));
    for (int s = 0; s < ops_steps; ++s) {
      double charging = 0.0;
      for (int a = 0; a < n_airports; ++a) charging += solution.charge_kw[k][a][s];
      const int e = solution.paths[k][s];
      double expended = 0.0;
      if (e >= 0 && e < static_cast<int>(graph.edges().size()) &&
          graph.edges()[e].kind == EdgeKind::Flight)
        expended = energy[k][graph.edges()[e].flight];
      const double delta = soc_delta(charging, expended, grid.dt_minutes);
      check.add("soc.dynamics", at_step(p.id, graph.ops_start() + s),
                std::abs(solution.soc_kwh[k][s + 1] - solution.soc_kwh[k][s] - delta));
    }
    for (int l = 0; l <= ops_steps; ++l) {
      const double e = solution.soc_kwh[k][l];
      check.add("soc.bounds", at_step(p.id, graph.ops_start() + l),
                std::max(std::max(0.0, -e), e - p.battery_capacity_kwh));
    }
    if (p.min_final_energy_kwh)
      check.add("soc.bounds", p.id + " final",
                std::max(0.0, *p.min_final_energy_kwh - solution.soc_kwh[k][ops_steps]));
  }

  // Airport side: apron aggregation and limits, power split, BESS, solar, grid.
  double objective = 0.0;
  for (int a = 0; a < n_airports; ++a) {
    const AirportSpec& ap = scenario.airports[a];
    const AirportPowerProfile& prof = solution.airports[a];
    const auto irradiance = scenario.irradiance_for(ap.id);
    for (int t = 0; t < day_steps; ++t) {
      const std::string loc = at_step(ap.id, t);
      const bool in_ops = t >= grid.ops_start_index && t < grid.ops_end_index;
      double apron = 0.0;
      if (in_ops)
        for (int k = 0; k < n_aircraft; ++k) apron += solution.charge_kw[k][a][t - grid.ops_start_index];
      check.add("apron.sum", loc, std::abs(prof.apron_kw[t] - apron));
      check.add("apron.limit", loc,
                std::max(std::max(0.0, -prof.apron_kw[t]), prof.apron_kw[t] - ap.apron_power_max_kw));
      check.add("power.split", loc,
                std::abs(prof.grid_kw[t] - grid_power_kw(prof.apron_kw[t], ap.aux_power_kw,
                                                         prof.renewable_kw[t], prof.bess_kw[t])));
      const BessStepCheck bess = bess_feasible_step(prof.bess_kwh[t], prof.bess_kwh[t + 1],
                                                    prof.bess_kw[t], ap.bess_efficiency,
                                                    grid.dt_minutes);
      check.add("bess.dynamics", loc, std::max(0.0, bess.residual_kwh));
      check.add("bess.power", loc, std::max(std::max(0.0, ap.bess_power_min_kw - prof.bess_kw[t]),
                                            prof.bess_kw[t] - ap.bess_power_max_kw));
      check.add("solar.cap", loc,
                std::max(std::max(0.0, -prof.renewable_kw[t]),
                         prof.renewable_kw[t] -
                             solar_cap_kw(irradiance[t], ap.solar_area_m2, ap.solar_efficiency)));
      check.add("grid.nonneg", loc, std::max(0.0, -prof.grid_kw[t]));
      objective += prof.grid_kw[t] * dt_h;
    }
    for (int l = 0; l <= day_steps; ++l)
      check.add("bess.bounds", at_step(ap.id, l),
                std::max(std::max(0.0, ap.bess_min_kwh - prof.bess_kwh[l]),
                         prof.bess_kwh[l] - ap.bess_capacity_kwh));
    check.add("bess.periodic", ap.id, std::abs(prof.bess_kwh[0] - prof.bess_kwh[day_steps]));
    check.add("bess.floor", ap.id,
              std::max(0.0, ap.bess_init_soc_frac * ap.bess_capacity_kwh -
                                prof.bess_kwh[grid.ops_start_index]));
  }

  report.recomputed_objective_kwh = objective;
  check.add("objective", "total grid energy",
            std::abs(objective - solution.objective_kwh) / (1.0 + std::abs(solution.objective_kwh)));

  static const std::vector<std::string> family_order = {
      "flow.continuity", "demand",        "virtual.force", "start.cap",   "charge.bounds",
      "charge.gate",     "charge.virtual", "soc.init",      "soc.dynamics", "soc.bounds",
      "apron.sum",       "apron.limit",   "power.split",   "bess.dynamics", "bess.power",
      "bess.bounds",     "bess.periodic", "bess.floor",    "solar.cap",   "grid.nonneg",
      "objective"};
  report.rows = check.rows(family_order);
  report.overall_pass = check.all_pass();
  return report;
}

void write_report_text(std::ostream& out, const ValidationReport& report) {
  out << "validation: " << (report.overall_pass ? "PASS" : "FAIL") << " (tolerance "
      << report.tolerance << ", recomputed objective " << report.recomputed_objective_kwh
      << " kWh)\n";
  for (const auto& row : report.rows) {
    if (!row.summary) continue;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", row.residual);
    out << "  [" << (row.pass ? "pass" : "FAIL") << "] " << row.family << " (" << row.checked
        << " checks, worst " << buf;
    if (!row.location.empty()) out << " at " << row.location;
    out << ")\n";
  }
  int listed = 0;
  for (const auto& row : report.rows) {
    if (row.summary || row.pass) continue;
    if (++listed > 20) {
      out << "  ... " << (report.failures() - 20) << " more failing checks\n";
      break;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", row.residual);
    out << "    violated: " << row.family << " at " << row.location << " by " << buf << "\n";
  }
}

}  // namespace aerogrid
