#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "aerogrid/graph.hpp"
#include "aerogrid/milp_builder.hpp"
#include "aerogrid/scenario.hpp"

namespace aerogrid {

struct ValidationRow {
  std::string family;    // constraint family tag
  std::string location;  // aircraft/airport/time of the check
  double residual = 0.0; // violation magnitude, <= tolerance means pass
  bool pass = true;
  // Summary rows aggregate a whole family (worst residual, instance count);
  // failing instances additionally get their own itemized rows.
  bool summary = false;
  int checked = 0;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  bool overall_pass = false;
  double recomputed_objective_kwh = 0.0;
  double tolerance = 1e-6;

  int failures() const;
  bool family_passed(const std::string& family) const;
};

/// Constraint-by-constraint verification of a Solution, recomputed from first
/// principles (scenario, graph and the solution values only; no shared row
/// assembly with the model builder). Never throws on violations; every
/// finding is a report row.
ValidationReport validate_schedule(const Scenario& scenario, const TimeExpandedGraph& graph,
                                   const Solution& solution);

void write_report_text(std::ostream& out, const ValidationReport& report);

}  // namespace aerogrid
