#include "aerogrid/solver.hpp"

#include "aerogrid/error.hpp"

namespace aerogrid {

std::unique_ptr<SolverBackend> make_highs_solver();

const char* solve_status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unbounded: return "Unbounded";
    case SolveStatus::TimeLimit: return "TimeLimit";
    case SolveStatus::Error: return "Error";
  }
  return "unknown";
}

std::unique_ptr<SolverBackend> make_solver(const std::string& name) {
  if (name == "highs") return make_highs_solver();
  std::string known;
  for (const auto& n : available_solvers()) known += (known.empty() ? "" : ", ") + n;
  fail("unknown solver backend '" + name + "' (available: " + known + ")");
}

std::vector<std::string> available_solvers() { return {"highs"}; }

}  // namespace aerogrid
