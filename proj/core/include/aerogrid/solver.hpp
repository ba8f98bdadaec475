#pragma once

#include <atomic>
#include <memory>
#include <string>
#include <vector>

#include "aerogrid/model_ir.hpp"

namespace aerogrid {

enum class SolveStatus { Optimal, Infeasible, Unbounded, TimeLimit, Error };

const char* solve_status_name(SolveStatus status);

struct SolveOptions {
  double time_limit_s = 600.0;
  double gap_tol = 1e-6;  // relative MIP gap
  int threads = 1;
  int seed = 0;
  bool relax_integrality = false;
  bool verbose = false;
  // Cooperative cancellation; polled by the backend during the solve.
  const std::atomic<bool>* stop = nullptr;
  // Backend-specific options, applied verbatim after the ones above.
  std::vector<std::pair<std::string, std::string>> backend_options;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Error;
  double objective = 0.0;
  std::vector<double> col_values;
  double gap = 0.0;
  double wall_time_s = 0.0;
  std::string backend;
  std::string message;
};

/// Uniform contract for MILP/LP backends. One solve per instance at a time;
/// distinct instances may run concurrently on disjoint models.
class SolverBackend {
public:
  virtual ~SolverBackend() = default;
  virtual std::string name() const = 0;
  virtual SolveResult solve(const ModelIR& model, const SolveOptions& options) = 0;
};

/// Backend registry. Throws Error for unknown names.
std::unique_ptr<SolverBackend> make_solver(const std::string& name = "highs");
std::vector<std::string> available_solvers();

}  // namespace aerogrid
