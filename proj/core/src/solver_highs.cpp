#include <chrono>

#include "Highs.h"

#include "aerogrid/error.hpp"
#include "aerogrid/solver.hpp"

namespace aerogrid {

namespace {

class HighsSolver final : public SolverBackend {
public:
  std::string name() const override { return "highs"; }

  SolveResult solve(const ModelIR& m, const SolveOptions& options) override {
    const auto t0 = std::chrono::steady_clock::now();

    HighsLp lp;
    lp.num_col_ = m.num_cols();
    lp.num_row_ = m.num_rows();
    lp.col_cost_ = m.objective;
    lp.col_lower_ = m.col_lower;
    lp.col_upper_ = m.col_upper;
    lp.sense_ = ObjSense::kMinimize;

    bool any_integer = false;
    if (!options.relax_integrality) {
      lp.integrality_.resize(m.num_cols(), HighsVarType::kContinuous);
      for (int j = 0; j < m.num_cols(); ++j) {
        if (m.integer[j]) {
          lp.integrality_[j] = HighsVarType::kInteger;
          any_integer = true;
        }
      }
      if (!any_integer) lp.integrality_.clear();
    }

    lp.row_lower_.resize(m.num_rows());
    lp.row_upper_.resize(m.num_rows());
    lp.a_matrix_.format_ = MatrixFormat::kRowwise;
    lp.a_matrix_.start_.resize(m.num_rows() + 1);
    std::size_t nnz = 0;
    for (const Row& r : m.rows) nnz += r.cols.size();
    lp.a_matrix_.index_.reserve(nnz);
    lp.a_matrix_.value_.reserve(nnz);
    for (int i = 0; i < m.num_rows(); ++i) {
      const Row& r = m.rows[i];
      lp.a_matrix_.start_[i] = static_cast<HighsInt>(lp.a_matrix_.index_.size());
      for (std::size_t t = 0; t < r.cols.size(); ++t) {
        lp.a_matrix_.index_.push_back(r.cols[t]);
        lp.a_matrix_.value_.push_back(r.coefs[t]);
      }
      switch (r.sense) {
        case RowSense::LE:
          lp.row_lower_[i] = -kHighsInf;
          lp.row_upper_[i] = r.rhs;
          break;
        case RowSense::GE:
          lp.row_lower_[i] = r.rhs;
          lp.row_upper_[i] = kHighsInf;
          break;
        case RowSense::EQ:
          lp.row_lower_[i] = r.rhs;
          lp.row_upper_[i] = r.rhs;
          break;
      }
    }
    lp.a_matrix_.start_[m.num_rows()] = static_cast<HighsInt>(lp.a_matrix_.index_.size());

    Highs highs;
    highs.setOptionValue("output_flag", options.verbose);
    highs.setOptionValue("time_limit", options.time_limit_s);
    highs.setOptionValue("mip_rel_gap", options.gap_tol);
    highs.setOptionValue("threads", options.threads);
    highs.setOptionValue("random_seed", options.seed);
    for (const auto& [key, value] : options.backend_options) {
      if (highs.setOptionValue(key, value) != HighsStatus::kOk)
        fail("backend option '" + key + "=" + value + "' rejected by HiGHS");
    }
    if (options.stop) {
      highs.setCallback(
          [](int, const std::string&, const HighsCallbackOutput*, HighsCallbackInput* input,
             void* user) {
            const auto* stop = static_cast<const std::atomic<bool>*>(user);
            input->user_interrupt = stop->load(std::memory_order_relaxed);
          },
          const_cast<std::atomic<bool>*>(options.stop));
      highs.startCallback(kCallbackMipInterrupt);
      highs.startCallback(kCallbackSimplexInterrupt);
    }

    SolveResult result;
    result.backend = name();
    if (highs.passModel(std::move(lp)) != HighsStatus::kOk) {
      result.status = SolveStatus::Error;
      result.message = "HiGHS rejected the model";
      return result;
    }
    const HighsStatus run_status = highs.run();
    result.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (run_status == HighsStatus::kError) {
      result.status = SolveStatus::Error;
      result.message = "HiGHS run failed";
      return result;
    }

    const HighsModelStatus status = highs.getModelStatus();
    switch (status) {
      case HighsModelStatus::kOptimal: result.status = SolveStatus::Optimal; break;
      case HighsModelStatus::kInfeasible: result.status = SolveStatus::Infeasible; break;
      case HighsModelStatus::kUnbounded:
      case HighsModelStatus::kUnboundedOrInfeasible: result.status = SolveStatus::Unbounded; break;
      case HighsModelStatus::kTimeLimit:
      case HighsModelStatus::kInterrupt: result.status = SolveStatus::TimeLimit; break;
      default:
        result.status = SolveStatus::Error;
        result.message = "HiGHS status: " + highs.modelStatusToString(status);
        break;
    }

    const HighsSolution& sol = highs.getSolution();
    if (sol.value_valid) {
      result.col_values = sol.col_value;
      result.objective = highs.getObjectiveValue();
      if (any_integer) {
        const HighsInfo& info = highs.getInfo();
        result.gap = info.mip_gap == kHighsInf ? kInf : info.mip_gap;
      }
    } else if (result.status == SolveStatus::TimeLimit) {
      result.message = "time limit reached without an incumbent";
    }
    return result;
  }
};

}  // namespace

std::unique_ptr<SolverBackend> make_highs_solver() { return std::make_unique<HighsSolver>(); }

}  // namespace aerogrid
