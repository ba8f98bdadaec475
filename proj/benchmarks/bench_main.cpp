#include <benchmark/benchmark.h>

#include <sstream>

#include "aerogrid/lp_writer.hpp"
#include "aerogrid/milp_builder.hpp"
#include "aerogrid/scenario_io.hpp"
#include "aerogrid/validator.hpp"
#include "test_scenarios.hpp"

using namespace aerogrid;

namespace {

const Scenario& abc_monday() {
  static const Scenario s = testsupport::abc_scenario(0);
  return s;
}

void BM_BuildGraph(benchmark::State& state) {
  const Scenario& s = abc_monday();
  for (auto _ : state) {
    TimeExpandedGraph g = TimeExpandedGraph::build(s);
    benchmark::DoNotOptimize(g.edges().data());
  }
}
BENCHMARK(BM_BuildGraph)->Unit(benchmark::kMillisecond);

void BM_BuildModel(benchmark::State& state) {
  const Scenario& s = abc_monday();
  const TimeExpandedGraph g = TimeExpandedGraph::build(s);
  for (auto _ : state) {
    BuildResult built = build_model(s, g);
    benchmark::DoNotOptimize(built.model.rows.data());
  }
}
BENCHMARK(BM_BuildModel)->Unit(benchmark::kMillisecond);

void BM_FixFlights(benchmark::State& state) {
  const Scenario& s = abc_monday();
  const TimeExpandedGraph g = TimeExpandedGraph::build(s);
  const BuildResult built = build_model(s, g);
  for (auto _ : state) {
    ModelIR fixed = fix_flights(built.model, built.index, s, g, s.fixed_schedule);
    benchmark::DoNotOptimize(fixed.col_lower.data());
  }
}
BENCHMARK(BM_FixFlights)->Unit(benchmark::kMillisecond);

void BM_WriteLp(benchmark::State& state) {
  const Scenario& s = abc_monday();
  const TimeExpandedGraph g = TimeExpandedGraph::build(s);
  const BuildResult built = build_model(s, g);
  for (auto _ : state) {
    std::ostringstream out;
    write_lp(out, built.model);
    benchmark::DoNotOptimize(out.str().size());
  }
}
BENCHMARK(BM_WriteLp)->Unit(benchmark::kMillisecond);

void BM_ValidateIdle(benchmark::State& state) {
  Scenario s = testsupport::abc_scenario(0);
  for (auto& f : s.flights) f.demand_per_day = 0;
  s.fixed_schedule.clear();
  s.validate();
  const TimeExpandedGraph g = TimeExpandedGraph::build(s);
  const Solution idle = testsupport::make_idle_solution(s, g);
  for (auto _ : state) {
    ValidationReport report = validate_schedule(s, g, idle);
    benchmark::DoNotOptimize(report.overall_pass);
  }
}
BENCHMARK(BM_ValidateIdle)->Unit(benchmark::kMillisecond);

void BM_SerializeScenario(benchmark::State& state) {
  const Scenario& s = abc_monday();
  for (auto _ : state) {
    std::string text = serialize_scenario(s);
    benchmark::DoNotOptimize(text.size());
  }
}
BENCHMARK(BM_SerializeScenario)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
