// Serial reference kernels against their OpenMP counterparts.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "desk_scenarios.hpp"
#include "hsc/demand.hpp"
#include "hsc/model.hpp"
#include "hsc/moo.hpp"
#include "hsc/solver.hpp"

namespace {

std::vector<hsc::ParetoPoint> random_points(std::size_t n) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<hsc::ParetoPoint> pts(n);
  for (auto& p : pts) {
    p.cost = u(rng);
    p.ghg = u(rng);
    // Anti-correlated third criterion keeps many points nondominated.
    p.risk = 2.0 - p.cost - p.ghg + 0.1 * u(rng);
  }
  return pts;
}

void BM_ParetoSerial(benchmark::State& st) {
  const auto pts = random_points(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(hsc::pareto_filter_serial(pts));
}
void BM_ParetoParallel(benchmark::State& st) {
  const auto pts = random_points(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(hsc::pareto_filter(pts));
}
BENCHMARK(BM_ParetoSerial)->Arg(500)->Arg(2000);
BENCHMARK(BM_ParetoParallel)->Arg(500)->Arg(2000);

void BM_DemandSerial(benchmark::State& st) {
  const hsc::Scenario s = hsc::desk::corsica();
  for (auto _ : st) benchmark::DoNotOptimize(hsc::demand_table_serial(s));
}
void BM_DemandParallel(benchmark::State& st) {
  const hsc::Scenario s = hsc::desk::corsica();
  for (auto _ : st) benchmark::DoNotOptimize(hsc::demand_table(s));
}
BENCHMARK(BM_DemandSerial);
BENCHMARK(BM_DemandParallel);

hsc::MilpInstance oracle_instance() {
  for (std::uint32_t seed = 1;; ++seed) {
    const hsc::HscModel m = hsc::assemble(hsc::desk::oracle_candidate(seed), hsc::ObjectiveKind::kCost);
    const double p = hsc::integer_domain_product(m.inst);
    if (p >= 256 && p <= 4096) return m.inst;
  }
}

void BM_OracleSerial(benchmark::State& st) {
  const hsc::MilpInstance inst = oracle_instance();
  for (auto _ : st) benchmark::DoNotOptimize(hsc::enumerate_oracle_serial(inst));
}
void BM_OracleParallel(benchmark::State& st) {
  const hsc::MilpInstance inst = oracle_instance();
  for (auto _ : st) benchmark::DoNotOptimize(hsc::enumerate_oracle(inst));
}
BENCHMARK(BM_OracleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->Unit(benchmark::kMillisecond);

void BM_SweepSerial(benchmark::State& st) {
  const hsc::Scenario s = hsc::desk::oracle_candidate(3);
  for (auto _ : st) benchmark::DoNotOptimize(hsc::epsilon_sweep_serial(s, 2, 2));
}
void BM_SweepParallel(benchmark::State& st) {
  const hsc::Scenario s = hsc::desk::oracle_candidate(3);
  for (auto _ : st) benchmark::DoNotOptimize(hsc::epsilon_sweep(s, 2, 2));
}
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
