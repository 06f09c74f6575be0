#include <benchmark/benchmark.h>

#include "submatroid/analysis.hpp"
#include "submatroid/brute_force.hpp"
#include "submatroid/greedy.hpp"
#include "submatroid/instances.hpp"

namespace {

using namespace submatroid;

void BM_RunGreedy(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const GeneralInstance inst = gen_random_tabular(17, n, RandomMatroidKind::Uniform);
    for (auto _ : state) {
        GreedyTrace trace = run_greedy(inst.valuation, inst.matroid);
        benchmark::DoNotOptimize(trace.final_value);
    }
}
BENCHMARK(BM_RunGreedy)->Arg(6)->Arg(9)->Arg(12);

void BM_BruteForceOptimum(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const GeneralInstance inst = gen_random_tabular(23, n, RandomMatroidKind::Partition);
    for (auto _ : state) {
        OptimumCertificate cert = brute_force_optimum(inst.valuation, inst.matroid);
        benchmark::DoNotOptimize(cert.optimum_value);
    }
}
BENCHMARK(BM_BruteForceOptimum)->Arg(8)->Arg(10)->Arg(12);

void BM_GreedyM(benchmark::State& state) {
    const PartitionInstance inst = gen_random_partition(31, 3, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        GreedyTrace trace = run_greedy_m(inst);
        benchmark::DoNotOptimize(trace.final_value);
    }
}
BENCHMARK(BM_GreedyM)->Arg(4)->Arg(6)->Arg(8);

void BM_GuaranteeAnalysis(benchmark::State& state) {
    const GeneralInstance inst =
        gen_random_tabular(41, static_cast<int>(state.range(0)), RandomMatroidKind::Uniform);
    const GreedyTrace trace = run_greedy(inst.valuation, inst.matroid);
    for (auto _ : state) {
        GuaranteeReport report = analyze_greedy(inst.valuation, inst.matroid, trace);
        benchmark::DoNotOptimize(report.curvature);
    }
}
BENCHMARK(BM_GuaranteeAnalysis)->Arg(8)->Arg(12);

void BM_TightGeneralSolve(benchmark::State& state) {
    TightGeneralParams params;
    params.rank = static_cast<int>(state.range(0));
    const GeneralInstance inst = gen_tight_general(params);
    GreedyConfig config;
    config.tie_policy = TiePolicy::PreferenceList;
    config.preference = tight_general_eps_preference(params);
    for (auto _ : state) {
        GreedyTrace trace = run_greedy(inst.valuation, inst.matroid, config);
        benchmark::DoNotOptimize(trace.final_value);
    }
}
BENCHMARK(BM_TightGeneralSolve)->Arg(10)->Arg(40)->Arg(80);

} // namespace

BENCHMARK_MAIN();
