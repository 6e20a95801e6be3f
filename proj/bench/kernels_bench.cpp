// Serial reference kernels against their OpenMP counterparts.

#include "triadic/coherence.hpp"
#include "triadic/kernels.hpp"
#include "triadic/random.hpp"

#include <benchmark/benchmark.h>

using namespace triadic;

namespace {

std::vector<Rational> dist_of(unsigned k) {
    random::Rng rng(k);
    return random::distribution(rng, k, false, 50);
}

void BM_SubsetMassesSerial(benchmark::State& state) {
    const auto dist = dist_of(static_cast<unsigned>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::subset_masses_serial(dist));
}

void BM_SubsetMassesParallel(benchmark::State& state) {
    const auto dist = dist_of(static_cast<unsigned>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::subset_masses_parallel(dist));
}

kernels::VerdictRule threshold_rule(unsigned k) {
    auto dist = std::make_shared<std::vector<Rational>>(dist_of(k));
    return [dist](std::size_t, Mask h) {
        Rational p(0);
        for (unsigned i = 0; i < dist->size(); ++i)
            if ((h >> i) & 1U) p += (*dist)[i];
        return p > Rational(7, 10) ? Verdict::Accept : (p < Rational(3, 10) ? Verdict::Reject : Verdict::Boundary);
    };
}

void BM_MaterializeSerial(benchmark::State& state) {
    const auto k = static_cast<unsigned>(state.range(0));
    const auto rule = threshold_rule(k);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::materialize_serial(k, 2, rule));
}

void BM_MaterializeParallel(benchmark::State& state) {
    const auto k = static_cast<unsigned>(state.range(0));
    const auto rule = threshold_rule(k);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::materialize_parallel(k, 2, rule));
}

SimultaneousTest bench_test(unsigned k) {
    random::Rng rng(k + 100);
    return region_test(random::nonempty_regions(rng, k, 2));
}

void BM_CoherenceSerial(benchmark::State& state) {
    const auto test = bench_test(static_cast<unsigned>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(check_coherence_serial(test));
}

void BM_CoherenceParallel(benchmark::State& state) {
    const auto test = bench_test(static_cast<unsigned>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(check_coherence(test));
}

}  // namespace

BENCHMARK(BM_SubsetMassesSerial)->DenseRange(8, 16, 4);
BENCHMARK(BM_SubsetMassesParallel)->DenseRange(8, 16, 4);
BENCHMARK(BM_MaterializeSerial)->DenseRange(6, 12, 3);
BENCHMARK(BM_MaterializeParallel)->DenseRange(6, 12, 3);
BENCHMARK(BM_CoherenceSerial)->DenseRange(4, 8, 2);
BENCHMARK(BM_CoherenceParallel)->DenseRange(4, 8, 2);

BENCHMARK_MAIN();
