#include "ws/kernels.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

namespace {

struct StripInput {
    std::vector<double> psi, psit;
    int ns, nt;
};

StripInput strip_input(int ns) {
    StripInput in{{}, {}, ns, ns / 2};
    const int n = 2 * ns + in.nt + 1;
    const double h = 3.141592653589793 / ns;
    in.psi.resize(n);
    in.psit.resize(n);
    for (int k = 0; k < n; ++k) {
        in.psi[k] = k * h + 0.3 * std::sin(k * h);
        in.psit[k] = (k - in.nt) * h + 3.0 + 0.2 * std::cos(3.0 * (k - in.nt) * h);
    }
    return in;
}

std::vector<ws::Vec3> unit_vectors(int n, unsigned seed) {
    std::mt19937_64 r(seed);
    std::normal_distribution<double> g;
    std::vector<ws::Vec3> v(n);
    for (auto& x : v) x = ws::Vec3(g(r), g(r), g(r)).normalized();
    return v;
}

void BM_StripSerial(benchmark::State& state) {
    const StripInput in = strip_input(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(ws::reference::strip_first_roots(in.psi, in.psit, in.ns, in.nt));
}

void BM_StripParallel(benchmark::State& state) {
    const StripInput in = strip_input(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(ws::kernels::strip_first_roots(in.psi, in.psit, in.ns, in.nt));
}

void BM_PairSumSerial(benchmark::State& state) {
    const auto a = unit_vectors(static_cast<int>(state.range(0)), 1), b = unit_vectors(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(ws::reference::min_pair_sum(a, b));
}

void BM_PairSumParallel(benchmark::State& state) {
    const auto a = unit_vectors(static_cast<int>(state.range(0)), 1), b = unit_vectors(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(ws::kernels::min_pair_sum(a, b));
}

}  // namespace

BENCHMARK(BM_StripSerial)->RangeMultiplier(4)->Range(256, 4096);
BENCHMARK(BM_StripParallel)->RangeMultiplier(4)->Range(256, 4096);
BENCHMARK(BM_PairSumSerial)->RangeMultiplier(4)->Range(256, 2048);
BENCHMARK(BM_PairSumParallel)->RangeMultiplier(4)->Range(256, 2048);

BENCHMARK_MAIN();
