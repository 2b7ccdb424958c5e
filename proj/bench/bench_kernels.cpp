// Serial reference loops vs the OpenMP kernels. Set OMP_NUM_THREADS to vary
// the thread count of the parallel variants.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "jdsp/kernels.hpp"

namespace k = jdsp::kernels;
using jdsp::cplx;

namespace {

std::vector<cplx> random_state(unsigned n_qubits) {
    std::mt19937_64 g(7);
    std::normal_distribution<double> d(0.0, 1.0);
    std::vector<cplx> v(std::size_t{1} << n_qubits);
    for (auto& x : v) x = {d(g), d(g)};
    return v;
}

std::vector<double> random_reals(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = d(g);
    return v;
}

template <auto Fn>
void bm_hadamard(benchmark::State& st) {
    const auto n = static_cast<unsigned>(st.range(0));
    auto amps = random_state(n);
    for (auto _ : st) {
        for (unsigned q = 0; q < n; ++q) Fn(amps, n, q);
        benchmark::DoNotOptimize(amps.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<long>(amps.size()) * n);
}

template <auto Fn>
void bm_controlled_phase(benchmark::State& st) {
    const auto n = static_cast<unsigned>(st.range(0));
    auto amps = random_state(n);
    for (auto _ : st) {
        for (unsigned t = 1; t < n; ++t) Fn(amps, n, 0, t, M_PI / (1u << t));
        benchmark::DoNotOptimize(amps.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<long>(amps.size()) * (n - 1));
}

template <auto Fn>
void bm_assign_nearest(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const std::size_t d = 3, kc = 8;
    const auto points = random_reals(n * d, 1);
    const auto centroids = random_reals(kc * d, 2);
    std::vector<int> assign(n);
    std::vector<double> dist2(n);
    for (auto _ : st) {
        Fn(points, d, centroids, assign, dist2);
        benchmark::DoNotOptimize(dist2.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<long>(n));
}

template <auto Fn>
void bm_eval_on_unit_circle(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const auto coeffs = random_reals(75, 3);
    std::vector<double> omega(n);
    for (std::size_t i = 0; i < n; ++i) omega[i] = M_PI * static_cast<double>(i) / static_cast<double>(n - 1);
    std::vector<cplx> out(n);
    for (auto _ : st) {
        Fn(coeffs, omega, out);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<long>(n));
}

}  // namespace

BENCHMARK(bm_hadamard<k::serial::hadamard>)->Name("hadamard/serial")->DenseRange(10, 18, 4);
BENCHMARK(bm_hadamard<k::hadamard>)->Name("hadamard/omp")->DenseRange(10, 18, 4);
BENCHMARK(bm_controlled_phase<k::serial::controlled_phase>)->Name("controlled_phase/serial")->DenseRange(10, 18, 4);
BENCHMARK(bm_controlled_phase<k::controlled_phase>)->Name("controlled_phase/omp")->DenseRange(10, 18, 4);
BENCHMARK(bm_assign_nearest<k::serial::assign_nearest>)->Name("assign_nearest/serial")->RangeMultiplier(16)->Range(1 << 10, 1 << 18);
BENCHMARK(bm_assign_nearest<k::assign_nearest>)->Name("assign_nearest/omp")->RangeMultiplier(16)->Range(1 << 10, 1 << 18);
BENCHMARK(bm_eval_on_unit_circle<k::serial::eval_on_unit_circle>)->Name("eval_on_unit_circle/serial")->RangeMultiplier(16)->Range(1 << 9, 1 << 17);
BENCHMARK(bm_eval_on_unit_circle<k::eval_on_unit_circle>)->Name("eval_on_unit_circle/omp")->RangeMultiplier(16)->Range(1 << 9, 1 << 17);

BENCHMARK_MAIN();
