#include <cmath>
#include <cstddef>
#include <utility>

#include "jdsp/kernels.hpp"
#include "kernel_ops.hpp"

namespace jdsp::kernels {

using jdsp::kernels::Pauli;
namespace ops = jdsp::kernels::detail;

// Below this many element updates the fork/join cost dominates.
constexpr std::ptrdiff_t kMinParallel = 1 << 14;

void hadamard(std::span<cplx> amps, unsigned n_qubits, unsigned q) {
    const std::size_t mask = ops::qubit_mask(n_qubits, q);
    const auto half = static_cast<std::ptrdiff_t>(amps.size() / 2);
    #pragma omp parallel for schedule(static) if(half > kMinParallel)
    for (std::ptrdiff_t i = 0; i < half; ++i) ops::hadamard_pair(amps, static_cast<std::size_t>(i), mask);
}

void controlled_phase(std::span<cplx> amps, unsigned n_qubits, unsigned control, unsigned target,
                      double theta) {
    const std::size_t both = ops::qubit_mask(n_qubits, control) | ops::qubit_mask(n_qubits, target);
    const cplx phase = std::polar(1.0, theta);
    const auto n = static_cast<std::ptrdiff_t>(amps.size());
    #pragma omp parallel for schedule(static) if(n > kMinParallel)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        if ((static_cast<std::size_t>(i) & both) == both) amps[static_cast<std::size_t>(i)] *= phase;
    }
}

void swap_qubits(std::span<cplx> amps, unsigned n_qubits, unsigned q1, unsigned q2) {
    if (q1 == q2) return;
    const std::size_t m1 = ops::qubit_mask(n_qubits, q1);
    const std::size_t m2 = ops::qubit_mask(n_qubits, q2);
    const auto n = static_cast<std::ptrdiff_t>(amps.size());
    #pragma omp parallel for schedule(static) if(n > kMinParallel)
    for (std::ptrdiff_t s = 0; s < n; ++s) {
        const auto i = static_cast<std::size_t>(s);
        if ((i & m1) && !(i & m2)) std::swap(amps[i], amps[i ^ m1 ^ m2]);
    }
}

void pauli(std::span<cplx> amps, unsigned n_qubits, unsigned q, Pauli p) {
    const std::size_t mask = ops::qubit_mask(n_qubits, q);
    const auto half = static_cast<std::ptrdiff_t>(amps.size() / 2);
    #pragma omp parallel for schedule(static) if(half > kMinParallel)
    for (std::ptrdiff_t i = 0; i < half; ++i) ops::pauli_pair(amps, static_cast<std::size_t>(i), mask, p);
}

void assign_nearest(std::span<const double> points, std::size_t d, std::span<const double> centroids,
                    std::span<int> assignment, std::span<double> dist2) {
    const auto n = static_cast<std::ptrdiff_t>(assignment.size());
    #pragma omp parallel for schedule(static) if(n * static_cast<std::ptrdiff_t>(centroids.size()) > kMinParallel)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        ops::nearest_one(points, d, centroids, u, assignment[u], dist2[u]);
    }
}

void eval_on_unit_circle(std::span<const double> coeffs, std::span<const double> omega,
                         std::span<cplx> out) {
    const auto n = static_cast<std::ptrdiff_t>(omega.size());
    #pragma omp parallel for schedule(static) if(n * static_cast<std::ptrdiff_t>(coeffs.size()) > kMinParallel)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        out[u] = ops::horner_at(coeffs, omega[u]);
    }
}

}  // namespace jdsp::kernels
