#pragma once

// Per-element bodies shared by the serial and OpenMP kernel builds.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>

#include "jdsp/kernels.hpp"

namespace jdsp::kernels::detail {

inline std::size_t qubit_mask(unsigned n_qubits, unsigned q) { return std::size_t{1} << (n_qubits - 1 - q); }

// Index of the i-th basis state whose `mask` bit is clear.
inline std::size_t insert_zero_bit(std::size_t i, std::size_t mask) {
    const std::size_t lo = i & (mask - 1);
    return ((i - lo) << 1) | lo;
}

inline void hadamard_pair(std::span<cplx> amps, std::size_t i, std::size_t mask) {
    static const double r = 1.0 / std::sqrt(2.0);
    const std::size_t i0 = insert_zero_bit(i, mask);
    const std::size_t i1 = i0 | mask;
    const cplx a0 = amps[i0];
    const cplx a1 = amps[i1];
    amps[i0] = (a0 + a1) * r;
    amps[i1] = (a0 - a1) * r;
}

inline void pauli_pair(std::span<cplx> amps, std::size_t i, std::size_t mask, Pauli p) {
    const std::size_t i0 = insert_zero_bit(i, mask);
    const std::size_t i1 = i0 | mask;
    const cplx a0 = amps[i0];
    const cplx a1 = amps[i1];
    switch (p) {
        case Pauli::X:
            amps[i0] = a1;
            amps[i1] = a0;
            break;
        case Pauli::Y:
            amps[i0] = cplx(a1.imag(), -a1.real());  // -i * a1
            amps[i1] = cplx(-a0.imag(), a0.real());  //  i * a0
            break;
        case Pauli::Z:
            amps[i1] = -a1;
            break;
    }
}

inline void nearest_one(std::span<const double> points, std::size_t d, std::span<const double> centroids,
                        std::size_t i, int& assignment, double& dist2) {
    const std::size_t k = centroids.size() / d;
    const double* x = points.data() + i * d;
    double best = std::numeric_limits<double>::infinity();
    int best_j = 0;
    for (std::size_t j = 0; j < k; ++j) {
        const double* c = centroids.data() + j * d;
        double s = 0.0;
        for (std::size_t t = 0; t < d; ++t) {
            const double diff = x[t] - c[t];
            s += diff * diff;
        }
        if (s < best) {
            best = s;
            best_j = static_cast<int>(j);
        }
    }
    assignment = best_j;
    dist2 = best;
}

inline cplx horner_at(std::span<const double> coeffs, double w) {
    const cplx zinv(std::cos(w), -std::sin(w));
    cplx acc(0.0, 0.0);
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * zinv + coeffs[k];
    return acc;
}

}  // namespace jdsp::kernels::detail
