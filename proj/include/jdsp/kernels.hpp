#pragma once

// Data-parallel inner loops. Every kernel exists twice with identical
// signatures: `serial::` is the plain reference loop kept for testing, and the
// unqualified version in `jdsp::kernels` is the OpenMP build used by the
// engine. Both perform the same floating-point operations per element, so
// results are bit-identical regardless of thread count.

#include <cstddef>
#include <span>

#include "jdsp/common.hpp"

namespace jdsp::kernels {

enum class Pauli { X, Y, Z };

// Qubit q addresses bit (n_qubits - 1 - q) of the basis index, i.e. qubit 0
// is the most significant bit.

void hadamard(std::span<cplx> amps, unsigned n_qubits, unsigned q);
void controlled_phase(std::span<cplx> amps, unsigned n_qubits, unsigned control, unsigned target,
                      double theta);
void swap_qubits(std::span<cplx> amps, unsigned n_qubits, unsigned q1, unsigned q2);
void pauli(std::span<cplx> amps, unsigned n_qubits, unsigned q, Pauli p);

/// Nearest-centroid assignment. `points` is n x d row-major, `centroids` is
/// k x d row-major. Ties go to the lower centroid index. Writes the squared
/// distance to the chosen centroid into `dist2`.
void assign_nearest(std::span<const double> points, std::size_t d, std::span<const double> centroids,
                    std::span<int> assignment, std::span<double> dist2);

/// P(e^{jw}) = sum_k c[k] e^{-jwk} at every w, by Horner in e^{-jw}.
void eval_on_unit_circle(std::span<const double> coeffs, std::span<const double> omega,
                         std::span<cplx> out);

namespace serial {
void hadamard(std::span<cplx> amps, unsigned n_qubits, unsigned q);
void controlled_phase(std::span<cplx> amps, unsigned n_qubits, unsigned control, unsigned target,
                      double theta);
void swap_qubits(std::span<cplx> amps, unsigned n_qubits, unsigned q1, unsigned q2);
void pauli(std::span<cplx> amps, unsigned n_qubits, unsigned q, Pauli p);
void assign_nearest(std::span<const double> points, std::size_t d, std::span<const double> centroids,
                    std::span<int> assignment, std::span<double> dist2);
void eval_on_unit_circle(std::span<const double> coeffs, std::span<const double> omega,
                         std::span<cplx> out);
}  // namespace serial

}  // namespace jdsp::kernels
