#pragma once

// Statevector simulation of the quantum Fourier transform and a peak-picking
// analysis-synthesis codec built on it.
//
// Convention: the QFT maps amplitudes x_j to y_k = (1/sqrt N) sum_j x_j
// e^{+2 pi i jk/N}. For real x this is conj(DFT(x)) / sqrt(N) in the
// unnormalized forward-DFT convention of spectral.hpp.

#include <cstdint>
#include <map>
#include <variant>
#include <vector>

#include "jdsp/common.hpp"
#include "jdsp/random.hpp"

namespace jdsp {

struct StateVector {
    unsigned n_qubits = 1;
    ComplexVec amplitudes;

    static StateVector basis(unsigned n_qubits, std::size_t index);
    std::size_t dimension() const { return amplitudes.size(); }
    double norm() const { return l2_norm(amplitudes); }
};

struct HGate {
    unsigned q;
};
struct CPhaseGate {
    unsigned control;
    unsigned target;
    double angle;
};
struct SwapGate {
    unsigned q1;
    unsigned q2;
};

using Gate = std::variant<HGate, CPhaseGate, SwapGate>;

bool operator==(const HGate& l, const HGate& r);
bool operator==(const CPhaseGate& l, const CPhaseGate& r);
bool operator==(const SwapGate& l, const SwapGate& r);

struct QftCircuit {
    unsigned n_qubits = 1;
    std::vector<Gate> gates;
};

struct NoiseModel {
    double depolarizing_p = 0.0;  // per gate
    int shots = 0;                // 0: exact amplitudes
    std::uint64_t seed = 0;
};

struct EncodedSignal {
    StateVector state;
    double norm = 1.0;
    std::size_t original_len = 0;
};

struct CodecConfig {
    unsigned n_qubits = 3;
    std::size_t peaks = 1;
    NoiseModel noise;
};

struct CodecResult {
    RealVec reconstructed;
    double snr_db = 0.0;
    ComplexVec spectrum;                // estimated QFT spectrum before peak picking
    std::vector<std::size_t> retained;  // retained bins, ascending (partners included)
};

inline constexpr unsigned kMaxQubits = 14;

EncodedSignal amplitude_encode(const RealVec& x, unsigned n_qubits);
RealVec amplitude_decode(const EncodedSignal& enc);

QftCircuit build_qft_circuit(unsigned n_qubits);
QftCircuit inverse_circuit(const QftCircuit& circuit);

/// Matrix-free gate application. With depolarizing noise, after each gate a
/// random non-identity Pauli hits one of the gate's qubits with probability p.
StateVector apply_circuit(const StateVector& state, const QftCircuit& circuit);
StateVector apply_circuit(const StateVector& state, const QftCircuit& circuit, const NoiseModel& noise);
StateVector apply_circuit(const StateVector& state, const QftCircuit& circuit, double depolarizing_p, Rng& rng);

std::map<std::size_t, long long> measure_counts(const StateVector& state, int shots, std::uint64_t seed);
std::map<std::size_t, long long> measure_counts(const StateVector& state, int shots, Rng& rng);

/// Shot-noise emulation: magnitudes sqrt(count/M), phases from the statevector.
ComplexVec noisy_spectrum_estimate(const StateVector& state, const NoiseModel& noise);
ComplexVec noisy_spectrum_estimate(const StateVector& state, int shots, Rng& rng);

/// Bins kept by conjugate-pair peak picking: the `peaks` strongest pairs
/// (k, N-k) ranked by pair magnitude; bins 0 and N/2 pair with themselves.
std::vector<std::size_t> select_conjugate_peaks(const ComplexVec& spectrum, std::size_t peaks);

CodecResult qft_codec(const RealVec& x, const CodecConfig& cfg);

/// 10 log10(sum x^2 / sum (x - est)^2); +inf when the error is exactly zero.
double snr_db(const RealVec& reference, const RealVec& estimate);

}  // namespace jdsp
