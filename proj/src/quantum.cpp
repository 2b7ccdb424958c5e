#include "jdsp/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "jdsp/kernels.hpp"

namespace jdsp {

namespace {

void check_qubits(unsigned n) {
    if (n < 1 || n > kMaxQubits)
        throw Error("InvalidQubits", "qubit count must lie in [1, " + std::to_string(kMaxQubits) + "]");
}

void check_state(const StateVector& s, unsigned n_qubits) {
    if (s.n_qubits != n_qubits || s.amplitudes.size() != (std::size_t{1} << n_qubits))
        throw Error("DimensionMismatch", "state has " + std::to_string(s.amplitudes.size()) +
                                             " amplitudes, circuit acts on " + std::to_string(n_qubits) + " qubits");
}

void apply_gate(ComplexVec& amps, unsigned n, const Gate& g) {
    std::visit(
        [&](const auto& gate) {
            using T = std::decay_t<decltype(gate)>;
            if constexpr (std::is_same_v<T, HGate>)
                kernels::hadamard(amps, n, gate.q);
            else if constexpr (std::is_same_v<T, CPhaseGate>)
                kernels::controlled_phase(amps, n, gate.control, gate.target, gate.angle);
            else
                kernels::swap_qubits(amps, n, gate.q1, gate.q2);
        },
        g);
}

unsigned touched_qubit(const Gate& g, Rng& rng) {
    return std::visit(
        [&](const auto& gate) -> unsigned {
            using T = std::decay_t<decltype(gate)>;
            if constexpr (std::is_same_v<T, HGate>)
                return gate.q;
            else if constexpr (std::is_same_v<T, CPhaseGate>)
                return uniform_index(rng, 2) == 0 ? gate.control : gate.target;
            else
                return uniform_index(rng, 2) == 0 ? gate.q1 : gate.q2;
        },
        g);
}

void check_gate(const Gate& g, unsigned n) {
    const bool ok = std::visit(
        [&](const auto& gate) {
            using T = std::decay_t<decltype(gate)>;
            if constexpr (std::is_same_v<T, HGate>)
                return gate.q < n;
            else if constexpr (std::is_same_v<T, CPhaseGate>)
                return gate.control < n && gate.target < n && gate.control != gate.target && std::isfinite(gate.angle);
            else
                return gate.q1 < n && gate.q2 < n;
        },
        g);
    if (!ok) throw Error("InvalidCircuit", "gate addresses a qubit outside the register");
}

}  // namespace

bool operator==(const HGate& l, const HGate& r) { return l.q == r.q; }
bool operator==(const CPhaseGate& l, const CPhaseGate& r) {
    return l.control == r.control && l.target == r.target && l.angle == r.angle;
}
bool operator==(const SwapGate& l, const SwapGate& r) { return l.q1 == r.q1 && l.q2 == r.q2; }

StateVector StateVector::basis(unsigned n_qubits, std::size_t index) {
    check_qubits(n_qubits);
    StateVector s;
    s.n_qubits = n_qubits;
    s.amplitudes.assign(std::size_t{1} << n_qubits, cplx(0.0, 0.0));
    if (index >= s.amplitudes.size()) throw Error("OutOfRange", "basis index exceeds 2^n - 1");
    s.amplitudes[index] = 1.0;
    return s;
}

EncodedSignal amplitude_encode(const RealVec& x, unsigned n_qubits) {
    check_qubits(n_qubits);
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (x.size() > dim)
        throw Error("TooLong", std::to_string(x.size()) + " samples do not fit in " + std::to_string(dim) + " amplitudes");
    const double norm = l2_norm(x);
    if (!(norm > 0.0) || !std::isfinite(norm)) throw Error("ZeroSignal", "signal norm must be positive and finite");
    EncodedSignal enc;
    enc.norm = norm;
    enc.original_len = x.size();
    enc.state.n_qubits = n_qubits;
    enc.state.amplitudes.assign(dim, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < x.size(); ++i) enc.state.amplitudes[i] = x[i] / norm;
    return enc;
}

RealVec amplitude_decode(const EncodedSignal& enc) {
    RealVec x(enc.original_len);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = enc.state.amplitudes[i].real() * enc.norm;
    return x;
}

QftCircuit build_qft_circuit(unsigned n) {
    check_qubits(n);
    QftCircuit c;
    c.n_qubits = n;
    for (unsigned j = 0; j < n; ++j) {
        c.gates.emplace_back(HGate{j});
        for (unsigned k = j + 1; k < n; ++k)
            c.gates.emplace_back(CPhaseGate{k, j, 2.0 * kPi / std::ldexp(1.0, static_cast<int>(k - j + 1))});
    }
    for (unsigned q = 0; q < n / 2; ++q) c.gates.emplace_back(SwapGate{q, n - 1 - q});
    return c;
}

QftCircuit inverse_circuit(const QftCircuit& circuit) {
    QftCircuit inv;
    inv.n_qubits = circuit.n_qubits;
    inv.gates.reserve(circuit.gates.size());
    for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
        Gate g = *it;
        if (auto* cp = std::get_if<CPhaseGate>(&g)) cp->angle = -cp->angle;
        inv.gates.push_back(g);
    }
    return inv;
}

StateVector apply_circuit(const StateVector& state, const QftCircuit& circuit) {
    Rng unused(0);
    return apply_circuit(state, circuit, 0.0, unused);
}

StateVector apply_circuit(const StateVector& state, const QftCircuit& circuit, const NoiseModel& noise) {
    Rng rng(noise.seed);
    return apply_circuit(state, circuit, noise.depolarizing_p, rng);
}

StateVector apply_circuit(const StateVector& state, const QftCircuit& circuit, double p, Rng& rng) {
    check_state(state, circuit.n_qubits);
    if (!(p >= 0.0 && p <= 1.0)) throw Error("InvalidSpec", "depolarizing probability must lie in [0, 1]");
    for (const Gate& g : circuit.gates) check_gate(g, circuit.n_qubits);

    StateVector out = state;
    const unsigned n = circuit.n_qubits;
    for (const Gate& g : circuit.gates) {
        apply_gate(out.amplitudes, n, g);
        if (p > 0.0 && uniform01(rng) < p) {
            const unsigned q = touched_qubit(g, rng);
            const auto which = static_cast<kernels::Pauli>(uniform_index(rng, 3));
            kernels::pauli(out.amplitudes, n, q, which);
        }
    }
    return out;
}

std::map<std::size_t, long long> measure_counts(const StateVector& state, int shots, std::uint64_t seed) {
    Rng rng(seed);
    return measure_counts(state, shots, rng);
}

std::map<std::size_t, long long> measure_counts(const StateVector& state, int shots, Rng& rng) {
    if (shots < 1) throw Error("InvalidShots", "shot count must be >= 1");
    const std::size_t dim = state.amplitudes.size();
    RealVec cdf(dim);
    double acc = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        acc += std::norm(state.amplitudes[i]);
        cdf[i] = acc;
    }
    // Last index with nonzero probability takes any rounding slack at the top.
    std::size_t last = dim;
    while (last > 0 && std::norm(state.amplitudes[last - 1]) == 0.0) --last;
    if (last == 0) throw Error("ZeroSignal", "state has no probability mass");

    std::map<std::size_t, long long> counts;
    for (int s = 0; s < shots; ++s) {
        const double u = uniform01(rng) * acc;
        auto idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        if (idx >= last) idx = last - 1;
        ++counts[idx];
    }
    return counts;
}

ComplexVec noisy_spectrum_estimate(const StateVector& state, const NoiseModel& noise) {
    Rng rng(noise.seed);
    return noisy_spectrum_estimate(state, noise.shots, rng);
}

ComplexVec noisy_spectrum_estimate(const StateVector& state, int shots, Rng& rng) {
    if (shots < 0) throw Error("InvalidShots", "shot count must be >= 0");
    if (shots == 0) return state.amplitudes;
    const auto counts = measure_counts(state, shots, rng);
    ComplexVec est(state.amplitudes.size(), cplx(0.0, 0.0));
    for (const auto& [idx, c] : counts) {
        const double mag = std::sqrt(static_cast<double>(c) / shots);
        const double phase = std::arg(state.amplitudes[idx]);
        est[idx] = std::polar(mag, phase);
    }
    return est;
}

std::vector<std::size_t> select_conjugate_peaks(const ComplexVec& spectrum, std::size_t peaks) {
    const std::size_t n = spectrum.size();
    // Representative k of each pair {k, (n-k) mod n}: k in [0, n/2].
    std::vector<std::size_t> reps(n / 2 + 1);
    std::iota(reps.begin(), reps.end(), std::size_t{0});
    auto pair_mag = [&](std::size_t k) {
        const std::size_t partner = (n - k) % n;
        double e = std::norm(spectrum[k]);
        if (partner != k) e += std::norm(spectrum[partner]);
        return e;
    };
    RealVec mag(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) mag[i] = pair_mag(reps[i]);
    std::stable_sort(reps.begin(), reps.end(), [&](std::size_t l, std::size_t r) { return mag[l] > mag[r]; });

    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < reps.size() && i < peaks; ++i) {
        const std::size_t k = reps[i];
        kept.push_back(k);
        const std::size_t partner = (n - k) % n;
        if (partner != k) kept.push_back(partner);
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

CodecResult qft_codec(const RealVec& x, const CodecConfig& cfg) {
    check_qubits(cfg.n_qubits);
    const std::size_t dim = std::size_t{1} << cfg.n_qubits;
    if (cfg.peaks < 1 || cfg.peaks > dim) throw Error("InvalidSpec", "peaks must lie in [1, 2^n]");
    if (cfg.noise.shots < 0) throw Error("InvalidShots", "shot count must be >= 0");

    const EncodedSignal enc = amplitude_encode(x, cfg.n_qubits);
    Rng rng(cfg.noise.seed);
    const QftCircuit qft = build_qft_circuit(cfg.n_qubits);
    const StateVector spec_state = apply_circuit(enc.state, qft, cfg.noise.depolarizing_p, rng);

    CodecResult out;
    out.spectrum = noisy_spectrum_estimate(spec_state, cfg.noise.shots, rng);
    out.retained = select_conjugate_peaks(out.spectrum, cfg.peaks);

    StateVector kept;
    kept.n_qubits = cfg.n_qubits;
    kept.amplitudes.assign(dim, cplx(0.0, 0.0));
    for (std::size_t k : out.retained) kept.amplitudes[k] = out.spectrum[k];
    const double kn = kept.norm();
    if (!(kn > 0.0)) throw Error("ZeroSignal", "retained spectrum carries no energy");
    for (cplx& a : kept.amplitudes) a /= kn;

    const StateVector time = apply_circuit(kept, inverse_circuit(qft));
    const bool noiseless = cfg.noise.depolarizing_p == 0.0 && cfg.noise.shots == 0;
    out.reconstructed.resize(enc.original_len);
    for (std::size_t i = 0; i < enc.original_len; ++i) {
        const cplx v = time.amplitudes[i];
        if (noiseless && std::abs(v.imag()) >= 1e-9)
            throw Error("InternalError", "imaginary residue " + std::to_string(v.imag()) + " at sample " + std::to_string(i));
        out.reconstructed[i] = v.real() * enc.norm;
    }
    out.snr_db = snr_db(x, out.reconstructed);
    return out;
}

double snr_db(const RealVec& reference, const RealVec& estimate) {
    if (reference.size() != estimate.size())
        throw Error("LengthMismatch", "reference has " + std::to_string(reference.size()) + " samples, estimate " +
                                          std::to_string(estimate.size()));
    double sig = 0.0;
    double err = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        sig += reference[i] * reference[i];
        const double d = reference[i] - estimate[i];
        err += d * d;
    }
    if (!(sig > 0.0)) throw Error("ZeroReference", "reference signal has zero energy");
    if (err == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(sig / err);
}

}  // namespace jdsp
