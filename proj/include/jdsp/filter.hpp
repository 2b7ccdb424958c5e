#pragma once

#include <string>

#include "jdsp/common.hpp"

namespace jdsp {

/// H(z) = B(z)/A(z) with b[k], a[k] multiplying z^-k and a[0] == 1.
struct TransferFunction {
    RealVec b{1.0};
    RealVec a{1.0};

    /// Throws InvalidTransferFunction unless a[0] == 1, both non-empty, all finite.
    void validate() const;

    /// Divides through by a[0]; throws if a[0] == 0.
    static TransferFunction normalized(RealVec b, RealVec a);
};

struct PoleZeroSet {
    ComplexVec zeros;
    ComplexVec poles;
    double gain = 1.0;
};

struct FrequencyResponse {
    RealVec omega;  // rad/sample on [0, pi]
    ComplexVec h;
};

/// Direct-form II transposed, zero initial state; output length == input length.
Signal filter_signal(const TransferFunction& tf, const Signal& x);
RealVec filter_samples(const TransferFunction& tf, const RealVec& x);

Signal impulse_response(const TransferFunction& tf, int length);

FrequencyResponse frequency_response(const TransferFunction& tf, int n_points);

/// H(e^{jw}) at arbitrary frequencies (no grid or pole checks).
ComplexVec evaluate_response(const TransferFunction& tf, const RealVec& omega);

/// Roots of poly[0] z^n + poly[1] z^{n-1} + ... + poly[n] (Aberth-Ehrlich).
ComplexVec find_roots(const RealVec& poly);

/// gain * prod (z - r), highest power first. Throws NonConjugateRoots when the
/// set is not closed under conjugation within 1e-9.
RealVec expand_roots(const ComplexVec& roots, double gain);

PoleZeroSet pole_zero(const TransferFunction& tf);

struct StabilityReport {
    bool stable = true;
    double max_pole_magnitude = 0.0;
};

StabilityReport is_stable(const TransferFunction& tf);

}  // namespace jdsp
