#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jdsp/common.hpp"
#include "jdsp/filter.hpp"

namespace jdsp {

enum class BandKind { Lowpass, Highpass };

BandKind band_kind_from_string(std::string_view name);
std::string_view to_string(BandKind kind);

/// Edges in rad/sample, both in (0, pi).
struct FirSpec {
    double passband_edge = 0.2 * kPi;
    double stopband_edge = 0.3 * kPi;
    double stopband_atten_db = 60.0;
    BandKind kind = BandKind::Lowpass;
};

struct KaiserParams {
    double beta = 0.0;
    int order = 1;  // taps = order + 1
};

KaiserParams kaiser_params(double atten_db, double transition_width);

/// Modified Bessel function of the first kind, order zero (power series).
double bessel_i0(double x);

RealVec kaiser_window(int order, double beta);

TransferFunction design_fir_kaiser(const FirSpec& spec);

/// Windowed-sinc lowpass with explicit cutoff/order/beta (used by the
/// multirate helpers, which size the design from a target cutoff).
TransferFunction design_kaiser_lowpass(double cutoff, int order, double beta);

/// Type-I frequency sampling. `desired_mag` has length N (odd); entries
/// 0..(N-1)/2 are used, the upper half is mirrored.
TransferFunction design_fir_freq_sampling(const RealVec& desired_mag);

struct Band {
    double lo = 0.0;
    double hi = kPi;
};

struct EquirippleSpec {
    int numtaps = 15;
    std::vector<Band> bands;
    RealVec desired;
    RealVec weight;
};

struct EquirippleResult {
    TransferFunction tf;
    double delta = 0.0;
    RealVec extrema;  // rad/sample
    int iterations = 0;
    bool converged = false;
};

/// Thrown when the exchange fails to settle; carries the last iterate.
class EquirippleNoConvergence : public Error {
public:
    EquirippleNoConvergence(const std::string& detail, EquirippleResult last)
        : Error("NoConvergence", detail), last_iterate(std::move(last)) {}
    EquirippleResult last_iterate;
};

/// Parks-McClellan (Remez exchange) design of a type-I linear-phase FIR.
EquirippleResult design_fir_equiripple(const EquirippleSpec& spec);

/// Weighted error W(w) (D(w) - A(w)) of a type-I design at one frequency,
/// with D/W taken from the band containing w. Used for verification.
double equiripple_weighted_error(const EquirippleSpec& spec, const TransferFunction& tf, double omega);

enum class IirFamily { Butterworth, Chebyshev1, Chebyshev2, Elliptic };

IirFamily iir_family_from_string(std::string_view name);
std::string_view to_string(IirFamily family);

struct IirSpec {
    IirFamily family = IirFamily::Butterworth;
    BandKind kind = BandKind::Lowpass;
    int order = 2;
    double cutoff = 0.5 * kPi;        // rad/sample; passband edge (stopband edge for chebyshev2)
    double passband_ripple_db = 1.0;  // chebyshev1, elliptic
    double stopband_atten_db = 40.0;  // chebyshev2, elliptic
};

/// Analog prototype at unit edge frequency: H(s) = gain prod(s - z) / prod(s - p).
struct AnalogPrototype {
    ComplexVec zeros;
    ComplexVec poles;
    double gain = 1.0;
    double dc_gain = 1.0;           // |H(0)| after normalization
    double stopband_edge = 0.0;     // elliptic: 1/k, others 0
};

AnalogPrototype analog_prototype(const IirSpec& spec);

/// |H(j Omega)| of an analog zero/pole/gain model.
double analog_magnitude(const AnalogPrototype& proto, double omega);

TransferFunction design_iir(const IirSpec& spec);

/// Digital stopband edge of an elliptic design (rad/sample), via the
/// degree equation. Lowpass: > cutoff; highpass: < cutoff.
double elliptic_stopband_edge(const IirSpec& spec);

}  // namespace jdsp
