#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jdsp/common.hpp"
#include "jdsp/filter.hpp"

namespace jdsp {

enum class SpectrumNorm {
    UnnormalizedDft,  // X[k] = sum x[n] e^{-2 pi i nk/N}
    UnitaryQft,       // unit-norm QFT amplitudes; see quantum.hpp
};

struct Spectrum {
    ComplexVec bins;
    double sample_rate_hz = 1.0;
    SpectrumNorm normalization = SpectrumNorm::UnnormalizedDft;
    // Set for UnitaryQft spectra so synthesis can undo amplitude encoding.
    double scale = 1.0;
    std::size_t original_len = 0;
};

enum class WindowKind { Rectangular, Bartlett, Hann, Hamming, Blackman, Kaiser };

WindowKind window_kind_from_string(std::string_view name);
std::string_view to_string(WindowKind kind);

struct WindowSpec {
    WindowKind kind = WindowKind::Rectangular;
    int length = 1;
    double beta = 0.0;  // kaiser only
};

/// Symmetric windows (denominator N-1); N == 1 gives [1].
RealVec make_window(const WindowSpec& spec);

/// Iterative radix-2 FFT. Forward is unnormalized; inverse applies 1/N.
ComplexVec fft(const ComplexVec& x, bool inverse);
ComplexVec fft_real(const RealVec& x, std::size_t nfft);

template <typename T>
std::vector<T> zero_pad(const std::vector<T>& x, std::size_t target_len) {
    if (target_len < x.size() || !is_power_of_two(target_len))
        throw Error("InvalidLength", "zero_pad target must be a power of two >= input length");
    std::vector<T> out = x;
    out.resize(target_len, T{});
    return out;
}

/// P[k] = |FFT(w x, nfft)[k]|^2 / (N U), k = 0..nfft/2, U = mean(w^2).
RealVec periodogram(const Signal& x, const WindowSpec& window, std::size_t nfft);

/// Indices of the `count` largest local maxima (mag[i] >= both neighbours, a
/// plateau counts once at its left edge). Short of maxima, the largest
/// remaining bins fill in. Ties go to the lower index; result is ascending.
std::vector<std::size_t> pick_peaks(const RealVec& mag, std::size_t count);

Signal downsample(const Signal& x, int factor);
Signal upsample(const Signal& x, int factor);

/// Kaiser anti-alias lowpass at pi/M (A = 60 dB) followed by downsample.
Signal decimate(const Signal& x, int factor);
/// Upsample followed by a Kaiser anti-image lowpass at pi/L with gain L.
Signal interpolate(const Signal& x, int factor);

struct QmfBank {
    RealVec h0;

    static QmfBank haar();
    RealVec h1() const;  // (-1)^n h0[n]
    RealVec f0() const;  // h0
    RealVec f1() const;  // -h1
};

struct Subbands {
    Signal low;
    Signal high;
};

Subbands qmf_analysis(const QmfBank& bank, const Signal& x);
Signal qmf_synthesis(const QmfBank& bank, const Signal& low, const Signal& high);

}  // namespace jdsp
