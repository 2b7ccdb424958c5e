#include "jdsp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "jdsp/design.hpp"

namespace jdsp {

WindowKind window_kind_from_string(std::string_view name) {
    if (name == "rectangular") return WindowKind::Rectangular;
    if (name == "bartlett") return WindowKind::Bartlett;
    if (name == "hann") return WindowKind::Hann;
    if (name == "hamming") return WindowKind::Hamming;
    if (name == "blackman") return WindowKind::Blackman;
    if (name == "kaiser") return WindowKind::Kaiser;
    throw Error("InvalidSpec", "unknown window '" + std::string(name) + "'");
}

std::string_view to_string(WindowKind kind) {
    switch (kind) {
        case WindowKind::Rectangular: return "rectangular";
        case WindowKind::Bartlett: return "bartlett";
        case WindowKind::Hann: return "hann";
        case WindowKind::Hamming: return "hamming";
        case WindowKind::Blackman: return "blackman";
        case WindowKind::Kaiser: return "kaiser";
    }
    return "?";
}

RealVec make_window(const WindowSpec& spec) {
    if (spec.length < 1) throw Error("InvalidSpec", "window length must be >= 1");
    if (spec.kind == WindowKind::Kaiser && !(spec.beta >= 0.0 && std::isfinite(spec.beta)))
        throw Error("InvalidSpec", "kaiser beta must be finite and >= 0");
    const auto n = static_cast<std::size_t>(spec.length);
    RealVec w(n, 1.0);
    if (n == 1) return w;
    const double m = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i);
        const double c1 = std::cos(2.0 * kPi * x / m);
        switch (spec.kind) {
            case WindowKind::Rectangular: break;
            case WindowKind::Bartlett: w[i] = 1.0 - std::abs(2.0 * x / m - 1.0); break;
            case WindowKind::Hann: w[i] = 0.5 - 0.5 * c1; break;
            case WindowKind::Hamming: w[i] = 0.54 - 0.46 * c1; break;
            case WindowKind::Blackman: w[i] = 0.42 - 0.5 * c1 + 0.08 * std::cos(4.0 * kPi * x / m); break;
            case WindowKind::Kaiser: break;
        }
    }
    if (spec.kind == WindowKind::Kaiser) return kaiser_window(spec.length - 1, spec.beta);
    return w;
}

ComplexVec fft(const ComplexVec& x, bool inverse) {
    const std::size_t n = x.size();
    if (!is_power_of_two(n)) throw Error("NotPowerOfTwo", "FFT length " + std::to_string(n) + " is not a power of two");
    ComplexVec a = x;

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * kPi / static_cast<double>(len);
        const std::size_t half = len / 2;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                // Twiddles from polar() per index rather than by repeated
                // multiplication, so error does not accumulate along the stage.
                const cplx w = std::polar(1.0, ang * static_cast<double>(k));
                const cplx u = a[i + k];
                const cplx v = a[i + k + half] * w;
                a[i + k] = u + v;
                a[i + k + half] = u - v;
            }
        }
    }
    if (inverse) {
        const double s = 1.0 / static_cast<double>(n);
        for (cplx& v : a) v *= s;
    }
    return a;
}

ComplexVec fft_real(const RealVec& x, std::size_t nfft) {
    if (nfft < x.size()) throw Error("InvalidLength", "nfft shorter than input");
    ComplexVec c(nfft, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < x.size(); ++i) c[i] = x[i];
    return fft(c, false);
}

RealVec periodogram(const Signal& x, const WindowSpec& window, std::size_t nfft) {
    const std::size_t n = x.size();
    if (n == 0) throw Error("InvalidSpec", "periodogram of an empty signal");
    if (!is_power_of_two(nfft) || nfft < n) throw Error("InvalidSpec", "nfft must be a power of two >= signal length");
    WindowSpec ws = window;
    ws.length = static_cast<int>(n);
    const RealVec w = make_window(ws);
    double u = 0.0;
    for (double v : w) u += v * v;
    u /= static_cast<double>(n);
    if (u == 0.0) throw Error("InvalidSpec", "window has zero power");

    RealVec xw(n);
    for (std::size_t i = 0; i < n; ++i) xw[i] = w[i] * x.samples[i];
    const ComplexVec spec = fft_real(xw, nfft);
    RealVec p(nfft / 2 + 1);
    const double denom = static_cast<double>(n) * u;
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::norm(spec[k]) / denom;
    return p;
}

std::vector<std::size_t> pick_peaks(const RealVec& mag, std::size_t count) {
    if (mag.empty()) throw Error("EmptyInput", "pick_peaks on an empty array");
    if (count < 1) throw Error("InvalidSpec", "peak count must be >= 1");
    const std::size_t n = mag.size();

    std::vector<std::size_t> maxima;
    for (std::size_t s = 0; s < n;) {
        std::size_t e = s;
        while (e + 1 < n && mag[e + 1] == mag[s]) ++e;
        const bool left_ok = s == 0 || mag[s - 1] < mag[s];
        const bool right_ok = e + 1 == n || mag[e + 1] < mag[s];
        if (left_ok && right_ok) maxima.push_back(s);
        s = e + 1;
    }

    auto by_value = [&](std::size_t i, std::size_t j) { return mag[i] != mag[j] ? mag[i] > mag[j] : i < j; };
    std::stable_sort(maxima.begin(), maxima.end(), by_value);
    const std::size_t want = std::min(count, n);
    std::vector<std::size_t> out(maxima.begin(), maxima.begin() + static_cast<std::ptrdiff_t>(std::min(want, maxima.size())));

    if (out.size() < want) {
        std::vector<bool> taken(n, false);
        for (std::size_t i : out) taken[i] = true;
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < n; ++i)
            if (!taken[i]) rest.push_back(i);
        std::stable_sort(rest.begin(), rest.end(), by_value);
        for (std::size_t i = 0; out.size() < want; ++i) out.push_back(rest[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Signal downsample(const Signal& x, int factor) {
    if (factor < 1) throw Error("InvalidFactor", "downsampling factor must be >= 1");
    const auto m = static_cast<std::size_t>(factor);
    Signal y;
    y.sample_rate_hz = x.sample_rate_hz / factor;
    for (std::size_t i = 0; i < x.size(); i += m) y.samples.push_back(x.samples[i]);
    return y;
}

Signal upsample(const Signal& x, int factor) {
    if (factor < 1) throw Error("InvalidFactor", "upsampling factor must be >= 1");
    const auto l = static_cast<std::size_t>(factor);
    Signal y;
    y.sample_rate_hz = x.sample_rate_hz * factor;
    y.samples.assign(x.size() * l, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) y.samples[i * l] = x.samples[i];
    return y;
}

namespace {

TransferFunction multirate_lowpass(int factor) {
    const double cutoff = kPi / factor;
    const KaiserParams kp = kaiser_params(60.0, 0.2 * kPi / factor);
    return design_kaiser_lowpass(cutoff, kp.order, kp.beta);
}

}  // namespace

Signal decimate(const Signal& x, int factor) {
    if (factor < 1) throw Error("InvalidFactor", "decimation factor must be >= 1");
    if (factor == 1) return x;
    return downsample(filter_signal(multirate_lowpass(factor), x), factor);
}

Signal interpolate(const Signal& x, int factor) {
    if (factor < 1) throw Error("InvalidFactor", "interpolation factor must be >= 1");
    if (factor == 1) return x;
    TransferFunction lp = multirate_lowpass(factor);
    for (double& v : lp.b) v *= factor;
    return filter_signal(lp, upsample(x, factor));
}

QmfBank QmfBank::haar() {
    const double r = 1.0 / std::sqrt(2.0);
    return QmfBank{{r, r}};
}

RealVec QmfBank::h1() const {
    RealVec h = h0;
    for (std::size_t n = 1; n < h.size(); n += 2) h[n] = -h[n];
    return h;
}

RealVec QmfBank::f0() const { return h0; }

RealVec QmfBank::f1() const {
    RealVec h = h1();
    for (double& v : h) v = -v;
    return h;
}

Subbands qmf_analysis(const QmfBank& bank, const Signal& x) {
    if (bank.h0.empty()) throw Error("InvalidSpec", "QMF prototype h0 is empty");
    const TransferFunction lo{bank.h0, {1.0}};
    const TransferFunction hi{bank.h1(), {1.0}};
    return {downsample(filter_signal(lo, x), 2), downsample(filter_signal(hi, x), 2)};
}

Signal qmf_synthesis(const QmfBank& bank, const Signal& low, const Signal& high) {
    if (bank.h0.empty()) throw Error("InvalidSpec", "QMF prototype h0 is empty");
    if (low.size() != high.size()) throw Error("LengthMismatch", "subbands differ in length");
    const TransferFunction g0{bank.f0(), {1.0}};
    const TransferFunction g1{bank.f1(), {1.0}};
    Signal a = filter_signal(g0, upsample(low, 2));
    const Signal b = filter_signal(g1, upsample(high, 2));
    for (std::size_t i = 0; i < a.size(); ++i) a.samples[i] += b.samples[i];
    return a;
}

}  // namespace jdsp
