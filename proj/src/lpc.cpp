#include "jdsp/lpc.hpp"

#include <algorithm>
#include <cmath>

#include "jdsp/filter.hpp"

namespace jdsp {

RealVec autocorrelation(const RealVec& x, int max_lag) {
    if (max_lag < 0 || static_cast<std::size_t>(max_lag) >= x.size())
        throw Error("InvalidLag", "max lag must satisfy 0 <= p < len(x)");
    const std::size_t n = x.size();
    RealVec r(static_cast<std::size_t>(max_lag) + 1, 0.0);
    for (std::size_t m = 0; m < r.size(); ++m) {
        double s = 0.0;
        for (std::size_t i = 0; i + m < n; ++i) s += x[i] * x[i + m];
        r[m] = s;
    }
    return r;
}

LpcModel levinson_durbin(const RealVec& r, int order) {
    if (order < 0) throw Error("InvalidSpec", "order must be >= 0");
    if (r.size() <= static_cast<std::size_t>(order)) throw Error("InvalidLag", "need lags 0..p");
    if (!(r[0] > 0.0)) throw Error("SingularError", "r[0] must be positive");

    const auto p = static_cast<std::size_t>(order);
    LpcModel m;
    m.a.assign(p + 1, 0.0);
    m.a[0] = 1.0;
    m.k.assign(p, 0.0);
    double e = r[0];
    RealVec prev(p + 1, 0.0);
    for (std::size_t i = 1; i <= p; ++i) {
        double acc = r[i];
        for (std::size_t j = 1; j < i; ++j) acc += m.a[j] * r[i - j];
        const double k = acc / e;
        prev = m.a;
        for (std::size_t j = 1; j < i; ++j) m.a[j] = prev[j] - k * prev[i - j];
        m.a[i] = -k;
        m.k[i - 1] = k;
        e *= (1.0 - k) * (1.0 + k);
        if (e <= 1e-300)
            throw Error("SingularError", "prediction error vanished at order " + std::to_string(i));
    }
    m.error = e;
    return m;
}

RealVec lpc_envelope(const LpcModel& model, double gain, int n_points) {
    if (!(gain > 0.0)) throw Error("InvalidSpec", "envelope gain must be > 0");
    const TransferFunction tf{{gain}, model.a};
    const FrequencyResponse fr = frequency_response(tf, n_points);
    RealVec s(fr.h.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::abs(fr.h[i]);
    return s;
}

RealVec lpc_envelope(const LpcModel& model, int n_points) {
    return lpc_envelope(model, std::sqrt(model.error), n_points);
}

double formant_bandwidth(double pole_radius, double sample_rate_hz) {
    return -(sample_rate_hz / kPi) * std::log(pole_radius);
}

double pole_radius_from_bandwidth(double bandwidth_hz, double sample_rate_hz) {
    return std::exp(-kPi * bandwidth_hz / sample_rate_hz);
}

std::vector<Formant> formants_from_lpc(const LpcModel& model, double sample_rate_hz) {
    std::vector<Formant> out;
    if (model.a.size() < 2) return out;
    for (const cplx& root : find_roots(model.a)) {
        const double radius = std::abs(root);
        if (!(root.imag() > 0.0) || !(radius < 1.0)) continue;
        const double f = std::arg(root) * sample_rate_hz / (2.0 * kPi);
        const double bw = formant_bandwidth(radius, sample_rate_hz);
        if (bw < 500.0 && f > 90.0 && f < sample_rate_hz / 2.0 - 90.0) out.push_back({f, bw});
    }
    std::sort(out.begin(), out.end(), [](const Formant& l, const Formant& r) { return l.frequency_hz < r.frequency_hz; });
    return out;
}

std::vector<RealVec> frame_signal(const Signal& x, const FrameSpec& spec) {
    if (spec.frame_len < 1 || static_cast<std::size_t>(spec.frame_len) > x.size())
        throw Error("InvalidSpec", "frame length must lie in [1, len(x)]");
    if (spec.hop < 1 || spec.hop > spec.frame_len) throw Error("InvalidSpec", "hop must lie in [1, frame_len]");
    WindowSpec ws = spec.window;
    ws.length = spec.frame_len;
    const RealVec w = make_window(ws);
    const auto len = static_cast<std::size_t>(spec.frame_len);
    const auto hop = static_cast<std::size_t>(spec.hop);
    const std::size_t count = (x.size() - len) / hop + 1;
    std::vector<RealVec> frames(count, RealVec(len));
    for (std::size_t f = 0; f < count; ++f)
        for (std::size_t i = 0; i < len; ++i) frames[f][i] = x.samples[f * hop + i] * w[i];
    return frames;
}

LpcModel fit_frame(const RealVec& frame, int order) {
    const RealVec r = autocorrelation(frame, order);
    if (r[0] == 0.0) {
        LpcModel silent;
        silent.a.assign(static_cast<std::size_t>(order) + 1, 0.0);
        silent.a[0] = 1.0;
        silent.k.assign(static_cast<std::size_t>(order), 0.0);
        return silent;
    }
    return levinson_durbin(r, order);
}

LpcCodecResult lpc_analysis_synthesis(const Signal& x, int order, const FrameSpec& frames) {
    if (frames.hop != frames.frame_len) throw Error("InvalidSpec", "analysis-synthesis needs hop == frame_len");
    if (order < 0) throw Error("InvalidSpec", "order must be >= 0");
    if (static_cast<std::size_t>(order) >= static_cast<std::size_t>(frames.frame_len))
        throw Error("InvalidSpec", "order must be below the frame length");
    const std::vector<RealVec> windowed = frame_signal(x, frames);
    const auto len = static_cast<std::size_t>(frames.frame_len);
    const auto p = static_cast<std::size_t>(order);

    LpcCodecResult out;
    out.residual = Signal{RealVec(x.size(), 0.0), x.sample_rate_hz};
    out.reconstructed = Signal{RealVec(x.size(), 0.0), x.sample_rate_hz};
    const RealVec& xs = x.samples;
    RealVec& e = out.residual.samples;
    RealVec& y = out.reconstructed.samples;

    for (std::size_t f = 0; f < windowed.size(); ++f) {
        out.models.push_back(fit_frame(windowed[f], order));
        const RealVec& a = out.models.back().a;
        const std::size_t begin = f * len;
        // The final model also covers the tail shorter than a frame.
        const std::size_t end = f + 1 == windowed.size() ? xs.size() : begin + len;
        for (std::size_t n = begin; n < end; ++n) {
            double en = xs[n];
            for (std::size_t j = 1; j <= p && j <= n; ++j) en += a[j] * xs[n - j];
            e[n] = en;
            double yn = en;
            for (std::size_t j = 1; j <= p && j <= n; ++j) yn -= a[j] * y[n - j];
            y[n] = yn;
        }
    }
    return out;
}

}  // namespace jdsp
