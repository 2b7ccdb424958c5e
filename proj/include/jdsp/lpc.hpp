#pragma once

#include <vector>

#include "jdsp/common.hpp"
#include "jdsp/spectral.hpp"

namespace jdsp {

/// Prediction polynomial A(z) = 1 + a[1] z^-1 + ... + a[p] z^-p.
struct LpcModel {
    RealVec a{1.0};
    RealVec k;  // reflection coefficients k_1..k_p
    double error = 0.0;
    int order() const { return static_cast<int>(a.size()) - 1; }
};

struct Formant {
    double frequency_hz = 0.0;
    double bandwidth_hz = 0.0;
};

struct FrameSpec {
    int frame_len = 256;
    int hop = 256;
    WindowSpec window{WindowKind::Rectangular, 256, 0.0};
};

/// r[m] = sum_{n=0}^{N-1-m} x[n] x[n+m], m = 0..max_lag (unnormalized).
RealVec autocorrelation(const RealVec& x, int max_lag);

LpcModel levinson_durbin(const RealVec& r, int order);

/// S(w_k) = gain / |A(e^{jw_k})| on the frequency_response grid.
RealVec lpc_envelope(const LpcModel& model, double gain, int n_points);
RealVec lpc_envelope(const LpcModel& model, int n_points);  // gain = sqrt(E)

/// Resonances from the roots of A(z): Im > 0, |root| < 1, bandwidth < 500 Hz,
/// 90 Hz < f < fs/2 - 90 Hz; ascending by frequency.
std::vector<Formant> formants_from_lpc(const LpcModel& model, double sample_rate_hz);

double formant_bandwidth(double pole_radius, double sample_rate_hz);
double pole_radius_from_bandwidth(double bandwidth_hz, double sample_rate_hz);

/// Windowed frames starting at 0, hop, 2 hop, ...
std::vector<RealVec> frame_signal(const Signal& x, const FrameSpec& spec);

/// Fits an order-p model to a windowed frame. Silent frames give A(z) = 1.
LpcModel fit_frame(const RealVec& frame, int order);

struct LpcCodecResult {
    Signal reconstructed;
    Signal residual;
    std::vector<LpcModel> models;
};

/// Residual-excited analysis-synthesis over non-overlapping frames with
/// filter state carried across frame boundaries.
LpcCodecResult lpc_analysis_synthesis(const Signal& x, int order, const FrameSpec& frames);

}  // namespace jdsp
