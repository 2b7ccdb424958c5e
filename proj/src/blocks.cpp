#include "blocks.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>

#include "jdsp/classify.hpp"
#include "jdsp/design.hpp"
#include "jdsp/filter.hpp"
#include "jdsp/lpc.hpp"
#include "jdsp/quantum.hpp"
#include "jdsp/signals_io.hpp"
#include "jdsp/spectral.hpp"

namespace jdsp::blocks {

namespace {

constexpr double kMaxSeries = 4194304.0;  // 2^22

ParamSpec int_param(std::string name, long long def, double lo, double hi, std::string doc = {}) {
    return {std::move(name), ParamKind::Int, def, lo, hi, {}, std::move(doc)};
}

ParamSpec real_param(std::string name, double def, std::optional<double> lo, std::optional<double> hi,
                     std::string doc = {}) {
    return {std::move(name), ParamKind::Real, def, lo, hi, {}, std::move(doc)};
}

ParamSpec enum_param(std::string name, std::string def, std::vector<std::string> values, std::string doc = {}) {
    return {std::move(name), ParamKind::Enum, std::move(def), std::nullopt, std::nullopt, std::move(values), std::move(doc)};
}

ParamSpec string_param(std::string name, std::string def, std::string doc = {}) {
    return {std::move(name), ParamKind::String, std::move(def), std::nullopt, std::nullopt, {}, std::move(doc)};
}

ParamSpec array_param(std::string name, RealVec def, double min_len, double max_len, std::string doc = {}) {
    return {std::move(name), ParamKind::RealArray, std::move(def), min_len, max_len, {}, std::move(doc)};
}

PortSpec in(std::string name, ValueKind kind, bool required = true) { return {std::move(name), kind, required}; }
PortSpec out(std::string name, ValueKind kind) { return {std::move(name), kind, true}; }

const std::vector<std::string> kWindowNames{"rectangular", "bartlett", "hann", "hamming", "blackman", "kaiser"};

int as_int(long long v) { return static_cast<int>(v); }

void check_rates(const Signal& a, const Signal& b) {
    if (std::abs(a.sample_rate_hz - b.sample_rate_hz) > 1e-9 * std::max(a.sample_rate_hz, b.sample_rate_hz))
        throw Error("RateMismatch", "inputs have different sample rates");
}

std::size_t resolve_nfft(long long requested, std::size_t len) {
    if (requested == 0) return next_power_of_two(std::max<std::size_t>(len, 1));
    return static_cast<std::size_t>(requested);
}

FeatureMatrix table(std::vector<std::string> columns, std::string layout) {
    FeatureMatrix m;
    m.cols = columns.size();
    m.column_names = std::move(columns);
    m.layout = std::move(layout);
    return m;
}

double to_db(double mag) { return mag > 0.0 ? 20.0 * std::log10(mag) : -std::numeric_limits<double>::infinity(); }

// ---------------------------------------------------------------- sources

OutputBundle run_signal_generator(const Context& c) {
    GeneratorSpec spec;
    spec.kind = wave_kind_from_string(c.text("kind"));
    spec.freq_hz = c.real("freq_hz");
    spec.amplitude = c.real("amplitude");
    spec.length = as_int(c.integer("length"));
    spec.sample_rate_hz = c.real("sample_rate_hz");
    spec.phase_rad = c.real("phase_rad");
    spec.dtmf_digit = c.text("dtmf_digit").at(0);
    return {{"out", generate_signal(spec, c.rng)}};
}

OutputBundle run_wav_reader(const Context& c) {
    const std::string& path = c.text("path");
    const std::string& data = c.text("data_base64");
    if (path.empty() == data.empty()) throw Error("InvalidSpec", "set exactly one of 'path' and 'data_base64'");
    std::vector<std::uint8_t> bytes;
    if (!path.empty()) {
        if (!c.options.allow_file_access) throw Error("AccessDenied", "file access is disabled for this run");
        std::ifstream f(path, std::ios::binary);
        if (!f) throw Error("FileNotFound", "cannot open '" + path + "'");
        bytes.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    } else {
        bytes = base64_decode(data);
    }
    return {{"out", read_wav(bytes)}};
}

// ---------------------------------------------------------------- arithmetic

OutputBundle run_adder(const Context& c) {
    const Signal& a = c.input<Signal>("a");
    const Signal& b = c.input<Signal>("b");
    check_rates(a, b);
    const double ga = c.real("gain_a");
    const double gb = c.real("gain_b");
    Signal y{RealVec(std::max(a.size(), b.size()), 0.0), a.sample_rate_hz};
    for (std::size_t i = 0; i < a.size(); ++i) y.samples[i] += ga * a.samples[i];
    for (std::size_t i = 0; i < b.size(); ++i) y.samples[i] += gb * b.samples[i];
    return {{"out", y}};
}

OutputBundle run_add_noise(const Context& c) {
    return {{"out", add_noise_snr(c.input<Signal>("in"), c.real("snr_db"), c.rng)}};
}

OutputBundle run_snr_meter(const Context& c) {
    return {{"snr_db", snr_db(c.input<Signal>("reference").samples, c.input<Signal>("estimate").samples)}};
}

// ---------------------------------------------------------------- filters

TransferFunction designer_tf(const Context& c) {
    const std::string& method = c.text("method");
    const BandKind kind = band_kind_from_string(c.text("kind"));
    if (method == "kaiser") {
        FirSpec spec;
        spec.passband_edge = c.real("passband_edge");
        spec.stopband_edge = c.real("stopband_edge");
        spec.stopband_atten_db = c.real("stopband_atten_db");
        spec.kind = kind;
        return design_fir_kaiser(spec);
    }
    if (method == "sampling") return design_fir_freq_sampling(c.array("desired"));
    if (method == "equiripple") {
        const RealVec& edges = c.array("band_edges");
        const RealVec& desired = c.array("band_desired");
        const RealVec& weight = c.array("band_weight");
        if (edges.size() % 2 != 0 || edges.size() / 2 != desired.size() || desired.size() != weight.size())
            throw Error("InvalidSpec", "band_edges must hold two values per entry of band_desired and band_weight");
        EquirippleSpec spec;
        spec.numtaps = as_int(c.integer("numtaps"));
        for (std::size_t i = 0; i < desired.size(); ++i) spec.bands.push_back({edges[2 * i], edges[2 * i + 1]});
        spec.desired = desired;
        spec.weight = weight;
        return design_fir_equiripple(spec).tf;
    }
    IirSpec spec;
    spec.family = iir_family_from_string(method);
    spec.kind = kind;
    spec.order = as_int(c.integer("order"));
    spec.cutoff = c.real("cutoff");
    spec.passband_ripple_db = c.real("passband_ripple_db");
    spec.stopband_atten_db = c.real("stopband_atten_db");
    return design_iir(spec);
}

OutputBundle run_filter_designer(const Context& c) { return {{"tf", designer_tf(c)}}; }

OutputBundle run_fir_iir_filter(const Context& c) {
    const TransferFunction* wired = c.optional_input<TransferFunction>("tf");
    const TransferFunction tf = wired ? *wired : TransferFunction::normalized(c.array("b"), c.array("a"));
    if (c.integer("halt_on_unstable") != 0) {
        const StabilityReport s = is_stable(tf);
        if (!s.stable)
            throw Error("UnstableFilter", "max pole magnitude " + format_real(s.max_pole_magnitude) + " >= 1");
    }
    return {{"out", filter_signal(tf, c.input<Signal>("in"))}, {"tf", tf}};
}

OutputBundle run_frequency_response(const Context& c) {
    const FrequencyResponse fr = frequency_response(c.input<TransferFunction>("tf"), as_int(c.integer("n_points")));
    FeatureMatrix m = table({"omega", "re", "im", "mag", "mag_db", "phase"}, "response");
    for (std::size_t i = 0; i < fr.omega.size(); ++i) {
        const cplx h = fr.h[i];
        m.add_row({fr.omega[i], h.real(), h.imag(), std::abs(h), to_db(std::abs(h)), std::arg(h)});
    }
    return {{"out", m}};
}

OutputBundle run_pole_zero(const Context& c) {
    const TransferFunction& tf = c.input<TransferFunction>("tf");
    const PoleZeroSet pz = pole_zero(tf);
    FeatureMatrix m = table({"re", "im"}, "pole_zero");
    m.class_names = {"pole", "zero"};
    for (const cplx& p : pz.poles) {
        m.add_row({p.real(), p.imag()});
        m.labels.push_back(0);
    }
    for (const cplx& z : pz.zeros) {
        m.add_row({z.real(), z.imag()});
        m.labels.push_back(1);
    }
    return {{"out", m}, {"max_pole_magnitude", is_stable(tf).max_pole_magnitude}};
}

OutputBundle run_impulse_response(const Context& c) {
    Signal h = impulse_response(c.input<TransferFunction>("tf"), as_int(c.integer("length")));
    h.sample_rate_hz = c.real("sample_rate_hz");
    return {{"out", h}};
}

// ---------------------------------------------------------------- spectral

WindowSpec window_from(const Context& c, int length) {
    return {window_kind_from_string(c.text("window")), length, c.real("beta")};
}

OutputBundle run_window(const Context& c) {
    const Signal& x = c.input<Signal>("in");
    if (x.size() == 0) throw Error("EmptyInput", "cannot window an empty signal");
    const RealVec w = make_window(window_from(c, static_cast<int>(x.size())));
    Signal y = x;
    for (std::size_t i = 0; i < y.size(); ++i) y.samples[i] *= w[i];
    return {{"out", y}};
}

OutputBundle run_fft(const Context& c) {
    const Signal& x = c.input<Signal>("in");
    Spectrum s;
    s.bins = fft_real(x.samples, resolve_nfft(c.integer("nfft"), x.size()));
    s.sample_rate_hz = x.sample_rate_hz;
    s.original_len = x.size();
    return {{"out", s}};
}

OutputBundle run_ifft(const Context& c) {
    const Spectrum& s = c.input<Spectrum>("in");
    if (s.normalization != SpectrumNorm::UnnormalizedDft)
        throw Error("InvalidInput", "Ifft expects a DFT spectrum; use Iqft for QFT spectra");
    const ComplexVec t = fft(s.bins, true);
    const std::size_t len = s.original_len == 0 ? t.size() : std::min(s.original_len, t.size());
    Signal y{RealVec(len), s.sample_rate_hz};
    for (std::size_t i = 0; i < len; ++i) y.samples[i] = t[i].real();
    return {{"out", y}};
}

OutputBundle run_periodogram(const Context& c) {
    const Signal& x = c.input<Signal>("in");
    const std::size_t nfft = resolve_nfft(c.integer("nfft"), x.size());
    const RealVec p = periodogram(x, window_from(c, static_cast<int>(x.size())), nfft);
    FeatureMatrix m = table({"freq_hz", "power", "power_db"}, "psd");
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double f = static_cast<double>(k) * x.sample_rate_hz / static_cast<double>(nfft);
        m.add_row({f, p[k], p[k] > 0.0 ? 10.0 * std::log10(p[k]) : -std::numeric_limits<double>::infinity()});
    }
    return {{"out", m}};
}

OutputBundle run_peak_picker(const Context& c) {
    const Spectrum& s = c.input<Spectrum>("in");
    if (s.bins.empty()) throw Error("EmptyInput", "spectrum has no bins");
    const auto count = static_cast<std::size_t>(c.integer("peaks"));
    std::vector<std::size_t> keep;
    if (c.text("pairing") == "conjugate") {
        keep = select_conjugate_peaks(s.bins, count);
    } else {
        RealVec mag(s.bins.size());
        for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(s.bins[i]);
        keep = pick_peaks(mag, std::min(count, mag.size()));
        std::sort(keep.begin(), keep.end());
    }
    Spectrum y = s;
    std::fill(y.bins.begin(), y.bins.end(), cplx(0.0, 0.0));
    LabelVector bins;
    for (std::size_t k : keep) {
        y.bins[k] = s.bins[k];
        bins.push_back(static_cast<int>(k));
    }
    return {{"out", y}, {"bins", bins}};
}

OutputBundle run_downsample(const Context& c) { return {{"out", downsample(c.input<Signal>("in"), as_int(c.integer("factor")))}}; }
OutputBundle run_upsample(const Context& c) { return {{"out", upsample(c.input<Signal>("in"), as_int(c.integer("factor")))}}; }
OutputBundle run_decimate(const Context& c) { return {{"out", decimate(c.input<Signal>("in"), as_int(c.integer("factor")))}}; }
OutputBundle run_interpolate(const Context& c) {
    return {{"out", interpolate(c.input<Signal>("in"), as_int(c.integer("factor")))}};
}

OutputBundle run_qmf_analysis(const Context& c) {
    const Subbands sb = qmf_analysis(QmfBank{c.array("h0")}, c.input<Signal>("in"));
    return {{"low", sb.low}, {"high", sb.high}};
}

OutputBundle run_qmf_synthesis(const Context& c) {
    return {{"out", qmf_synthesis(QmfBank{c.array("h0")}, c.input<Signal>("low"), c.input<Signal>("high"))}};
}

// ---------------------------------------------------------------- speech and learning

OutputBundle run_autocorrelation(const Context& c) {
    const RealVec r = autocorrelation(c.input<Signal>("in").samples, as_int(c.integer("max_lag")));
    FeatureMatrix m = table({"lag", "r"}, "");
    for (std::size_t i = 0; i < r.size(); ++i) m.add_row({static_cast<double>(i), r[i]});
    return {{"out", m}};
}

OutputBundle run_lpc_analyzer(const Context& c) {
    const Signal& x = c.input<Signal>("in");
    const int order = as_int(c.integer("order"));
    FrameSpec frames;
    frames.frame_len = as_int(c.integer("frame_len"));
    frames.hop = as_int(c.integer("hop"));
    frames.window = window_from(c, frames.frame_len);
    const double fs = x.sample_rate_hz;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    FeatureMatrix formants = table({"frame_index", "f1", "b1", "f2", "b2", "f3", "b3"}, "formants");
    FeatureMatrix features = table({"f1", "f2"}, "");
    const long long label = c.integer("label");
    std::vector<LpcModel> models;
    const auto windowed = frame_signal(x, frames);
    for (std::size_t f = 0; f < windowed.size(); ++f) {
        models.push_back(fit_frame(windowed[f], order));
        const auto fm = formants_from_lpc(models.back(), fs);
        RealVec row{static_cast<double>(f)};
        for (std::size_t i = 0; i < 3; ++i) {
            row.push_back(i < fm.size() ? fm[i].frequency_hz : nan);
            row.push_back(i < fm.size() ? fm[i].bandwidth_hz : nan);
        }
        formants.add_row(row);
        if (fm.size() >= 2) {
            features.add_row({fm[0].frequency_hz, fm[1].frequency_hz});
            if (label >= 0) features.labels.push_back(static_cast<int>(label));
        }
    }

    FrameSpec codec_frames = frames;
    codec_frames.hop = frames.frame_len;
    const LpcCodecResult codec = lpc_analysis_synthesis(x, order, codec_frames);

    const auto pick = std::min<std::size_t>(static_cast<std::size_t>(c.integer("frame_index")), models.size() - 1);
    const LpcModel& m = models[pick];
    const TransferFunction envelope{{m.error > 0.0 ? std::sqrt(m.error) : 1.0}, m.a};
    return {{"formants", formants},
            {"features", features},
            {"residual", codec.residual},
            {"reconstructed", codec.reconstructed},
            {"model", envelope}};
}

OutputBundle run_feature_concat(const Context& c) {
    FeatureMatrix m = c.input<FeatureMatrix>("a");
    const FeatureMatrix* b = c.optional_input<FeatureMatrix>("b");
    if (b && b->rows() > 0) {
        if (m.rows() == 0) {
            m = *b;
        } else {
            if (b->cols != m.cols) throw Error("DimensionMismatch", "feature matrices have different column counts");
            if (b->labels.empty() != m.labels.empty())
                throw Error("InvalidInput", "cannot concatenate labeled and unlabeled features");
            m.data.insert(m.data.end(), b->data.begin(), b->data.end());
            m.labels.insert(m.labels.end(), b->labels.begin(), b->labels.end());
        }
    }
    return {{"out", m}};
}

OutputBundle run_kmeans(const Context& c) {
    const FeatureMatrix& x = c.input<FeatureMatrix>("in");
    const KMeansModel km =
        kmeans(x, as_int(c.integer("k")), c.rng, as_int(c.integer("max_iter")), c.real("tol"));
    FeatureMatrix centroids;
    centroids.cols = km.dims;
    centroids.data = km.centroids;
    centroids.column_names = x.column_names;
    return {{"centroids", centroids}, {"assignments", LabelVector(km.assignments)}, {"inertia", km.inertia}};
}

OutputBundle run_confusion_matrix(const Context& c) {
    const FeatureMatrix& truth = c.input<FeatureMatrix>("truth");
    LabelVector predicted = c.input<LabelVector>("predicted");
    if (truth.labels.size() != truth.rows()) throw Error("InvalidInput", "truth features carry no labels");
    if (predicted.size() != truth.labels.size()) throw Error("LengthMismatch", "prediction count differs from label count");
    int n_classes = as_int(c.integer("n_classes"));
    if (n_classes == 0) {
        n_classes = static_cast<int>(truth.class_names.size());
        for (int l : truth.labels) n_classes = std::max(n_classes, l + 1);
        n_classes = std::max(n_classes, 1);
    }
    if (c.integer("map_clusters") != 0 && !predicted.empty()) {
        const int k = *std::max_element(predicted.begin(), predicted.end()) + 1;
        const auto map = map_clusters_to_labels(predicted, truth.labels, k);
        for (int& p : predicted) p = map[static_cast<std::size_t>(p)];
    }
    ConfusionMatrix cm = confusion_matrix(truth.labels, predicted, n_classes);
    for (std::size_t i = 0; i < truth.class_names.size() && i < cm.class_names.size(); ++i)
        cm.class_names[i] = truth.class_names[i];
    FeatureMatrix m = table(cm.class_names, "confusion");
    m.class_names = cm.class_names;
    for (std::size_t r = 0; r < cm.counts.size(); ++r) {
        RealVec row;
        for (long long v : cm.counts[r]) row.push_back(static_cast<double>(v));
        m.add_row(row);
        m.labels.push_back(static_cast<int>(r));
    }
    return {{"out", m}, {"accuracy", cm.accuracy}};
}

// ---------------------------------------------------------------- quantum

OutputBundle run_qft(const Context& c) {
    const Signal& x = c.input<Signal>("in");
    auto n = static_cast<unsigned>(c.integer("qubits"));
    if (n == 0) {
        n = 1;
        while ((std::size_t{1} << n) < x.size()) ++n;
    }
    const EncodedSignal enc = amplitude_encode(x.samples, n);
    const StateVector y = apply_circuit(enc.state, build_qft_circuit(n), c.real("depolarizing_p"), c.rng);
    Spectrum s;
    s.bins = noisy_spectrum_estimate(y, as_int(c.integer("shots")), c.rng);
    s.sample_rate_hz = x.sample_rate_hz;
    s.normalization = SpectrumNorm::UnitaryQft;
    s.scale = enc.norm;
    s.original_len = enc.original_len;
    return {{"out", s}};
}

OutputBundle run_iqft(const Context& c) {
    const Spectrum& s = c.input<Spectrum>("in");
    if (s.normalization != SpectrumNorm::UnitaryQft)
        throw Error("InvalidInput", "Iqft expects a QFT spectrum; use Ifft for DFT spectra");
    unsigned n = 0;
    while ((std::size_t{1} << n) < s.bins.size()) ++n;
    if ((std::size_t{1} << n) != s.bins.size() || n == 0) throw Error("NotPowerOfTwo", "QFT spectrum length must be 2^n");
    StateVector st;
    st.n_qubits = n;
    st.amplitudes = s.bins;
    const double norm = st.norm();
    if (!(norm > 0.0)) throw Error("ZeroSignal", "spectrum carries no energy");
    for (cplx& a : st.amplitudes) a /= norm;
    const StateVector t = apply_circuit(st, inverse_circuit(build_qft_circuit(n)));
    const std::size_t len = s.original_len == 0 ? t.dimension() : std::min(s.original_len, t.dimension());
    Signal y{RealVec(len), s.sample_rate_hz};
    for (std::size_t i = 0; i < len; ++i) y.samples[i] = t.amplitudes[i].real() * s.scale;
    return {{"out", y}};
}

// ---------------------------------------------------------------- catalog

std::vector<BlockType> build_registry() {
    using VK = ValueKind;
    const RealVec haar{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    std::vector<BlockType> r{
        {{"AddNoise", "Adds white Gaussian noise at a target SNR.",
          {real_param("snr_db", 20.0, -60.0, 200.0, "signal-to-noise ratio in dB")},
          {in("in", VK::Signal)},
          {out("out", VK::Signal)}},
         run_add_noise},
        {{"Adder", "Weighted sum of two signals; the shorter one is zero-extended.",
          {real_param("gain_a", 1.0, std::nullopt, std::nullopt), real_param("gain_b", 1.0, std::nullopt, std::nullopt)},
          {in("a", VK::Signal), in("b", VK::Signal)},
          {out("out", VK::Signal)}},
         run_adder},
        {{"Autocorrelation", "Unnormalized autocorrelation r[0..max_lag].",
          {int_param("max_lag", 10, 0, 4096)},
          {in("in", VK::Signal)},
          {out("out", VK::FeatureMatrix)}},
         run_autocorrelation},
        {{"ConfusionMatrix", "Scores predicted labels against the labels carried by a feature matrix.",
          {int_param("map_clusters", 1, 0, 1, "map cluster ids to majority labels first"),
           int_param("n_classes", 0, 0, 1024, "0 infers the class count")},
          {in("truth", VK::FeatureMatrix), in("predicted", VK::LabelVector)},
          {out("out", VK::FeatureMatrix), out("accuracy", VK::Scalar)}},
         run_confusion_matrix},
        {{"Decimate", "Anti-alias lowpass then keep every factor-th sample.",
          {int_param("factor", 2, 1, 64)},
          {in("in", VK::Signal)},
          {out("out", VK::Signal)}},
         run_decimate},
        {{"Downsample", "Keeps every factor-th sample.",
          {int_param("factor", 2, 1, 64)},
          {in("in", VK::Signal)},
          {out("out", VK::Signal)}},
         run_downsample},
        {{"FeatureConcat", "Stacks the rows of two feature matrices.",
          {},
          {in("a", VK::FeatureMatrix), in("b", VK::FeatureMatrix, false)},
          {out("out", VK::FeatureMatrix)}},
         run_feature_concat},
        {{"Fft", "Radix-2 DFT of a zero-padded signal.",
          {int_param("nfft", 0, 0, kMaxSeries, "0 picks the next power of two")},
          {in("in", VK::Signal)},
          {out("out", VK::Spectrum)}},
         run_fft},
        {{"FilterDesigner", "FIR (Kaiser, frequency sampling, equiripple) and IIR filter design.",
          {enum_param("method", "butterworth",
                      {"kaiser", "sampling", "equiripple", "butterworth", "chebyshev1", "chebyshev2", "elliptic"}),
           enum_param("kind", "lowpass", {"lowpass", "highpass"}),
           int_param("order", 4, 1, 30, "IIR order"),
           real_param("cutoff", kPi / 2.0, 1e-6, kPi - 1e-6, "IIR cutoff in rad/sample"),
           real_param("passband_ripple_db", 1.0, 1e-6, 40.0),
           real_param("stopband_atten_db", 40.0, 1e-6, 200.0),
           real_param("passband_edge", 0.2 * kPi, 1e-6, kPi - 1e-6, "Kaiser, rad/sample"),
           real_param("stopband_edge", 0.3 * kPi, 1e-6, kPi - 1e-6, "Kaiser, rad/sample"),
           array_param("desired", {1.0, 1.0, 0.0, 0.0, 1.0}, 1, 4097, "frequency-sampling magnitudes"),
           int_param("numtaps", 15, 3, 1025, "equiripple length (odd)"),
           array_param("band_edges", {0.0, 0.4 * kPi, 0.5 * kPi, kPi}, 2, 64, "equiripple lo,hi pairs"),
           array_param("band_desired", {1.0, 0.0}, 1, 32),
           array_param("band_weight", {1.0, 1.0}, 1, 32)},
          {},
          {out("tf", VK::TransferFunction)}},
         run_filter_designer},
        {{"FirIirFilter", "Direct-form II transposed filtering by b/a params or a wired transfer function.",
          {array_param("b", {1.0}, 1, 4097), array_param("a", {1.0}, 1, 4097),
           int_param("halt_on_unstable", 0, 0, 1, "fail when a pole lies on or outside the unit circle")},
          {in("in", VK::Signal), in("tf", VK::TransferFunction, false)},
          {out("out", VK::Signal), out("tf", VK::TransferFunction)}},
         run_fir_iir_filter},
        {{"FrequencyResponse", "H(e^jw) on a uniform grid over [0, pi].",
          {int_param("n_points", 512, 2, 65536)},
          {in("tf", VK::TransferFunction)},
          {out("out", VK::FeatureMatrix)}},
         run_frequency_response},
        {{"Ifft", "Inverse DFT; real part truncated to the original length.",
          {},
          {in("in", VK::Spectrum)},
          {out("out", VK::Signal)}},
         run_ifft},
        {{"ImpulseResponse", "First samples of h[n].",
          {int_param("length", 64, 1, kMaxSeries), real_param("sample_rate_hz", 8000.0, 1e-6, 1e9)},
          {in("tf", VK::TransferFunction)},
          {out("out", VK::Signal)}},
         run_impulse_response},
        {{"Interpolate", "Zero insertion followed by an interpolation lowpass.",
          {int_param("factor", 2, 1, 64)},
          {in("in", VK::Signal)},
          {out("out", VK::Signal)}},
         run_interpolate},
        {{"Iqft", "Inverse QFT of a (possibly peak-picked) QFT spectrum.",
          {},
          {in("in", VK::Spectrum)},
          {out("out", VK::Signal)}},
         run_iqft},
        {{"KMeans", "Lloyd iterations with k-means++ seeding.",
          {int_param("k", 2, 1, 64), int_param("max_iter", 300, 1, 100000), real_param("tol", 1e-6, 0.0, 1.0)},
          {in("in", VK::FeatureMatrix)},
          {out("centroids", VK::FeatureMatrix), out("assignments", VK::LabelVector), out("inertia", VK::Scalar)}},
         run_kmeans},
        {{"LpcAnalyzer", "Frame-wise LPC with formant tracking and residual-excited resynthesis.",
          {int_param("order", 10, 1, 30), int_param("frame_len", 256, 64, 1024), int_param("hop", 256, 1, 1024),
           enum_param("window", "hamming", kWindowNames), real_param("beta", 0.0, 0.0, 50.0),
           int_param("label", -1, -1, 1024, "class label attached to feature rows; -1 for none"),
           int_param("frame_index", 0, 0, 1 << 20, "frame whose model is exported")},
          {in("in", VK::Signal)},
          {out("formants", VK::FeatureMatrix), out("features", VK::FeatureMatrix), out("residual", VK::Signal),
           out("reconstructed", VK::Signal), out("model", VK::TransferFunction)}},
         run_lpc_analyzer},
        {{"PeakPicker", "Keeps the strongest bins and zeroes the rest.",
          {int_param("peaks", 1, 1, kMaxSeries), enum_param("pairing", "conjugate", {"conjugate", "single"})},
          {in("in", VK::Spectrum)},
          {out("out", VK::Spectrum), out("bins", VK::LabelVector)}},
         run_peak_picker},
        {{"Periodogram", "Windowed power spectral density estimate.",
          {enum_param("window", "hann", kWindowNames), real_param("beta", 0.0, 0.0, 50.0),
           int_param("nfft", 0, 0, kMaxSeries, "0 picks the next power of two")},
          {in("in", VK::Signal)},
          {out("out", VK::FeatureMatrix)}},
         run_periodogram},
        {{"PoleZero", "Poles and zeros of a transfer function.",
          {},
          {in("tf", VK::TransferFunction)},
          {out("out", VK::FeatureMatrix), out("max_pole_magnitude", VK::Scalar)}},
         run_pole_zero},
        {{"QmfAnalysis", "Two-channel QMF analysis bank.",
          {array_param("h0", haar, 1, 1024)},
          {in("in", VK::Signal)},
          {out("low", VK::Signal), out("high", VK::Signal)}},
         run_qmf_analysis},
        {{"QmfSynthesis", "Two-channel QMF synthesis bank.",
          {array_param("h0", haar, 1, 1024)},
          {in("low", VK::Signal), in("high", VK::Signal)},
          {out("out", VK::Signal)}},
         run_qmf_synthesis},
        {{"Qft", "Amplitude-encodes a signal and applies the quantum Fourier transform.",
          {int_param("qubits", 0, 0, kMaxQubits, "0 picks the smallest register that fits"),
           real_param("depolarizing_p", 0.0, 0.0, 1.0), int_param("shots", 0, 0, 100000000)},
          {in("in", VK::Signal)},
          {out("out", VK::Spectrum)}},
         run_qft},
        {{"SignalGenerator", "Periodic, impulse, step, noise and DTMF sources.",
          {enum_param("kind", "sine", {"sine", "square", "triangle", "impulse", "step", "white_noise", "dtmf"}),
           real_param("freq_hz", 1000.0, 0.0, 1e9), real_param("amplitude", 1.0, 0.0, 1e9),
           int_param("length", 256, 1, kMaxSeries), real_param("sample_rate_hz", 8000.0, 1e-6, 1e9),
           real_param("phase_rad", 0.0, std::nullopt, std::nullopt),
           enum_param("dtmf_digit", "5", {"0", "1", "2", "3", "4", "5", "6", "7", "8", "9", "*", "#", "A", "B", "C", "D"})},
          {},
          {out("out", VK::Signal)}},
         run_signal_generator},
        {{"SnrMeter", "10 log10 of reference energy over error energy.",
          {},
          {in("reference", VK::Signal), in("estimate", VK::Signal)},
          {out("snr_db", VK::Scalar)}},
         run_snr_meter},
        {{"Upsample", "Inserts factor-1 zeros between samples.",
          {int_param("factor", 2, 1, 64)},
          {in("in", VK::Signal)},
          {out("out", VK::Signal)}},
         run_upsample},
        {{"WavReader", "16-bit PCM mono WAV from a file path or base64 data.",
          {string_param("path", ""), string_param("data_base64", "")},
          {},
          {out("out", VK::Signal)}},
         run_wav_reader},
        {{"Window", "Multiplies a signal by a window of its own length.",
          {enum_param("window", "hann", kWindowNames), real_param("beta", 0.0, 0.0, 50.0)},
          {in("in", VK::Signal)},
          {out("out", VK::Signal)}},
         run_window},
    };
    std::sort(r.begin(), r.end(),
              [](const BlockType& l, const BlockType& rr) { return l.descriptor.type_name < rr.descriptor.type_name; });
    return r;
}

}  // namespace

const std::vector<BlockType>& registry() {
    static const std::vector<BlockType> types = build_registry();
    return types;
}

const BlockType* find(std::string_view type_name) {
    const auto& r = registry();
    const auto it = std::lower_bound(r.begin(), r.end(), type_name,
                                     [](const BlockType& t, std::string_view n) { return t.descriptor.type_name < n; });
    return it != r.end() && it->descriptor.type_name == type_name ? &*it : nullptr;
}

}  // namespace jdsp::blocks
