#include "jdsp/serialize.hpp"

#include <cmath>

#include "jdsp/signals_io.hpp"

namespace jdsp {

using nlohmann::json;

json json_real(double v) {
    if (std::isfinite(v)) return v;
    return format_real(v);
}

json json_reals(const RealVec& v) {
    json a = json::array();
    for (double x : v) a.push_back(json_real(x));
    return a;
}

namespace {

json param_json(const ParamValue& v) {
    return std::visit(
        [](const auto& x) -> json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, double>)
                return json_real(x);
            else if constexpr (std::is_same_v<T, RealVec>)
                return json_reals(x);
            else
                return x;
        },
        v);
}

json feature_json(const FeatureMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols; ++c) row.push_back(json_real(m.at(r, c)));
        rows.push_back(row);
    }
    json j{{"kind", "feature_matrix"}, {"layout", m.layout}, {"columns", m.column_names}, {"rows", rows}};
    if (!m.labels.empty()) j["labels"] = m.labels;
    if (!m.class_names.empty()) j["class_names"] = m.class_names;
    return j;
}

RealVec index_axis(std::size_t n) {
    RealVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i);
    return x;
}

// Table CSV: optional leading label column, NaN cells left empty.
std::string feature_csv(const FeatureMatrix& m) {
    const bool labeled = m.labels.size() == m.rows() && m.rows() > 0 && m.layout != "confusion";
    const std::string label_header = m.layout == "pole_zero" ? "kind" : "label";
    std::string out;
    if (labeled) out += label_header;
    for (std::size_t c = 0; c < m.cols; ++c) {
        if (c > 0 || labeled) out += ',';
        out += m.column_names[c];
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out += '\n';
        if (labeled) {
            const int l = m.labels[r];
            const bool named = l >= 0 && static_cast<std::size_t>(l) < m.class_names.size();
            out += named ? m.class_names[static_cast<std::size_t>(l)] : std::to_string(l);
        }
        for (std::size_t c = 0; c < m.cols; ++c) {
            if (c > 0 || labeled) out += ',';
            const double v = m.at(r, c);
            if (!std::isnan(v)) out += format_real(v);
        }
    }
    return out;
}

}  // namespace

json tf_to_json(const TransferFunction& tf) { return json{{"b", json_reals(tf.b)}, {"a", json_reals(tf.a)}}; }

json value_to_json(const Value& v) {
    return std::visit(
        [](const auto& x) -> json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Signal>) {
                return json{{"kind", "signal"}, {"sample_rate_hz", json_real(x.sample_rate_hz)}, {"samples", json_reals(x.samples)}};
            } else if constexpr (std::is_same_v<T, Spectrum>) {
                RealVec re(x.bins.size()), im(x.bins.size());
                for (std::size_t i = 0; i < x.bins.size(); ++i) {
                    re[i] = x.bins[i].real();
                    im[i] = x.bins[i].imag();
                }
                return json{{"kind", "spectrum"},
                            {"normalization", x.normalization == SpectrumNorm::UnitaryQft ? "unitary_qft" : "unnormalized_dft"},
                            {"sample_rate_hz", json_real(x.sample_rate_hz)},
                            {"scale", json_real(x.scale)},
                            {"original_len", x.original_len},
                            {"re", json_reals(re)},
                            {"im", json_reals(im)}};
            } else if constexpr (std::is_same_v<T, TransferFunction>) {
                json j = tf_to_json(x);
                j["kind"] = "transfer_function";
                return j;
            } else if constexpr (std::is_same_v<T, FeatureMatrix>) {
                return feature_json(x);
            } else if constexpr (std::is_same_v<T, double>) {
                return json{{"kind", "scalar"}, {"value", json_real(x)}};
            } else {
                return json{{"kind", "label_vector"}, {"values", x}};
            }
        },
        v);
}

std::string spectrum_csv(const Spectrum& s) {
    const std::size_t n = s.bins.size();
    RealVec f(n), re(n), im(n), mag(n), db(n);
    for (std::size_t k = 0; k < n; ++k) {
        f[k] = static_cast<double>(k) * s.sample_rate_hz / static_cast<double>(n);
        re[k] = s.bins[k].real();
        im[k] = s.bins[k].imag();
        mag[k] = std::abs(s.bins[k]);
        db[k] = mag[k] > 0.0 ? 20.0 * std::log10(mag[k]) : -std::numeric_limits<double>::infinity();
    }
    std::string csv = export_series_csv("spectrum", index_axis(n), {{"freq_hz", f}, {"re", re}, {"im", im}, {"mag", mag}, {"mag_db", db}});
    return "bin" + csv.substr(1);
}

std::string confusion_csv(const ConfusionMatrix& cm) {
    std::string out;
    for (std::size_t i = 0; i < cm.class_names.size(); ++i) out += (i ? "," : "") + cm.class_names[i];
    for (const auto& row : cm.counts) {
        out += '\n';
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + std::to_string(row[i]);
    }
    out += "\naccuracy," + format_real(cm.accuracy) + "\n";
    return out;
}

ValueFile value_to_file(const Value& v) {
    return std::visit(
        [&](const auto& x) -> ValueFile {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Signal>) {
                return {"csv", export_series_csv("signal", index_axis(x.size()), {{"value", x.samples}}) + "\n"};
            } else if constexpr (std::is_same_v<T, Spectrum>) {
                return {"csv", spectrum_csv(x) + "\n"};
            } else if constexpr (std::is_same_v<T, FeatureMatrix>) {
                return {"csv", feature_csv(x) + "\n"};
            } else {
                return {"json", value_to_json(v).dump(2) + "\n"};
            }
        },
        v);
}

json descriptor_to_json(const BlockDescriptor& d) {
    json params = json::array();
    for (const auto& p : d.params) {
        json jp{{"name", p.name}, {"kind", to_string(p.kind)}, {"default", param_json(p.default_value)}};
        if (p.min) jp["min"] = *p.min;
        if (p.max) jp["max"] = *p.max;
        if (!p.enum_values.empty()) jp["enum_values"] = p.enum_values;
        if (!p.doc.empty()) jp["doc"] = p.doc;
        params.push_back(jp);
    }
    auto ports = [](const std::vector<PortSpec>& ps) {
        json a = json::array();
        for (const auto& p : ps) a.push_back({{"name", p.name}, {"kind", to_string(p.kind)}, {"required", p.required}});
        return a;
    };
    return json{{"type_name", d.type_name},
                {"description", d.description},
                {"params", params},
                {"inputs", ports(d.inputs)},
                {"outputs", ports(d.outputs)}};
}

json catalog_to_json() {
    json a = json::array();
    for (const auto& d : block_catalog()) a.push_back(descriptor_to_json(d));
    return json{{"blocks", a}};
}

json error_to_json(const Error& e) {
    json j{{"error", e.code()}, {"detail", e.detail()}};
    if (e.block_id()) j["block_id"] = *e.block_id();
    return j;
}

json codec_report_json(const CodecReport& r) {
    std::vector<std::size_t> bins = r.result.retained;
    return json{{"n_qubits", r.config.n_qubits},
                {"peaks", r.config.peaks},
                {"depolarizing_p", json_real(r.config.noise.depolarizing_p)},
                {"shots", r.config.noise.shots},
                {"seed", r.config.noise.seed},
                {"snr_db", json_real(r.result.snr_db)},
                {"retained_bins", bins}};
}

// ---------------------------------------------------------------- design requests

namespace {

double num(const json& req, const char* key, double def) {
    if (!req.contains(key)) return def;
    if (!req[key].is_number()) throw Error("InvalidRequest", std::string("'") + key + "' must be a number");
    return req[key].get<double>();
}

std::string text(const json& req, const char* key, const std::string& def) {
    if (!req.contains(key)) return def;
    if (!req[key].is_string()) throw Error("InvalidRequest", std::string("'") + key + "' must be a string");
    return req[key].get<std::string>();
}

RealVec reals(const json& req, const char* key) {
    if (!req.contains(key) || !req[key].is_array()) throw Error("InvalidRequest", std::string("'") + key + "' must be an array");
    RealVec v;
    for (const auto& e : req[key]) {
        if (!e.is_number()) throw Error("InvalidRequest", std::string("'") + key + "' must contain numbers");
        v.push_back(e.get<double>());
    }
    return v;
}

int integer(const json& req, const char* key, int def) {
    if (!req.contains(key)) return def;
    if (!req[key].is_number_integer()) throw Error("InvalidRequest", std::string("'") + key + "' must be an integer");
    return req[key].get<int>();
}

}  // namespace

TransferFunction design_fir_from_json(const json& req) {
    if (!req.is_object()) throw Error("InvalidRequest", "design request must be an object");
    const std::string method = text(req, "method", "kaiser");
    if (method == "kaiser") {
        FirSpec spec;
        spec.passband_edge = num(req, "passband_edge", spec.passband_edge);
        spec.stopband_edge = num(req, "stopband_edge", spec.stopband_edge);
        spec.stopband_atten_db = num(req, "stopband_atten_db", spec.stopband_atten_db);
        spec.kind = band_kind_from_string(text(req, "kind", "lowpass"));
        return design_fir_kaiser(spec);
    }
    if (method == "sampling") return design_fir_freq_sampling(reals(req, "desired_mag"));
    if (method == "equiripple") {
        EquirippleSpec spec;
        spec.numtaps = integer(req, "numtaps", spec.numtaps);
        if (!req.contains("bands") || !req["bands"].is_array()) throw Error("InvalidRequest", "'bands' must be an array of [lo, hi]");
        for (const auto& b : req["bands"]) {
            if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number())
                throw Error("InvalidRequest", "each band must be [lo, hi]");
            spec.bands.push_back({b[0].get<double>(), b[1].get<double>()});
        }
        spec.desired = reals(req, "desired");
        spec.weight = req.contains("weight") ? reals(req, "weight") : RealVec(spec.bands.size(), 1.0);
        return design_fir_equiripple(spec).tf;
    }
    throw Error("InvalidSpec", "unknown FIR method '" + method + "'");
}

TransferFunction design_iir_from_json(const json& req) {
    if (!req.is_object()) throw Error("InvalidRequest", "design request must be an object");
    IirSpec spec;
    spec.family = iir_family_from_string(text(req, "family", "butterworth"));
    spec.kind = band_kind_from_string(text(req, "kind", "lowpass"));
    spec.order = integer(req, "order", spec.order);
    spec.cutoff = num(req, "cutoff", spec.cutoff);
    spec.passband_ripple_db = num(req, "passband_ripple_db", spec.passband_ripple_db);
    spec.stopband_atten_db = num(req, "stopband_atten_db", spec.stopband_atten_db);
    return design_iir(spec);
}

}  // namespace jdsp
