#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "app_common.hpp"
#include "jdsp/classify.hpp"
#include "jdsp/service.hpp"
#include "jdsp/signals_io.hpp"

namespace jdsp {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Input problems the user can fix exit 1; engine failures exit 2.
int exit_code_for(const Error& e) { return is_engine_fault(e.code()) ? 2 : 1; }

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("FileNotFound", "file not found: " + path);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void write_atomic(const fs::path& path, const std::string& text) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("IoError", "cannot write " + tmp.string());
        f << text;
        f.flush();
        if (!f) throw Error("IoError", "write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error("IoError", "cannot rename into " + path.string() + ": " + ec.message());
    }
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty())
        std::cout << text;
    else
        write_atomic(out_path, text);
}

RealVec parse_list(const std::string& text, const std::string& what) {
    RealVec v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw Error("InvalidSpec", what + " has an empty entry");
        item = item.substr(b, e - b + 1);
        double x = 0.0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), x);
        if (res.ec != std::errc() || res.ptr != item.data() + item.size())
            throw Error("InvalidSpec", what + ": '" + item + "' is not a number");
        v.push_back(x);
    }
    return v;
}

std::optional<double> parse_number(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
    double x = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
    return x;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    return f;
}

/// Features CSV `label,f1,f2[,f3]`; an optional header row is skipped. Class
/// ids follow the sorted label names.
FeatureMatrix read_features_csv(const std::string& text) {
    std::vector<std::pair<std::string, RealVec>> rows;
    std::stringstream ss(text);
    std::string line;
    std::size_t width = 0;
    bool first = true;
    while (std::getline(ss, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        auto f = split_csv_line(line);
        if (f.size() < 3 || f.size() > 4) throw Error("InvalidInput", "feature rows need label,f1,f2[,f3]: '" + line + "'");
        if (first && !parse_number(f[1])) {
            first = false;
            continue;
        }
        first = false;
        if (width == 0) width = f.size();
        if (f.size() != width) throw Error("InvalidInput", "feature rows have different widths");
        RealVec v;
        for (std::size_t i = 1; i < f.size(); ++i) {
            const auto x = parse_number(f[i]);
            if (!x) throw Error("InvalidInput", "'" + f[i] + "' is not a number");
            v.push_back(*x);
        }
        std::string label = f[0];
        while (!label.empty() && label.back() == ' ') label.pop_back();
        rows.emplace_back(label, v);
    }
    if (rows.empty()) throw Error("InvalidInput", "no feature rows");
    std::set<std::string> names;
    for (const auto& r : rows) names.insert(r.first);
    FeatureMatrix m;
    m.cols = width - 1;
    m.column_names = {"f1", "f2"};
    if (m.cols == 3) m.column_names.push_back("f3");
    m.class_names.assign(names.begin(), names.end());
    for (const auto& [label, v] : rows) {
        m.add_row(v);
        m.labels.push_back(static_cast<int>(std::distance(names.begin(), names.find(label))));
    }
    return m;
}

int cmd_catalog(bool as_json) {
    if (as_json) {
        std::cout << catalog_to_json().dump(2) << "\n";
        return 0;
    }
    for (const auto& d : block_catalog()) {
        std::string ins, outs;
        for (const auto& p : d.inputs) ins += (ins.empty() ? "" : ", ") + p.name + (p.required ? "" : "?");
        for (const auto& p : d.outputs) outs += (outs.empty() ? "" : ", ") + p.name;
        std::cout << d.type_name << "  (" << ins << ") -> (" << outs << ")\n";
    }
    return 0;
}

int cmd_run(const std::string& path, std::uint64_t seed, const std::string& out_dir) {
    const Graph graph = parse_graph_json(read_file(path));
    if (out_dir.empty()) {
        std::cout << execute_response(graph, seed, std::nullopt, {}).dump(2) << "\n";
        return 0;
    }
    const ExecutionPlan plan = validate_and_plan(graph);
    const RunOutputs results = execute_plan(plan, graph, seed);
    fs::create_directories(out_dir);
    for (const auto& ref : sink_outputs(plan, graph)) {
        const ValueFile f = value_to_file(results.at(ref.block).at(ref.port));
        const fs::path target = fs::path(out_dir) / (ref.block + "." + ref.port + "." + f.extension);
        write_atomic(target, f.text);
        std::cout << target.string() << "\n";
    }
    return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"Block-diagram DSP engine", "jdsp"};
    app.require_subcommand(1);

    bool catalog_json = false;
    auto* catalog = app.add_subcommand("catalog", "List block types");
    catalog->add_flag("--json", catalog_json, "Print the catalog as JSON");

    std::string graph_path, out_dir;
    std::uint64_t seed = 0;
    auto* run = app.add_subcommand("run", "Execute a graph file");
    run->add_option("graph", graph_path, "Graph JSON")->required();
    run->add_option("--seed", seed, "Run seed");
    run->add_option("--out", out_dir, "Directory for one file per sink output");

    auto* design = app.add_subcommand("design", "Design a filter");
    design->require_subcommand(1);
    std::string out_path;

    json fir_req = json::object();
    std::string method = "kaiser", kind = "lowpass", desired, bands, band_desired, weights;
    double wp = 0.2 * kPi, ws = 0.3 * kPi, atten = 60.0;
    int numtaps = 15;
    auto* fir = design->add_subcommand("fir", "FIR design");
    fir->add_option("--method", method)->check(CLI::IsMember({"kaiser", "sampling", "equiripple"}));
    fir->add_option("--kind", kind)->check(CLI::IsMember({"lowpass", "highpass"}));
    fir->add_option("--passband-edge", wp, "rad/sample");
    fir->add_option("--stopband-edge", ws, "rad/sample");
    fir->add_option("--atten", atten, "Stopband attenuation in dB");
    fir->add_option("--desired", desired, "Frequency-sampling magnitudes, comma separated");
    fir->add_option("--numtaps", numtaps);
    fir->add_option("--bands", bands, "Equiripple band edges lo,hi,lo,hi,...");
    fir->add_option("--band-desired", band_desired, "Desired amplitude per band");
    fir->add_option("--weights", weights, "Weight per band");
    fir->add_option("--out", out_path, "Output TransferFunction JSON");

    std::string family = "butterworth", iir_kind = "lowpass";
    int order = 4;
    double cutoff = 0.5 * kPi, ripple = 1.0, iir_atten = 40.0;
    auto* iir = design->add_subcommand("iir", "IIR design");
    iir->add_option("--family", family)->check(CLI::IsMember({"butterworth", "cheby1", "cheby2", "chebyshev1", "chebyshev2", "elliptic"}));
    iir->add_option("--kind", iir_kind)->check(CLI::IsMember({"lowpass", "highpass"}));
    iir->add_option("--order", order);
    iir->add_option("--cutoff", cutoff, "rad/sample");
    iir->add_option("--ripple", ripple, "Passband ripple in dB");
    iir->add_option("--atten", iir_atten, "Stopband attenuation in dB");
    iir->add_option("--out", out_path, "Output TransferFunction JSON");

    std::string input;
    unsigned qubits = 0;
    std::size_t peaks = 0;
    double noise_p = 0.0;
    int shots = 0;
    std::uint64_t codec_seed = 0;
    auto* codec = app.add_subcommand("qft-codec", "QFT peak-picking codec on a WAV file");
    codec->add_option("--input", input, "16-bit PCM mono WAV")->required();
    codec->add_option("--qubits", qubits)->required()->check(CLI::Range(1u, kMaxQubits));
    codec->add_option("--peaks", peaks)->required();
    codec->add_option("--noise-p", noise_p)->check(CLI::Range(0.0, 1.0));
    codec->add_option("--shots", shots)->check(CLI::NonNegativeNumber);
    codec->add_option("--seed", codec_seed);
    codec->add_option("--out", out_path, "Report JSON");

    int k = 2;
    std::uint64_t km_seed = 0;
    double train_fraction = 0.7;
    auto* km = app.add_subcommand("kmeans", "Cluster a features CSV and score it");
    km->add_option("--input", input, "CSV label,f1,f2[,f3]")->required();
    km->add_option("--k", k)->required();
    km->add_option("--seed", km_seed);
    km->add_option("--train-fraction", train_fraction)->check(CLI::Range(0.0, 1.0));
    km->add_option("--out", out_path, "Confusion CSV");

    int port = 8080;
    std::string assets, host = "127.0.0.1";
    auto* srv = app.add_subcommand("serve", "Start the HTTP service");
    srv->add_option("--port", port)->check(CLI::Range(1, 65535));
    srv->add_option("--host", host);
    srv->add_option("--assets", assets, "Static UI directory");

    std::vector<std::string> argv_store = args;
    if (argv_store.empty()) argv_store.emplace_back("jdsp");
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*catalog) return cmd_catalog(catalog_json);
        if (*run) return cmd_run(graph_path, seed, out_dir);
        if (*fir) {
            fir_req = {{"method", method}, {"kind", kind}};
            if (method == "kaiser") {
                fir_req.update({{"passband_edge", wp}, {"stopband_edge", ws}, {"stopband_atten_db", atten}});
            } else if (method == "sampling") {
                if (desired.empty()) throw Error("InvalidSpec", "--desired is required for frequency sampling");
                fir_req["desired_mag"] = parse_list(desired, "--desired");
            } else {
                const RealVec edges = parse_list(bands, "--bands");
                if (edges.size() % 2 != 0) throw Error("InvalidSpec", "--bands needs lo,hi pairs");
                json jb = json::array();
                for (std::size_t i = 0; i < edges.size(); i += 2) jb.push_back({edges[i], edges[i + 1]});
                fir_req.update({{"numtaps", numtaps}, {"bands", jb}, {"desired", parse_list(band_desired, "--band-desired")}});
                if (!weights.empty()) fir_req["weight"] = parse_list(weights, "--weights");
            }
            emit(out_path, tf_to_json(design_fir_from_json(fir_req)).dump(2) + "\n");
            return 0;
        }
        if (*iir) {
            const json req{{"family", family},       {"kind", iir_kind},
                           {"order", order},         {"cutoff", cutoff},
                           {"passband_ripple_db", ripple}, {"stopband_atten_db", iir_atten}};
            emit(out_path, tf_to_json(design_iir_from_json(req)).dump(2) + "\n");
            return 0;
        }
        if (*codec) {
            const std::string bytes = read_file(input);
            const Signal x = read_wav(std::span(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()));
            CodecConfig cfg;
            cfg.n_qubits = qubits;
            cfg.peaks = peaks;
            cfg.noise = {noise_p, shots, codec_seed};
            emit(out_path, codec_report_json(run_codec(x.samples, cfg)).dump(2) + "\n");
            return 0;
        }
        if (*km) {
            const FeatureMatrix features = read_features_csv(read_file(input));
            Rng rng(km_seed);
            const PhonemeResult res = classify_features(features, k, train_fraction, rng);
            emit(out_path, confusion_csv(res.confusion));
            return 0;
        }
        if (*srv) {
            std::cerr << "listening on http://" << host << ":" << port << "\n";
            if (!serve(host, port, ServiceConfig{assets})) {
                std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
                return 2;
            }
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.code() << ": " << e.detail();
        if (e.block_id()) std::cerr << " (block " << *e.block_id() << ")";
        std::cerr << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace jdsp
