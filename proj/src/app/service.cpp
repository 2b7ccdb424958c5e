#include "jdsp/service.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "httplib.h"

#include "app_common.hpp"
#include "jdsp/serialize.hpp"
#include "jdsp/signals_io.hpp"

namespace jdsp {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxSeries = std::size_t{1} << 22;

std::size_t series_length(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::size_t {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Signal>)
                return x.size();
            else if constexpr (std::is_same_v<T, Spectrum>)
                return x.bins.size();
            else if constexpr (std::is_same_v<T, TransferFunction>)
                return std::max(x.b.size(), x.a.size());
            else if constexpr (std::is_same_v<T, FeatureMatrix>)
                return x.rows();
            else if constexpr (std::is_same_v<T, double>)
                return 1;
            else
                return x.size();
        },
        v);
}

int status_for(const Error& e) { return is_engine_fault(e.code()) ? 500 : 400; }

HttpResponse json_response(int status, const json& body) {
    HttpResponse r;
    r.status = status;
    r.body = body.dump();
    return r;
}

HttpResponse error_response(const Error& e) { return json_response(status_for(e), error_to_json(e)); }

json parse_body(const std::string& body) {
    try {
        return json::parse(body);
    } catch (const json::parse_error& e) {
        throw Error("MalformedJson", e.what());
    }
}

std::uint64_t seed_field(const json& req) {
    if (!req.contains("seed")) return 0;
    if (!req["seed"].is_number_integer() || req["seed"].get<long long>() < 0)
        throw Error("InvalidRequest", "'seed' must be a non-negative integer");
    return req["seed"].get<std::uint64_t>();
}

Graph graph_field(const json& req) {
    if (!req.is_object() || !req.contains("graph")) throw Error("InvalidRequest", "request needs a 'graph' object");
    return parse_graph_json(req["graph"].dump());
}

std::string content_type_for(const std::filesystem::path& p) {
    const std::string ext = p.extension().string();
    if (ext == ".html") return "text/html; charset=utf-8";
    if (ext == ".js" || ext == ".mjs") return "text/javascript; charset=utf-8";
    if (ext == ".css") return "text/css; charset=utf-8";
    if (ext == ".json") return "application/json";
    if (ext == ".svg") return "image/svg+xml";
    if (ext == ".png") return "image/png";
    return "application/octet-stream";
}

HttpResponse static_file(const std::string& path, const ServiceConfig& cfg) {
    if (cfg.assets_dir.empty()) return json_response(404, {{"error", "NotFound"}, {"detail", "no assets directory configured"}});
    std::string rel = path == "/" ? "index.html" : path.substr(1);
    const std::filesystem::path p(rel);
    for (const auto& part : p)
        if (part == "..") return json_response(404, {{"error", "NotFound"}, {"detail", "path escapes the assets directory"}});
    const auto full = std::filesystem::path(cfg.assets_dir) / p;
    std::ifstream f(full, std::ios::binary);
    if (!f || std::filesystem::is_directory(full))
        return json_response(404, {{"error", "NotFound"}, {"detail", "no such asset: " + rel}});
    HttpResponse r;
    r.content_type = content_type_for(full);
    r.body.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    return r;
}

json codec_request(const json& req) {
    if (!req.is_object()) throw Error("InvalidRequest", "codec request must be an object");
    auto get_int = [&](const char* key, long long def) -> long long {
        if (!req.contains(key)) return def;
        if (!req[key].is_number_integer()) throw Error("InvalidRequest", std::string("'") + key + "' must be an integer");
        return req[key].get<long long>();
    };
    CodecConfig cfg;
    const long long n = get_int("n_qubits", 3);
    const long long peaks = get_int("peaks", 1);
    const long long shots = get_int("shots", 0);
    if (n < 1 || n > kMaxQubits) throw Error("InvalidQubits", "n_qubits must lie in [1, 14]");
    if (peaks < 1) throw Error("InvalidSpec", "peaks must be >= 1");
    if (shots < 0 || shots > 100000000) throw Error("InvalidShots", "shots must lie in [0, 1e8]");
    cfg.n_qubits = static_cast<unsigned>(n);
    cfg.peaks = static_cast<std::size_t>(peaks);
    cfg.noise.shots = static_cast<int>(shots);
    cfg.noise.seed = seed_field(req);
    if (req.contains("depolarizing_p")) {
        if (!req["depolarizing_p"].is_number()) throw Error("InvalidRequest", "'depolarizing_p' must be a number");
        cfg.noise.depolarizing_p = req["depolarizing_p"].get<double>();
    }

    RealVec x;
    const bool has_samples = req.contains("samples");
    const bool has_wav = req.contains("wav_base64");
    if (has_samples == has_wav) throw Error("InvalidRequest", "give exactly one of 'samples' and 'wav_base64'");
    if (has_samples) {
        if (!req["samples"].is_array()) throw Error("InvalidRequest", "'samples' must be an array of numbers");
        for (const auto& v : req["samples"]) {
            if (!v.is_number()) throw Error("InvalidRequest", "'samples' must be an array of numbers");
            x.push_back(v.get<double>());
        }
    } else {
        if (!req["wav_base64"].is_string()) throw Error("InvalidRequest", "'wav_base64' must be a string");
        x = read_wav(base64_decode(req["wav_base64"].get<std::string>())).samples;
    }
    return codec_report_json(run_codec(x, cfg));
}

}  // namespace

bool is_engine_fault(const std::string& code) {
    return code == "BlockRuntimeError" || code == "InternalError" || code == "InvalidPlan" || code == "NoConvergence" ||
           code == "NumericalFailure" || code == "IoError";
}

CodecReport run_codec(const RealVec& x, const CodecConfig& cfg) {
    if (cfg.n_qubits < 1 || cfg.n_qubits > kMaxQubits) throw Error("InvalidQubits", "n_qubits must lie in [1, 14]");
    const std::size_t dim = std::size_t{1} << cfg.n_qubits;
    const RealVec head(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(std::min(dim, x.size())));
    return CodecReport{cfg, qft_codec(head, cfg)};
}

json execute_response(const Graph& graph, std::uint64_t seed, const std::optional<std::vector<std::string>>& outputs,
                      const ExecuteOptions& options) {
    const ExecutionPlan plan = validate_and_plan(graph);
    std::vector<PortRef> wanted;
    if (outputs) {
        for (const auto& name : *outputs) {
            const PortRef ref = parse_port_ref(name);
            const BlockInstance* b = graph.find_block(ref.block);
            const BlockDescriptor* d = b ? find_block_type(b->type_name) : nullptr;
            if (!d || !d->find_output(ref.port)) throw Error("UnknownOutput", "no output port '" + name + "'");
            wanted.push_back(ref);
        }
    } else {
        wanted = sink_outputs(plan, graph);
    }
    const RunOutputs results = execute_plan(plan, graph, seed, options);

    json body{{"engine_version", kEngineVersion}, {"seed", seed}, {"order", plan.order}, {"outputs", json::object()}};
    for (const auto& ref : wanted) {
        const Value& v = results.at(ref.block).at(ref.port);
        if (series_length(v) > kMaxSeries)
            throw Error("ResourceLimit", "output '" + ref.str() + "' exceeds 2^22 samples", ref.block);
        body["outputs"][ref.str()] = value_to_json(v);
    }
    return body;
}

HttpResponse handle_http(const HttpRequest& req, const ServiceConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    HttpResponse resp;
    bool with_timing = false;
    try {
        if (req.method == "GET" && req.path == "/api/catalog") {
            resp = json_response(200, catalog_to_json());
        } else if (req.method == "POST" && req.path == "/api/graph/validate") {
            const json body = parse_body(req.body);
            const ExecutionPlan plan = validate_and_plan(graph_field(body));
            resp = json_response(200, {{"valid", true}, {"order", plan.order}});
        } else if (req.method == "POST" && req.path == "/api/graph/execute") {
            const json body = parse_body(req.body);
            std::optional<std::vector<std::string>> outputs;
            if (body.is_object() && body.contains("outputs")) {
                if (!body["outputs"].is_array()) throw Error("InvalidRequest", "'outputs' must be an array of strings");
                outputs.emplace();
                for (const auto& o : body["outputs"]) {
                    if (!o.is_string()) throw Error("InvalidRequest", "'outputs' must be an array of strings");
                    outputs->push_back(o.get<std::string>());
                }
            }
            with_timing = body.is_object() && body.value("timing", false);
            ExecuteOptions opts;
            opts.allow_file_access = false;
            json out = execute_response(graph_field(body), seed_field(body), outputs, opts);
            if (with_timing)
                out["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            resp = json_response(200, out);
        } else if (req.method == "POST" && req.path == "/api/design/fir") {
            resp = json_response(200, tf_to_json(design_fir_from_json(parse_body(req.body))));
        } else if (req.method == "POST" && req.path == "/api/design/iir") {
            resp = json_response(200, tf_to_json(design_iir_from_json(parse_body(req.body))));
        } else if (req.method == "POST" && req.path == "/api/qft/codec") {
            resp = json_response(200, codec_request(parse_body(req.body)));
        } else if (req.method == "GET" && req.path.rfind("/api/", 0) != 0) {
            resp = static_file(req.path, cfg);
        } else {
            resp = json_response(404, {{"error", "NotFound"}, {"detail", req.method + " " + req.path}});
        }
    } catch (const Error& e) {
        resp = error_response(e);
    } catch (const std::exception& e) {
        resp = json_response(500, {{"error", "InternalError"}, {"detail", e.what()}});
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    resp.headers["X-Timing-Ms"] = format_real(ms);
    resp.headers["X-Engine-Version"] = kEngineVersion;
    return resp;
}

bool serve(const std::string& host, int port, const ServiceConfig& cfg) {
    httplib::Server server;
    server.set_payload_max_length(std::size_t{64} << 20);
    auto route = [cfg](const httplib::Request& in, httplib::Response& out) {
        const HttpResponse r = handle_http({in.method, in.path, in.body}, cfg);
        out.status = r.status;
        for (const auto& [k, v] : r.headers) out.set_header(k, v);
        out.set_content(r.body, r.content_type);
    };
    server.Get(".*", route);
    server.Post(".*", route);
    return server.listen(host, port);
}

}  // namespace jdsp
