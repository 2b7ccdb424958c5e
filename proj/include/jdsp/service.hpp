#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "jdsp/graph.hpp"

namespace jdsp {

inline constexpr const char* kEngineVersion = "1.0.0";

struct HttpRequest {
    std::string method;
    std::string path;
    std::string body;
};

struct HttpResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
    std::map<std::string, std::string> headers;
};

struct ServiceConfig {
    std::string assets_dir;  // empty: no static files
};

/// Validates and runs a graph; returns {"engine_version", "seed", "order",
/// "outputs": {"block.port": value}}. Without `outputs` every sink output is
/// returned. Errors: UnknownOutput, ResourceLimit (series over 2^22 samples).
nlohmann::json execute_response(const Graph& graph, std::uint64_t seed,
                                const std::optional<std::vector<std::string>>& outputs, const ExecuteOptions& options);

/// Stateless request handler behind `serve`. Execution time is reported in the
/// X-Timing-Ms header, and in the body only when the request asks for it, so
/// identical requests produce identical bodies.
HttpResponse handle_http(const HttpRequest& req, const ServiceConfig& cfg);

/// Blocks until the server stops. Returns false if the port could not be bound.
bool serve(const std::string& host, int port, const ServiceConfig& cfg);

/// `jdsp` entry point. Exit codes: 0 success, 1 usage or input error, 2 runtime error.
int cli_main(const std::vector<std::string>& args);

}  // namespace jdsp
