#pragma once

// Block-diagram model: catalog descriptors, the version-1 graph document,
// validation into an execution plan, and whole-buffer DAG evaluation.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "jdsp/classify.hpp"
#include "jdsp/common.hpp"
#include "jdsp/filter.hpp"
#include "jdsp/spectral.hpp"

namespace jdsp {

enum class ValueKind { Signal, Spectrum, TransferFunction, FeatureMatrix, Scalar, LabelVector };
enum class ParamKind { Int, Real, String, Enum, RealArray };

std::string_view to_string(ValueKind kind);
std::string_view to_string(ParamKind kind);

using LabelVector = std::vector<int>;
using Value = std::variant<Signal, Spectrum, TransferFunction, FeatureMatrix, double, LabelVector>;

ValueKind kind_of(const Value& v);

// Int params hold long long, Real double, String/Enum std::string.
using ParamValue = std::variant<long long, double, std::string, RealVec>;

struct ParamSpec {
    std::string name;
    ParamKind kind = ParamKind::Real;
    ParamValue default_value;
    std::optional<double> min;  // numeric bounds; array length for RealArray
    std::optional<double> max;
    std::vector<std::string> enum_values;
    std::string doc;
};

struct PortSpec {
    std::string name;
    ValueKind kind = ValueKind::Signal;
    bool required = true;
};

struct BlockDescriptor {
    std::string type_name;
    std::string description;
    std::vector<ParamSpec> params;
    std::vector<PortSpec> inputs;
    std::vector<PortSpec> outputs;

    const ParamSpec* find_param(std::string_view name) const;
    const PortSpec* find_input(std::string_view name) const;
    const PortSpec* find_output(std::string_view name) const;
};

/// Every block type, sorted by type name.
const std::vector<BlockDescriptor>& block_catalog();
const BlockDescriptor* find_block_type(std::string_view type_name);

/// Throws ParamOutOfBounds when `v` does not satisfy `spec`. Returns the value
/// coerced to the declared kind (ints accepted for reals, integral reals for ints).
ParamValue check_param(const ParamSpec& spec, const ParamValue& v);

struct PortRef {
    std::string block;
    std::string port;

    std::string str() const { return block + "." + port; }
    bool operator==(const PortRef&) const = default;
    auto operator<=>(const PortRef&) const = default;
};

PortRef parse_port_ref(std::string_view text);

struct BlockInstance {
    std::string id;
    std::string type_name;
    std::map<std::string, ParamValue> params;
};

struct Wire {
    PortRef from;
    PortRef to;
};

struct Graph {
    int version = 1;
    std::vector<BlockInstance> blocks;
    std::vector<Wire> wires;

    const BlockInstance* find_block(std::string_view id) const;
};

/// Structural parse of version-1 graph JSON. Errors: MalformedJson,
/// InvalidGraph, UnsupportedVersion.
Graph parse_graph_json(std::string_view text);
std::string graph_to_json(const Graph& g);

struct ExecutionPlan {
    std::vector<std::string> order;
    std::map<std::string, std::map<std::string, ParamValue>> resolved_params;
};

ExecutionPlan validate_and_plan(const Graph& graph);

using OutputBundle = std::map<std::string, Value>;
using RunOutputs = std::map<std::string, OutputBundle>;

struct ExecuteOptions {
    // WavReader may open files named by its `path` param.
    bool allow_file_access = true;
};

RunOutputs execute_plan(const ExecutionPlan& plan, const Graph& graph, std::uint64_t seed,
                        const ExecuteOptions& options = {});

/// Output ports of blocks with no outgoing wires, in plan order.
std::vector<PortRef> sink_outputs(const ExecutionPlan& plan, const Graph& graph);

}  // namespace jdsp
