#include "jdsp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <set>

#include "json.hpp"

#include "blocks.hpp"
#include "jdsp/signals_io.hpp"

namespace jdsp {

using nlohmann::json;

std::string_view to_string(ValueKind kind) {
    switch (kind) {
        case ValueKind::Signal: return "signal";
        case ValueKind::Spectrum: return "spectrum";
        case ValueKind::TransferFunction: return "transfer_function";
        case ValueKind::FeatureMatrix: return "feature_matrix";
        case ValueKind::Scalar: return "scalar";
        case ValueKind::LabelVector: return "label_vector";
    }
    return "?";
}

std::string_view to_string(ParamKind kind) {
    switch (kind) {
        case ParamKind::Int: return "int";
        case ParamKind::Real: return "real";
        case ParamKind::String: return "string";
        case ParamKind::Enum: return "enum";
        case ParamKind::RealArray: return "real-array";
    }
    return "?";
}

ValueKind kind_of(const Value& v) { return static_cast<ValueKind>(v.index()); }

const ParamSpec* BlockDescriptor::find_param(std::string_view name) const {
    for (const auto& p : params)
        if (p.name == name) return &p;
    return nullptr;
}

const PortSpec* BlockDescriptor::find_input(std::string_view name) const {
    for (const auto& p : inputs)
        if (p.name == name) return &p;
    return nullptr;
}

const PortSpec* BlockDescriptor::find_output(std::string_view name) const {
    for (const auto& p : outputs)
        if (p.name == name) return &p;
    return nullptr;
}

const std::vector<BlockDescriptor>& block_catalog() {
    static const std::vector<BlockDescriptor> catalog = [] {
        std::vector<BlockDescriptor> out;
        for (const auto& t : blocks::registry()) out.push_back(t.descriptor);
        return out;
    }();
    return catalog;
}

const BlockDescriptor* find_block_type(std::string_view type_name) {
    const blocks::BlockType* t = blocks::find(type_name);
    return t ? &t->descriptor : nullptr;
}

ParamValue check_param(const ParamSpec& spec, const ParamValue& v) {
    auto fail = [&](const std::string& why) -> Error { return Error("ParamOutOfBounds", "param '" + spec.name + "' " + why); };
    auto check_range = [&](double x) {
        if (!std::isfinite(x)) throw fail("must be finite");
        if (spec.min && x < *spec.min) throw fail("below minimum " + format_real(*spec.min));
        if (spec.max && x > *spec.max) throw fail("above maximum " + format_real(*spec.max));
    };
    switch (spec.kind) {
        case ParamKind::Int: {
            long long i = 0;
            if (const auto* p = std::get_if<long long>(&v)) {
                i = *p;
            } else if (const auto* d = std::get_if<double>(&v)) {
                if (!std::isfinite(*d) || std::trunc(*d) != *d || std::abs(*d) > 9.0e15) throw fail("expects an integer");
                i = static_cast<long long>(*d);
            } else {
                throw fail("expects an integer");
            }
            check_range(static_cast<double>(i));
            return i;
        }
        case ParamKind::Real: {
            double d = 0.0;
            if (const auto* p = std::get_if<long long>(&v))
                d = static_cast<double>(*p);
            else if (const auto* q = std::get_if<double>(&v))
                d = *q;
            else
                throw fail("expects a number");
            check_range(d);
            return d;
        }
        case ParamKind::String: {
            if (!std::holds_alternative<std::string>(v)) throw fail("expects a string");
            return v;
        }
        case ParamKind::Enum: {
            const auto* s = std::get_if<std::string>(&v);
            if (!s) throw fail("expects a string");
            if (std::find(spec.enum_values.begin(), spec.enum_values.end(), *s) == spec.enum_values.end())
                throw fail("has no option '" + *s + "'");
            return v;
        }
        case ParamKind::RealArray: {
            RealVec arr;
            if (const auto* a = std::get_if<RealVec>(&v))
                arr = *a;
            else
                throw fail("expects an array of numbers");
            for (double x : arr)
                if (!std::isfinite(x)) throw fail("must contain finite numbers");
            const auto n = static_cast<double>(arr.size());
            if (spec.min && n < *spec.min) throw fail("needs at least " + format_real(*spec.min) + " elements");
            if (spec.max && n > *spec.max) throw fail("allows at most " + format_real(*spec.max) + " elements");
            return arr;
        }
    }
    throw fail("has an unknown kind");
}

PortRef parse_port_ref(std::string_view text) {
    const auto dot = text.find('.');
    if (dot == std::string_view::npos || dot == 0 || dot + 1 == text.size())
        throw Error("InvalidGraph", "wire endpoint '" + std::string(text) + "' is not of the form block.port");
    return PortRef{std::string(text.substr(0, dot)), std::string(text.substr(dot + 1))};
}

const BlockInstance* Graph::find_block(std::string_view id) const {
    for (const auto& b : blocks)
        if (b.id == id) return &b;
    return nullptr;
}

// ---------------------------------------------------------------- JSON

namespace {

bool is_identifier(const std::string& s) {
    if (s.empty() || s.size() > 128) return false;
    const auto c0 = static_cast<unsigned char>(s[0]);
    if (!(std::isalpha(c0) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char ch) {
        const auto c = static_cast<unsigned char>(ch);
        return std::isalnum(c) || ch == '_' || ch == '-';
    });
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw Error("InvalidGraph", "unknown field '" + it.key() + "' in " + where);
    }
}

ParamValue param_from_json(const json& j, const std::string& where) {
    if (j.is_boolean()) return static_cast<long long>(j.get<bool>() ? 1 : 0);
    if (j.is_number_integer()) return j.get<long long>();
    if (j.is_number_float()) return j.get<double>();
    if (j.is_string()) return j.get<std::string>();
    if (j.is_array()) {
        RealVec v;
        for (const auto& e : j) {
            if (!e.is_number()) throw Error("InvalidGraph", "array param " + where + " must contain only numbers");
            v.push_back(e.get<double>());
        }
        return v;
    }
    throw Error("InvalidGraph", "param " + where + " has an unsupported JSON type");
}

json param_to_json(const ParamValue& v) {
    return std::visit([](const auto& x) { return json(x); }, v);
}

}  // namespace

Graph parse_graph_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error("MalformedJson", e.what());
    }
    if (!doc.is_object()) throw Error("InvalidGraph", "graph must be a JSON object");
    reject_unknown_keys(doc, {"version", "blocks", "wires", "ui"}, "graph");

    Graph g;
    if (!doc.contains("version") || !doc["version"].is_number_integer())
        throw Error("InvalidGraph", "graph needs an integer 'version'");
    g.version = doc["version"].get<int>();
    if (g.version != 1) throw Error("UnsupportedVersion", "only version 1 graphs are supported");

    if (!doc.contains("blocks") || !doc["blocks"].is_array()) throw Error("InvalidGraph", "graph needs a 'blocks' array");
    std::set<std::string> ids;
    for (const auto& jb : doc["blocks"]) {
        if (!jb.is_object()) throw Error("InvalidGraph", "each block must be an object");
        reject_unknown_keys(jb, {"id", "type", "params"}, "block");
        if (!jb.contains("id") || !jb["id"].is_string()) throw Error("InvalidGraph", "block needs a string 'id'");
        if (!jb.contains("type") || !jb["type"].is_string()) throw Error("InvalidGraph", "block needs a string 'type'");
        BlockInstance b;
        b.id = jb["id"].get<std::string>();
        b.type_name = jb["type"].get<std::string>();
        if (!is_identifier(b.id)) throw Error("InvalidGraph", "block id '" + b.id + "' is not an identifier");
        if (!ids.insert(b.id).second) throw Error("DuplicateBlockId", "block id '" + b.id + "' is used twice", b.id);
        if (jb.contains("params")) {
            const json& jp = jb["params"];
            if (!jp.is_object()) throw Error("InvalidGraph", "params of '" + b.id + "' must be an object");
            for (auto it = jp.begin(); it != jp.end(); ++it)
                b.params[it.key()] = param_from_json(it.value(), b.id + "." + it.key());
        }
        g.blocks.push_back(std::move(b));
    }

    if (doc.contains("wires")) {
        if (!doc["wires"].is_array()) throw Error("InvalidGraph", "'wires' must be an array");
        for (const auto& jw : doc["wires"]) {
            if (!jw.is_object()) throw Error("InvalidGraph", "each wire must be an object");
            reject_unknown_keys(jw, {"from", "to"}, "wire");
            if (!jw.contains("from") || !jw["from"].is_string() || !jw.contains("to") || !jw["to"].is_string())
                throw Error("InvalidGraph", "wire needs string 'from' and 'to'");
            g.wires.push_back({parse_port_ref(jw["from"].get<std::string>()), parse_port_ref(jw["to"].get<std::string>())});
        }
    }
    return g;
}

std::string graph_to_json(const Graph& g) {
    json doc;
    doc["version"] = g.version;
    doc["blocks"] = json::array();
    for (const auto& b : g.blocks) {
        json jb{{"id", b.id}, {"type", b.type_name}, {"params", json::object()}};
        for (const auto& [k, v] : b.params) jb["params"][k] = param_to_json(v);
        doc["blocks"].push_back(jb);
    }
    doc["wires"] = json::array();
    for (const auto& w : g.wires) doc["wires"].push_back({{"from", w.from.str()}, {"to", w.to.str()}});
    return doc.dump();
}

// ---------------------------------------------------------------- planning

namespace {

// Some cycle among `remaining` (each of which has a predecessor in the set),
// in wire direction, starting from its smallest id.
std::vector<std::string> find_cycle(const std::set<std::string>& remaining,
                                    const std::map<std::string, std::set<std::string>>& preds) {
    std::vector<std::string> path;
    std::map<std::string, std::size_t> seen;
    std::string v = *remaining.begin();
    while (!seen.count(v)) {
        seen[v] = path.size();
        path.push_back(v);
        const auto& ps = preds.at(v);
        auto it = std::find_if(ps.begin(), ps.end(), [&](const std::string& p) { return remaining.count(p) > 0; });
        v = *it;
    }
    std::vector<std::string> cycle(path.begin() + static_cast<std::ptrdiff_t>(seen[v]), path.end());
    std::reverse(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
    return cycle;
}

}  // namespace

ExecutionPlan validate_and_plan(const Graph& graph) {
    if (graph.version != 1) throw Error("UnsupportedVersion", "only version 1 graphs are supported");
    ExecutionPlan plan;
    std::map<std::string, const BlockDescriptor*> desc;
    for (const auto& b : graph.blocks) {
        if (desc.count(b.id)) throw Error("DuplicateBlockId", "block id '" + b.id + "' is used twice", b.id);
        const BlockDescriptor* d = find_block_type(b.type_name);
        if (!d) throw Error("UnknownBlockType", "no block type '" + b.type_name + "'", b.id);
        desc[b.id] = d;
        auto& resolved = plan.resolved_params[b.id];
        for (const auto& [name, value] : b.params) {
            const ParamSpec* ps = d->find_param(name);
            if (!ps) throw Error("UnknownParam", b.type_name + " has no param '" + name + "'", b.id);
            try {
                resolved[name] = check_param(*ps, value);
            } catch (Error& e) {
                throw Error(e.code(), e.detail(), b.id);
            }
        }
        for (const auto& ps : d->params)
            if (!resolved.count(ps.name)) resolved[ps.name] = ps.default_value;
    }

    std::map<std::string, std::set<std::string>> succ, preds;
    std::map<std::string, int> indegree;
    for (const auto& b : graph.blocks) {
        succ[b.id];
        preds[b.id];
        indegree[b.id] = 0;
    }
    std::set<PortRef> wired_inputs;
    for (const auto& w : graph.wires) {
        const auto from = desc.find(w.from.block);
        if (from == desc.end()) throw Error("DanglingWire", "wire source block '" + w.from.block + "' does not exist");
        const auto to = desc.find(w.to.block);
        if (to == desc.end()) throw Error("DanglingWire", "wire target block '" + w.to.block + "' does not exist");
        const PortSpec* out = from->second->find_output(w.from.port);
        if (!out) throw Error("DanglingWire", "'" + w.from.str() + "' is not an output port", w.from.block);
        const PortSpec* in = to->second->find_input(w.to.port);
        if (!in) throw Error("DanglingWire", "'" + w.to.str() + "' is not an input port", w.to.block);
        if (out->kind != in->kind)
            throw Error("KindMismatch",
                        w.from.str() + " produces " + std::string(to_string(out->kind)) + " but " + w.to.str() +
                            " expects " + std::string(to_string(in->kind)),
                        w.to.block);
        if (!wired_inputs.insert(w.to).second)
            throw Error("DuplicateInputWire", "input '" + w.to.str() + "' has more than one wire", w.to.block);
        if (succ[w.from.block].insert(w.to.block).second) ++indegree[w.to.block];
        preds[w.to.block].insert(w.from.block);
    }

    std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
    for (const auto& [id, deg] : indegree)
        if (deg == 0) ready.push(id);
    while (!ready.empty()) {
        std::string v = ready.top();
        ready.pop();
        plan.order.push_back(v);
        for (const auto& s : succ[v])
            if (--indegree[s] == 0) ready.push(s);
    }
    if (plan.order.size() != graph.blocks.size()) {
        std::set<std::string> remaining;
        for (const auto& [id, deg] : indegree)
            if (deg > 0) remaining.insert(id);
        const auto cycle = find_cycle(remaining, preds);
        std::string listing;
        for (const auto& id : cycle) listing += (listing.empty() ? "" : " -> ") + id;
        Error e("CycleDetected", "feedback loop " + listing + " -> " + cycle.front(), cycle.front());
        e.involved = cycle;
        throw e;
    }
    return plan;
}

// ---------------------------------------------------------------- execution

RunOutputs execute_plan(const ExecutionPlan& plan, const Graph& graph, std::uint64_t seed, const ExecuteOptions& options) {
    if (plan.order.size() != graph.blocks.size())
        throw Error("InvalidPlan", "plan does not cover the graph's blocks");
    RunOutputs results;
    for (const auto& id : plan.order) {
        const BlockInstance* inst = graph.find_block(id);
        if (!inst || results.count(id)) throw Error("InvalidPlan", "plan lists block '" + id + "' incorrectly");
        const blocks::BlockType* type = blocks::find(inst->type_name);
        if (!type) throw Error("UnknownBlockType", "no block type '" + inst->type_name + "'", id);
        const auto params = plan.resolved_params.find(id);
        if (params == plan.resolved_params.end()) throw Error("InvalidPlan", "no resolved params for '" + id + "'");

        std::map<std::string, const Value*> inputs;
        for (const auto& w : graph.wires) {
            if (w.to.block != id) continue;
            const auto src = results.find(w.from.block);
            if (src == results.end()) throw Error("InvalidPlan", "'" + id + "' runs before its producer '" + w.from.block + "'");
            const auto val = src->second.find(w.from.port);
            if (val == src->second.end()) throw Error("InvalidPlan", "missing value for " + w.from.str());
            inputs[w.to.port] = &val->second;
        }
        for (const auto& port : type->descriptor.inputs)
            if (port.required && !inputs.count(port.name))
                throw Error("MissingInput", "required input '" + id + "." + port.name + "' is not wired", id);

        Rng rng = derive_rng(seed, id);
        blocks::Context ctx{id, params->second, inputs, rng, options};
        OutputBundle out;
        try {
            out = type->run(ctx);
        } catch (const Error& e) {
            Error wrapped("BlockRuntimeError", e.code() + ": " + e.detail(), id);
            wrapped.involved = {e.code()};
            throw wrapped;
        } catch (const std::exception& e) {
            Error wrapped("BlockRuntimeError", std::string("InternalError: ") + e.what(), id);
            wrapped.involved = {"InternalError"};
            throw wrapped;
        }
        for (const auto& port : type->descriptor.outputs) {
            const auto it = out.find(port.name);
            if (it == out.end() || kind_of(it->second) != port.kind)
                throw Error("BlockRuntimeError", "InternalError: output '" + port.name + "' missing or mistyped", id);
        }
        if (out.size() != type->descriptor.outputs.size())
            throw Error("BlockRuntimeError", "InternalError: undeclared outputs", id);
        results[id] = std::move(out);
    }
    return results;
}

std::vector<PortRef> sink_outputs(const ExecutionPlan& plan, const Graph& graph) {
    std::set<std::string> has_consumer;
    for (const auto& w : graph.wires) has_consumer.insert(w.from.block);
    std::vector<PortRef> out;
    for (const auto& id : plan.order) {
        if (has_consumer.count(id)) continue;
        const BlockInstance* b = graph.find_block(id);
        const BlockDescriptor* d = b ? find_block_type(b->type_name) : nullptr;
        if (!d) continue;
        for (const auto& p : d->outputs) out.push_back({id, p.name});
    }
    return out;
}

}  // namespace jdsp
