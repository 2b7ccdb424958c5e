#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "json.hpp"

#include "jdsp/graph.hpp"
#include "oracles.hpp"

using namespace jdsp;
using nlohmann::json;

namespace {

json block(const std::string& id, const std::string& type, json params = json::object()) {
    return {{"id", id}, {"type", type}, {"params", std::move(params)}};
}

json wire(const std::string& from, const std::string& to) { return {{"from", from}, {"to", to}}; }

Graph graph(json blocks, json wires = json::array(), json extra = json::object()) {
    json doc{{"version", 1}, {"blocks", std::move(blocks)}, {"wires", std::move(wires)}};
    for (auto& [k, v] : extra.items()) doc[k] = v;
    return parse_graph_json(doc.dump());
}

std::string code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

Error error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e;
    }
    FAIL("expected an error");
    return Error("", "");
}

json sine_gen(const std::string& id, int length = 64) {
    return block(id, "SignalGenerator", {{"kind", "sine"}, {"freq_hz", 1000}, {"length", length}, {"sample_rate_hz", 8000}});
}

Graph fig4() {
    return graph({sine_gen("gen", 256), block("noise", "AddNoise", {{"snr_db", 5}}),
                  block("design", "FilterDesigner", {{"method", "butterworth"}, {"order", 3}, {"cutoff", 0.6}}),
                  block("filter", "FirIirFilter"), block("fft", "Fft"), block("response", "FrequencyResponse"),
                  block("pz", "PoleZero")},
                 {wire("gen.out", "noise.in"), wire("noise.out", "filter.in"), wire("design.tf", "filter.tf"),
                  wire("filter.out", "fft.in"), wire("filter.tf", "response.tf"), wire("filter.tf", "pz.tf")});
}

bool same(const Value& a, const Value& b) {
    if (a.index() != b.index()) return false;
    return std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            const T& y = std::get<T>(b);
            if constexpr (std::is_same_v<T, Signal>)
                return x.samples == y.samples && x.sample_rate_hz == y.sample_rate_hz;
            else if constexpr (std::is_same_v<T, Spectrum>)
                return x.bins == y.bins;
            else if constexpr (std::is_same_v<T, TransferFunction>)
                return x.b == y.b && x.a == y.a;
            else if constexpr (std::is_same_v<T, FeatureMatrix>)
                return x.data == y.data && x.labels == y.labels && x.cols == y.cols;
            else
                return x == y;
        },
        a);
}

bool same(const RunOutputs& a, const RunOutputs& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [id, bundle] : a) {
        const auto& other = b.at(id);
        if (other.size() != bundle.size()) return false;
        for (const auto& [port, v] : bundle)
            if (!same(v, other.at(port))) return false;
    }
    return true;
}

RunOutputs run(const Graph& g, std::uint64_t seed) { return execute_plan(validate_and_plan(g), g, seed); }

}  // namespace

TEST_CASE("catalog inventory") {
    const auto& cat = block_catalog();
    for (const char* name : {"SignalGenerator", "Fft", "FirIirFilter", "FilterDesigner", "LpcAnalyzer", "KMeans", "Qft",
                             "Iqft", "SnrMeter", "PeakPicker"})
        CHECK(find_block_type(name) != nullptr);
    CHECK(find_block_type("Midi") == nullptr);
    CHECK(std::is_sorted(cat.begin(), cat.end(), [](const auto& a, const auto& b) { return a.type_name < b.type_name; }));
    std::set<std::string> names;
    for (const auto& d : cat) names.insert(d.type_name);
    CHECK(names.size() == cat.size());
    CHECK(&block_catalog() == &cat);
}

TEST_CASE("catalog descriptors are self-consistent") {
    for (const auto& d : block_catalog()) {
        CAPTURE(d.type_name);
        for (const auto& p : d.params) {
            CAPTURE(p.name);
            CHECK_NOTHROW(check_param(p, p.default_value));
            if (p.kind == ParamKind::Enum)
                CHECK(std::find(p.enum_values.begin(), p.enum_values.end(), std::get<std::string>(p.default_value)) !=
                      p.enum_values.end());
        }
        std::set<std::string> ports;
        for (const auto& p : d.inputs) ports.insert(p.name);
        CHECK(ports.size() == d.inputs.size());
        ports.clear();
        for (const auto& p : d.outputs) ports.insert(p.name);
        CHECK(ports.size() == d.outputs.size());
        CHECK_FALSE(d.outputs.empty());
    }
}

TEST_CASE("param checking and coercion") {
    const ParamSpec* len = find_block_type("SignalGenerator")->find_param("length");
    const ParamSpec* freq = find_block_type("SignalGenerator")->find_param("freq_hz");
    const ParamSpec* kind = find_block_type("SignalGenerator")->find_param("kind");
    CHECK(std::get<long long>(check_param(*len, ParamValue{12.0})) == 12);
    CHECK(code_of([&] { check_param(*len, ParamValue{12.5}); }) == "ParamOutOfBounds");
    CHECK(code_of([&] { check_param(*len, ParamValue{0LL}); }) == "ParamOutOfBounds");
    CHECK(std::get<double>(check_param(*freq, ParamValue{300LL})) == 300.0);
    CHECK(code_of([&] { check_param(*freq, ParamValue{std::string("x")}); }) == "ParamOutOfBounds");
    CHECK(code_of([&] { check_param(*kind, ParamValue{std::string("sawtooth")}); }) == "ParamOutOfBounds");
}

TEST_CASE("port refs") {
    CHECK(parse_port_ref("gen1.out") == PortRef{"gen1", "out"});
    CHECK(parse_port_ref("a.b.c") == PortRef{"a", "b.c"});
    CHECK_THROWS_AS(parse_port_ref("nodot"), Error);
    CHECK_THROWS_AS(parse_port_ref(".out"), Error);
}

TEST_CASE("graph json parsing") {
    CHECK(code_of([] { parse_graph_json("{"); }) == "MalformedJson");
    CHECK(code_of([] { parse_graph_json(R"({"version":2,"blocks":[],"wires":[]})"); }) == "UnsupportedVersion");
    CHECK(code_of([] { parse_graph_json(R"({"version":1,"blocks":[],"wires":[],"extra":1})"); }) == "InvalidGraph");
    CHECK(code_of([] { parse_graph_json(R"({"version":1,"blocks":[{"id":"a","type":"Fft","x":1}],"wires":[]})"); }) ==
          "InvalidGraph");
    CHECK(code_of([] { parse_graph_json(R"({"version":1,"blocks":[],"wires":[{"from":"a.b","to":"c.d","z":0}]})"); }) ==
          "InvalidGraph");
    CHECK(code_of([] {
              parse_graph_json(R"({"version":1,"blocks":[{"id":"a","type":"Fft"},{"id":"a","type":"Fft"}],"wires":[]})");
          }) == "DuplicateBlockId");
    const Graph ui = graph(json::array({sine_gen("g")}), json::array(), {{"ui", {{"g", {{"x", 10}, {"y", 20}}}}}});
    CHECK(ui.blocks.size() == 1);
    CHECK_NOTHROW(validate_and_plan(ui));
    const Graph rt = parse_graph_json(graph_to_json(fig4()));
    CHECK(graph_to_json(rt) == graph_to_json(fig4()));
}

TEST_CASE("planning examples") {
    CHECK(validate_and_plan(graph(json::array())).order.empty());
    const Graph chain = graph({block("snr", "SnrMeter"), block("ifft", "Ifft"), block("fft", "Fft"), sine_gen("gen")},
                              {wire("gen.out", "fft.in"), wire("fft.out", "ifft.in"), wire("gen.out", "snr.reference"),
                               wire("ifft.out", "snr.estimate")});
    CHECK(validate_and_plan(chain).order == std::vector<std::string>{"gen", "fft", "ifft", "snr"});
    const Graph cyc = graph({block("B", "Fft"), block("A", "Ifft")}, {wire("A.out", "B.in"), wire("B.out", "A.in")});
    const Error e = error_of([&] { validate_and_plan(cyc); });
    CHECK(e.code() == "CycleDetected");
    CHECK(e.involved == std::vector<std::string>{"A", "B"});
}

TEST_CASE("resolved params are defaulted") {
    const ExecutionPlan p = validate_and_plan(graph({block("f", "Fft"), sine_gen("g")}, {wire("g.out", "f.in")}));
    CHECK(std::get<long long>(p.resolved_params.at("f").at("nfft")) == 0);
    CHECK(std::get<std::string>(p.resolved_params.at("g").at("kind")) == "sine");
    CHECK(std::get<double>(p.resolved_params.at("g").at("amplitude")) == 1.0);
    CHECK(p.resolved_params.at("g").size() == find_block_type("SignalGenerator")->params.size());
}

TEST_CASE("validation errors") {
    CHECK(code_of([] { validate_and_plan(graph({block("x", "Nope")})); }) == "UnknownBlockType");
    CHECK(code_of([] { validate_and_plan(graph({block("x", "Fft", {{"bogus", 1}})})); }) == "UnknownParam");
    const Error oob = error_of([] { validate_and_plan(graph({block("x", "Fft", {{"nfft", -4}})})); });
    CHECK(oob.code() == "ParamOutOfBounds");
    CHECK(oob.block_id() == std::optional<std::string>("x"));
    CHECK(code_of([] { validate_and_plan(graph({sine_gen("g")}, {wire("g.out", "missing.in")})); }) == "DanglingWire");
    CHECK(code_of([] { validate_and_plan(graph({sine_gen("g"), block("f", "Fft")}, {wire("g.nope", "f.in")})); }) ==
          "DanglingWire");
    CHECK(code_of([] {
              validate_and_plan(graph({sine_gen("g"), block("r", "FrequencyResponse")}, {wire("g.out", "r.tf")}));
          }) == "KindMismatch");
    CHECK(code_of([] {
              validate_and_plan(graph({sine_gen("g"), sine_gen("h"), block("f", "Fft")},
                                      {wire("g.out", "f.in"), wire("h.out", "f.in")}));
          }) == "DuplicateInputWire");
}

TEST_CASE("wires respect plan order on random DAGs") {
    std::mt19937_64 g(1);
    for (int t = 0; t < 30; ++t) {
        const int n = 2 + static_cast<int>(g() % 10);
        json blocks = json::array(), wires = json::array();
        std::vector<std::string> ids;
        for (int i = 0; i < n; ++i) ids.push_back("b" + std::to_string(g() % 1000) + "_" + std::to_string(i));
        // Adders with inputs only from earlier blocks form a DAG.
        for (int i = 0; i < n; ++i) {
            blocks.push_back(i == 0 ? sine_gen(ids[0]) : block(ids[i], "Adder"));
            if (i == 0) continue;
            wires.push_back(wire(ids[g() % i] + ".out", ids[i] + ".a"));
            wires.push_back(wire(ids[g() % i] + ".out", ids[i] + ".b"));
        }
        const Graph gr = graph(blocks, wires);
        const ExecutionPlan plan = validate_and_plan(gr);
        CHECK(plan.order.size() == static_cast<std::size_t>(n));
        CHECK(validate_and_plan(gr).order == plan.order);
        auto pos = [&](const std::string& id) { return std::find(plan.order.begin(), plan.order.end(), id) - plan.order.begin(); };
        for (const Wire& w : gr.wires) CHECK(pos(w.from.block) < pos(w.to.block));
    }
}

TEST_CASE("execution examples") {
    const Graph imp = graph({block("g", "SignalGenerator", {{"kind", "impulse"}, {"length", 8}}), block("f", "Fft")},
                            {wire("g.out", "f.in")});
    const Spectrum s = std::get<Spectrum>(run(imp, 0).at("f").at("out"));
    REQUIRE(s.bins.size() == 8);
    for (const cplx& v : s.bins) CHECK(std::abs(v - 1.0) < 1e-15);
    const Graph sine = graph({sine_gen("g"), block("f", "Fft")}, {wire("g.out", "f.in")});
    CHECK(same(run(sine, 3), run(sine, 3)));
}

TEST_CASE("outputs carry exactly the declared ports") {
    const RunOutputs out = run(fig4(), 1);
    for (const auto& [id, bundle] : out) {
        const BlockDescriptor* d = find_block_type(fig4().find_block(id)->type_name);
        CHECK(bundle.size() == d->outputs.size());
        for (const auto& p : d->outputs) {
            REQUIRE(bundle.count(p.name));
            CHECK(kind_of(bundle.at(p.name)) == p.kind);
        }
    }
}

TEST_CASE("runs are pure functions of graph and seed") {
    CHECK(same(run(fig4(), 42), run(fig4(), 42)));
    CHECK_FALSE(same(run(fig4(), 42), run(fig4(), 43)));
    // The seed only reaches noise-bearing blocks.
    const RunOutputs a = run(fig4(), 42), b = run(fig4(), 43);
    CHECK(same(a.at("pz").at("out"), b.at("pz").at("out")));
    CHECK(same(a.at("gen").at("out"), b.at("gen").at("out")));
}

TEST_CASE("removing a sink leaves the other outputs unchanged") {
    const RunOutputs full = run(fig4(), 7);
    const Graph g = fig4();
    for (const char* sink : {"fft", "response", "pz"}) {
        Graph cut = g;
        std::erase_if(cut.blocks, [&](const BlockInstance& b) { return b.id == sink; });
        std::erase_if(cut.wires, [&](const Wire& w) { return w.to.block == sink; });
        const RunOutputs part = run(cut, 7);
        for (const auto& [id, bundle] : part)
            for (const auto& [port, v] : bundle) CHECK(same(v, full.at(id).at(port)));
    }
}

TEST_CASE("execution errors") {
    const Graph unstable = graph({block("g", "SignalGenerator", {{"kind", "impulse"}, {"length", 8}}),
                                  block("f", "FirIirFilter", {{"b", {1.0}}, {"a", {1.0, -1.5}}, {"halt_on_unstable", 1}})},
                                 {wire("g.out", "f.in")});
    const Error e = error_of([&] { run(unstable, 0); });
    CHECK(e.code() == "BlockRuntimeError");
    CHECK(e.block_id() == std::optional<std::string>("f"));
    Graph lenient = unstable;
    lenient.blocks[1].params["halt_on_unstable"] = 0LL;
    CHECK_NOTHROW(run(lenient, 0));
    const Error missing = error_of([] { run(graph({block("f", "Fft")}), 0); });
    CHECK(missing.code() == "MissingInput");
    CHECK(missing.block_id() == std::optional<std::string>("f"));
    const Graph wav = graph({block("w", "WavReader", {{"path", "/nonexistent/file.wav"}})});
    CHECK(error_of([&] { run(wav, 0); }).code() == "BlockRuntimeError");
    ExecuteOptions closed;
    closed.allow_file_access = false;
    const Error denied = error_of([&] { execute_plan(validate_and_plan(wav), wav, 0, closed); });
    CHECK(denied.code() == "BlockRuntimeError");
    CHECK(denied.involved == std::vector<std::string>{"AccessDenied"});
}

TEST_CASE("optional inputs fall back to block defaults") {
    const Graph g = graph({sine_gen("g"), block("f", "FirIirFilter", {{"b", {0.5, 0.5}}})}, {wire("g.out", "f.in")});
    const RunOutputs out = run(g, 0);
    const Signal x = std::get<Signal>(out.at("g").at("out"));
    const Signal y = std::get<Signal>(out.at("f").at("out"));
    for (std::size_t n = 1; n < x.size(); ++n) CHECK(std::abs(y.samples[n] - 0.5 * (x.samples[n] + x.samples[n - 1])) < 1e-15);
    CHECK(std::get<TransferFunction>(out.at("f").at("tf")).b == RealVec{0.5, 0.5});
}

TEST_CASE("sink outputs") {
    const Graph g = fig4();
    const auto sinks = sink_outputs(validate_and_plan(g), g);
    std::set<std::string> names;
    for (const auto& s : sinks) names.insert(s.str());
    CHECK(names == std::set<std::string>{"fft.out", "response.out", "pz.out", "pz.max_pole_magnitude"});
}
