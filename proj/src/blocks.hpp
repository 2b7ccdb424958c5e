#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "jdsp/graph.hpp"
#include "jdsp/random.hpp"

namespace jdsp::blocks {

struct Context {
    const std::string& id;
    const std::map<std::string, ParamValue>& params;
    const std::map<std::string, const Value*>& inputs;
    Rng& rng;
    const ExecuteOptions& options;

    long long integer(const std::string& name) const { return std::get<long long>(params.at(name)); }
    double real(const std::string& name) const { return std::get<double>(params.at(name)); }
    const std::string& text(const std::string& name) const { return std::get<std::string>(params.at(name)); }
    const RealVec& array(const std::string& name) const { return std::get<RealVec>(params.at(name)); }

    template <class T>
    const T* optional_input(const std::string& port) const {
        const auto it = inputs.find(port);
        return it == inputs.end() ? nullptr : &std::get<T>(*it->second);
    }
    template <class T>
    const T& input(const std::string& port) const {
        return std::get<T>(*inputs.at(port));
    }
};

using RunFn = OutputBundle (*)(const Context&);

struct BlockType {
    BlockDescriptor descriptor;
    RunFn run = nullptr;
};

/// Sorted by type name.
const std::vector<BlockType>& registry();
const BlockType* find(std::string_view type_name);

}  // namespace jdsp::blocks
