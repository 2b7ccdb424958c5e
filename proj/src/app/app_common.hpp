#pragma once

#include <string>

#include "jdsp/serialize.hpp"

namespace jdsp {

/// Codec over the first 2^n samples of `x` (shorter input is zero-padded by
/// the encoder).
CodecReport run_codec(const RealVec& x, const CodecConfig& cfg);

/// Failures of the engine itself rather than of the request: HTTP 500, CLI exit 2.
bool is_engine_fault(const std::string& code);

}  // namespace jdsp
