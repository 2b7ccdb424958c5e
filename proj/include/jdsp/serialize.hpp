#pragma once

// Text forms of engine values shared by the CLI and the HTTP service, so both
// paths emit identical numbers for the same run.

#include <string>

#include "json.hpp"

#include "jdsp/classify.hpp"
#include "jdsp/design.hpp"
#include "jdsp/graph.hpp"
#include "jdsp/quantum.hpp"

namespace jdsp {

/// Finite reals as JSON numbers; inf/-inf/nan as the strings "inf", "-inf", "nan".
nlohmann::json json_real(double v);
nlohmann::json json_reals(const RealVec& v);

nlohmann::json value_to_json(const Value& v);
nlohmann::json descriptor_to_json(const BlockDescriptor& d);
nlohmann::json catalog_to_json();
nlohmann::json tf_to_json(const TransferFunction& tf);
nlohmann::json error_to_json(const Error& e);

struct ValueFile {
    std::string extension;  // "csv" or "json"
    std::string text;
};

/// File form written by `jdsp run`: CSV for series and tables, JSON otherwise.
ValueFile value_to_file(const Value& v);

std::string spectrum_csv(const Spectrum& s);
std::string confusion_csv(const ConfusionMatrix& cm);

struct CodecReport {
    CodecConfig config;
    CodecResult result;
};
nlohmann::json codec_report_json(const CodecReport& r);

/// Design requests use the FirSpec / EquirippleSpec / IirSpec field names.
/// FIR: {"method": "kaiser"|"sampling"|"equiripple", ...}.
TransferFunction design_fir_from_json(const nlohmann::json& req);
TransferFunction design_iir_from_json(const nlohmann::json& req);

}  // namespace jdsp
