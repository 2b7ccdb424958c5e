#include <cmath>

#include "doctest.h"
#include "json.hpp"

#include "jdsp/serialize.hpp"

using namespace jdsp;
using nlohmann::json;

TEST_CASE("non-finite reals") {
    CHECK(json_real(1.5) == 1.5);
    CHECK(json_real(INFINITY) == "inf");
    CHECK(json_real(-INFINITY) == "-inf");
    CHECK(json_real(NAN) == "nan");
    CHECK(value_to_json(Value{INFINITY})["value"] == "inf");
}

TEST_CASE("value json forms") {
    const json s = value_to_json(Value{Signal{{1, 2}, 8000}});
    CHECK(s["kind"] == "signal");
    CHECK(s["sample_rate_hz"] == 8000.0);
    CHECK(s["samples"] == json::array({1.0, 2.0}));
    Spectrum sp;
    sp.bins = {cplx(1, 2), cplx(3, -4)};
    const json j = value_to_json(Value{sp});
    CHECK(j["normalization"] == "unnormalized_dft");
    CHECK(j["re"] == json::array({1.0, 3.0}));
    CHECK(j["im"] == json::array({2.0, -4.0}));
    CHECK(value_to_json(Value{TransferFunction{{1, 2}, {1}}}) == json{{"kind", "transfer_function"}, {"b", {1.0, 2.0}}, {"a", {1.0}}});
    CHECK(value_to_json(Value{LabelVector{0, 2}})["values"] == json::array({0, 2}));
    CHECK(tf_to_json({{0.5}, {1, -0.5}}) == json{{"b", {0.5}}, {"a", {1.0, -0.5}}});
}

TEST_CASE("file forms") {
    const ValueFile sig = value_to_file(Value{Signal{{0.25, -1}, 2}});
    CHECK(sig.extension == "csv");
    CHECK(sig.text == "x,value\n0,0.25\n1,-1\n");
    Spectrum sp;
    sp.bins = {cplx(2, 0), cplx(0, 0)};
    sp.sample_rate_hz = 8;
    const std::string csv = spectrum_csv(sp);
    CHECK(csv.rfind("bin,freq_hz,re,im,mag,mag_db\n0,0,2,0,2,", 0) == 0);
    FeatureMatrix pz;
    pz.cols = 2;
    pz.column_names = {"re", "im"};
    pz.data = {0.5, NAN};
    pz.labels = {0};
    pz.layout = "pole_zero";
    const ValueFile f = value_to_file(Value{pz});
    CHECK(f.extension == "csv");
    CHECK(f.text.find("nan") == std::string::npos);
    CHECK(value_to_file(Value{2.0}).extension == "json");
}

TEST_CASE("confusion csv and errors") {
    ConfusionMatrix cm = confusion_matrix({0, 1, 1}, {0, 1, 0}, 2);
    cm.class_names = {"a", "i"};
    const std::string csv = confusion_csv(cm);
    CHECK(csv.rfind("a,i\n1,0\n1,1\n", 0) == 0);
    CHECK(csv.find("accuracy,0.66666666666") != std::string::npos);
    const json e = error_to_json(Error("CycleDetected", "A -> B -> A", "A"));
    CHECK(e == json{{"error", "CycleDetected"}, {"detail", "A -> B -> A"}, {"block_id", "A"}});
    CHECK_FALSE(error_to_json(Error("X", "y")).contains("block_id"));
}

TEST_CASE("codec report") {
    CodecReport r;
    r.config = CodecConfig{3, 1, {0.01, 100, 7}};
    r.result.snr_db = INFINITY;
    r.result.retained = {1, 7};
    const json j = codec_report_json(r);
    CHECK(j == json{{"n_qubits", 3}, {"peaks", 1}, {"depolarizing_p", 0.01}, {"shots", 100}, {"seed", 7}, {"snr_db", "inf"},
                    {"retained_bins", {1, 7}}});
}

TEST_CASE("design requests") {
    CHECK(design_fir_from_json({{"method", "sampling"}, {"desired_mag", {1, 1, 1}}}).b.size() == 3);
    CHECK_THROWS_AS(design_fir_from_json({{"method", "magic"}}), Error);
    const TransferFunction tf = design_iir_from_json({{"family", "chebyshev2"}, {"order", 3}, {"cutoff", 1.0}, {"stopband_atten_db", 30}});
    CHECK(tf.a.size() == 4);
}
