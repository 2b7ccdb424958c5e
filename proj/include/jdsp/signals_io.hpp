#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jdsp/common.hpp"

namespace jdsp {

enum class WaveKind { Sine, Square, Triangle, Impulse, Step, WhiteNoise, Dtmf };

WaveKind wave_kind_from_string(std::string_view name);
std::string_view to_string(WaveKind kind);

struct GeneratorSpec {
    WaveKind kind = WaveKind::Sine;
    double freq_hz = 1000.0;
    double amplitude = 1.0;
    int length = 256;
    double sample_rate_hz = 8000.0;
    double phase_rad = 0.0;
    char dtmf_digit = '5';
    std::uint64_t seed = 0;  // white_noise only
};

/// Row/column tone pair of a DTMF keypad digit. Throws InvalidSpec for
/// characters outside 0-9, *, #, A-D.
std::pair<double, double> dtmf_frequencies(char digit);

Signal generate_signal(const GeneratorSpec& spec);

/// Same as above but noise is drawn from `rng` instead of `spec.seed`.
Signal generate_signal(const GeneratorSpec& spec, std::mt19937_64& rng);

/// PCM16 mono RIFF/WAVE only.
Signal read_wav(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_wav(const Signal& signal);

struct CsvColumn {
    std::string label;
    RealVec values;
};

/// Header `x,label1,...` then one row per index, LF-separated, no trailing LF. The `name`
/// argument is informational (it names the series for callers writing files).
std::string export_series_csv(std::string_view name, const RealVec& x, const std::vector<CsvColumn>& columns);

/// Shortest round-trip decimal representation (at least 12 significant
/// digits survive by construction). Non-finite values print as inf/-inf/nan.
std::string format_real(double v);

std::string base64_encode(std::span<const std::uint8_t> bytes);
/// Standard alphabet; padding optional, whitespace ignored. Errors: InvalidBase64.
std::vector<std::uint8_t> base64_decode(std::string_view text);

}  // namespace jdsp
