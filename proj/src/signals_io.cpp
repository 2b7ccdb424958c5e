#include "jdsp/signals_io.hpp"

#include "jdsp/random.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstring>
#include <limits>

namespace jdsp {

double l2_norm(const RealVec& x) noexcept {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double l2_norm(const ComplexVec& x) noexcept {
    double s = 0.0;
    for (const cplx& v : x) s += std::norm(v);
    return std::sqrt(s);
}

WaveKind wave_kind_from_string(std::string_view name) {
    if (name == "sine") return WaveKind::Sine;
    if (name == "square") return WaveKind::Square;
    if (name == "triangle") return WaveKind::Triangle;
    if (name == "impulse") return WaveKind::Impulse;
    if (name == "step") return WaveKind::Step;
    if (name == "white_noise") return WaveKind::WhiteNoise;
    if (name == "dtmf") return WaveKind::Dtmf;
    throw Error("InvalidSpec", "unknown generator kind '" + std::string(name) + "'");
}

std::string_view to_string(WaveKind kind) {
    switch (kind) {
        case WaveKind::Sine: return "sine";
        case WaveKind::Square: return "square";
        case WaveKind::Triangle: return "triangle";
        case WaveKind::Impulse: return "impulse";
        case WaveKind::Step: return "step";
        case WaveKind::WhiteNoise: return "white_noise";
        case WaveKind::Dtmf: return "dtmf";
    }
    return "?";
}

std::pair<double, double> dtmf_frequencies(char digit) {
    static constexpr std::array<double, 4> rows{697.0, 770.0, 852.0, 941.0};
    static constexpr std::array<double, 4> cols{1209.0, 1336.0, 1477.0, 1633.0};
    static constexpr std::string_view keypad = "123A456B789C*0#D";
    const auto pos = keypad.find(digit);
    if (pos == std::string_view::npos) throw Error("InvalidSpec", std::string("bad DTMF digit '") + digit + "'");
    return {rows[pos / 4], cols[pos % 4]};
}

namespace {

bool is_periodic(WaveKind k) {
    return k == WaveKind::Sine || k == WaveKind::Square || k == WaveKind::Triangle;
}

void check_spec(const GeneratorSpec& spec) {
    if (spec.length < 1) throw Error("InvalidSpec", "length must be >= 1");
    if (!(spec.sample_rate_hz > 0.0) || !std::isfinite(spec.sample_rate_hz))
        throw Error("InvalidSpec", "sample rate must be positive");
    if (is_periodic(spec.kind) && !(spec.freq_hz > 0.0 && spec.freq_hz < spec.sample_rate_hz / 2.0))
        throw Error("InvalidSpec", "frequency must lie in (0, fs/2)");
    if (spec.kind == WaveKind::Dtmf) {
        const auto [lo, hi] = dtmf_frequencies(spec.dtmf_digit);
        (void)lo;
        if (hi >= spec.sample_rate_hz / 2.0) throw Error("InvalidSpec", "DTMF tones exceed Nyquist");
    }
}

}  // namespace

Signal generate_signal(const GeneratorSpec& spec, std::mt19937_64& rng) {
    check_spec(spec);
    Signal out;
    out.sample_rate_hz = spec.sample_rate_hz;
    out.samples.resize(static_cast<std::size_t>(spec.length));
    const double fs = spec.sample_rate_hz;
    const double a = spec.amplitude;
    for (std::size_t n = 0; n < out.samples.size(); ++n) {
        const double t = static_cast<double>(n) / fs;
        // Cycle position in [0, 1).
        double cyc = spec.freq_hz * t + spec.phase_rad / (2.0 * kPi);
        cyc -= std::floor(cyc);
        double v = 0.0;
        switch (spec.kind) {
            case WaveKind::Sine: v = a * std::sin(2.0 * kPi * spec.freq_hz * t + spec.phase_rad); break;
            case WaveKind::Square: v = cyc < 0.5 ? a : -a; break;
            case WaveKind::Triangle:
                // 0 at cycle start, peak +a at 1/4, -a at 3/4.
                v = cyc < 0.25 ? 4.0 * cyc : (cyc < 0.75 ? 2.0 - 4.0 * cyc : 4.0 * cyc - 4.0);
                v *= a;
                break;
            case WaveKind::Impulse: v = n == 0 ? a : 0.0; break;
            case WaveKind::Step: v = a; break;
            case WaveKind::WhiteNoise: {
                v = uniform(rng, -a, a);
                break;
            }
            case WaveKind::Dtmf: {
                const auto [row, col] = dtmf_frequencies(spec.dtmf_digit);
                v = 0.5 * a * (std::sin(2.0 * kPi * row * t + spec.phase_rad) +
                               std::sin(2.0 * kPi * col * t + spec.phase_rad));
                break;
            }
        }
        out.samples[n] = v;
    }
    // sin(pi * k) is not exactly zero in floating point; snap the quarter-period
    // lattice values so sine at fs/4 reproduces [0, 1, 0, -1] exactly.
    if (spec.kind == WaveKind::Sine) {
        for (double& v : out.samples)
            if (std::abs(v) < 1e-15 * std::max(1.0, std::abs(a))) v = 0.0;
    }
    return out;
}

Signal generate_signal(const GeneratorSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    return generate_signal(spec, rng);
}

// ---------------------------------------------------------------- WAV

namespace {

std::uint32_t le32(std::span<const std::uint8_t> b, std::size_t off) {
    return static_cast<std::uint32_t>(b[off]) | (static_cast<std::uint32_t>(b[off + 1]) << 8) |
           (static_cast<std::uint32_t>(b[off + 2]) << 16) | (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

std::uint16_t le16(std::span<const std::uint8_t> b, std::size_t off) {
    return static_cast<std::uint16_t>(b[off] | (b[off + 1] << 8));
}

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

void put16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t off, const char* tag) {
    return std::memcmp(b.data() + off, tag, 4) == 0;
}

}  // namespace

Signal read_wav(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 12 || !tag_is(bytes, 0, "RIFF") || !tag_is(bytes, 8, "WAVE"))
        throw Error("CorruptHeader", "not a RIFF/WAVE file");

    bool have_fmt = false;
    std::uint32_t sample_rate = 0;
    Signal out;
    std::size_t off = 12;
    while (off + 8 <= bytes.size()) {
        const std::uint32_t size = le32(bytes, off + 4);
        const std::size_t body = off + 8;
        if (size > bytes.size() - body) throw Error("CorruptHeader", "chunk runs past end of file");
        if (tag_is(bytes, off, "fmt ")) {
            if (size < 16) throw Error("CorruptHeader", "fmt chunk too short");
            const std::uint16_t format = le16(bytes, body);
            const std::uint16_t channels = le16(bytes, body + 2);
            sample_rate = le32(bytes, body + 4);
            const std::uint16_t bits = le16(bytes, body + 14);
            if (format != 1) throw Error("UnsupportedFormat", "only PCM (format 1) is supported");
            if (channels != 1) throw Error("UnsupportedFormat", "only mono is supported");
            if (bits != 16) throw Error("UnsupportedFormat", "only 16-bit samples are supported");
            if (sample_rate == 0) throw Error("CorruptHeader", "zero sample rate");
            have_fmt = true;
        } else if (tag_is(bytes, off, "data")) {
            if (!have_fmt) throw Error("CorruptHeader", "data chunk before fmt chunk");
            out.samples.resize(size / 2);
            for (std::size_t i = 0; i < out.samples.size(); ++i) {
                const auto word = static_cast<std::int16_t>(le16(bytes, body + 2 * i));
                out.samples[i] = static_cast<double>(word) / 32768.0;
            }
            out.sample_rate_hz = sample_rate;
            return out;
        }
        off = body + size + (size & 1u);
    }
    throw Error("CorruptHeader", have_fmt ? "missing data chunk" : "missing fmt chunk");
}

std::vector<std::uint8_t> write_wav(const Signal& signal) {
    for (double v : signal.samples) {
        if (!(std::abs(v) <= 1.0 + 1e-9)) throw Error("OutOfRange", "sample magnitude exceeds 1");
    }
    const auto rate = static_cast<std::uint32_t>(std::lround(signal.sample_rate_hz));
    const auto data_bytes = static_cast<std::uint32_t>(signal.samples.size() * 2);
    std::vector<std::uint8_t> out;
    out.reserve(44 + data_bytes);
    out.insert(out.end(), {'R', 'I', 'F', 'F'});
    put32(out, 36 + data_bytes);
    out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
    put32(out, 16);
    put16(out, 1);  // PCM
    put16(out, 1);  // mono
    put32(out, rate);
    put32(out, rate * 2);
    put16(out, 2);
    put16(out, 16);
    out.insert(out.end(), {'d', 'a', 't', 'a'});
    put32(out, data_bytes);
    for (double v : signal.samples) {
        // std::round is half-away-from-zero.
        double q = std::round(v * 32768.0);
        q = std::clamp(q, -32767.0, 32767.0);
        put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
    }
    return out;
}

// ---------------------------------------------------------------- CSV

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string export_series_csv(std::string_view /*name*/, const RealVec& x, const std::vector<CsvColumn>& columns) {
    for (const auto& c : columns) {
        if (c.values.size() != x.size())
            throw Error("LengthMismatch", "column '" + c.label + "' length differs from x");
    }
    std::string out = "x";
    for (const auto& c : columns) out += "," + c.label;
    for (std::size_t i = 0; i < x.size(); ++i) {
        out += '\n';
        out += format_real(x[i]);
        for (const auto& c : columns) out += "," + format_real(c.values[i]);
    }
    return out;
}

namespace {
constexpr char kB64[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
}

std::string base64_encode(std::span<const std::uint8_t> bytes) {
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    for (std::size_t i = 0; i < bytes.size(); i += 3) {
        std::uint32_t v = static_cast<std::uint32_t>(bytes[i]) << 16;
        if (i + 1 < bytes.size()) v |= static_cast<std::uint32_t>(bytes[i + 1]) << 8;
        if (i + 2 < bytes.size()) v |= bytes[i + 2];
        out += kB64[(v >> 18) & 63];
        out += kB64[(v >> 12) & 63];
        out += i + 1 < bytes.size() ? kB64[(v >> 6) & 63] : '=';
        out += i + 2 < bytes.size() ? kB64[v & 63] : '=';
    }
    return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
    std::vector<std::uint8_t> out;
    std::uint32_t acc = 0;
    int bits = 0;
    bool padding = false;
    for (char c : text) {
        if (c == ' ' || c == '\n' || c == '\r' || c == '\t') continue;
        if (c == '=') {
            padding = true;
            continue;
        }
        const char* pos = std::strchr(kB64, c);
        if (c == '\0' || pos == nullptr || padding) throw Error("InvalidBase64", "unexpected character in base64 text");
        acc = (acc << 6) | static_cast<std::uint32_t>(pos - kB64);
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push_back(static_cast<std::uint8_t>((acc >> bits) & 0xFF));
        }
    }
    if (bits >= 6) throw Error("InvalidBase64", "truncated base64 text");
    return out;
}

}  // namespace jdsp
