#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jdsp {

using cplx = std::complex<double>;
using RealVec = std::vector<double>;
using ComplexVec = std::vector<cplx>;

inline constexpr double kPi = 3.14159265358979323846;

/// Engine error. `code` is the stable machine-readable name surfaced over
/// the CLI and HTTP (e.g. "CycleDetected"); `detail` is for humans.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)), detail_(detail) {}

    Error(std::string code, const std::string& detail, std::string block_id)
        : Error(std::move(code), detail) {
        block_id_ = std::move(block_id);
    }

    const std::string& code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }
    const std::optional<std::string>& block_id() const noexcept { return block_id_; }

    /// Block ids involved (cycle members for CycleDetected).
    std::vector<std::string> involved;

private:
    std::string code_;
    std::string detail_;
    std::optional<std::string> block_id_;
};

/// Sampled time-domain data.
struct Signal {
    RealVec samples;
    double sample_rate_hz = 1.0;

    std::size_t size() const noexcept { return samples.size(); }
};

inline bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_power_of_two(std::size_t n) noexcept {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

double l2_norm(const RealVec& x) noexcept;
double l2_norm(const ComplexVec& x) noexcept;

}  // namespace jdsp
