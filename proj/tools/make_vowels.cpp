// Writes synthetic /a/ and /i/ vowels (noise-driven two-formant resonators)
// as a.wav and i.wav for graphs/phoneme_kmeans.json.
// Usage: make_vowels [out_dir] [seed]

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "jdsp/classify.hpp"
#include "jdsp/signals_io.hpp"

int main(int argc, char** argv) {
    const std::filesystem::path dir = argc > 1 ? argv[1] : ".";
    const std::uint64_t seed = argc > 2 ? std::stoull(argv[2]) : 1;
    jdsp::Rng rng(seed);
    const struct {
        const char* name;
        std::vector<jdsp::Formant> formants;
    } vowels[] = {{"a.wav", {{700, 80}, {1200, 90}}}, {"i.wav", {{300, 60}, {2300, 100}}}};
    for (const auto& v : vowels) {
        jdsp::Signal s = jdsp::synthesize_resonator(v.formants, 8000, 8192, rng);
        double peak = 0;
        for (double x : s.samples) peak = std::max(peak, std::abs(x));
        for (double& x : s.samples) x *= 0.9 / peak;
        const auto bytes = jdsp::write_wav(s);
        std::ofstream(dir / v.name, std::ios::binary).write(reinterpret_cast<const char*>(bytes.data()),
                                                            static_cast<std::streamsize>(bytes.size()));
        std::cout << (dir / v.name).string() << "\n";
    }
    return 0;
}
