// Acceptance checks: one PASS/FAIL line per criterion.
// Usage: acceptance <path to jdsp executable> <path to filter lab graph json>

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"

#include "jdsp/classify.hpp"
#include "jdsp/design.hpp"
#include "jdsp/filter.hpp"
#include "jdsp/lpc.hpp"
#include "jdsp/quantum.hpp"
#include "jdsp/spectral.hpp"
#include "oracles.hpp"

using namespace jdsp;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string note;
};

class Check {
public:
    void require(bool ok, const std::string& what) {
        if (!ok && out_.pass) out_.note = what;
        out_.pass = out_.pass && ok;
    }
    Outcome result() const { return out_; }

private:
    Outcome out_;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(4);
    s << v;
    return s.str();
}

double mag_z(const TransferFunction& tf, double w) {
    const cplx zi = std::polar(1.0, -w);
    cplx nb = 0, na = 0;
    for (std::size_t k = tf.b.size(); k-- > 0;) nb = nb * zi + tf.b[k];
    for (std::size_t k = tf.a.size(); k-- > 0;) na = na * zi + tf.a[k];
    return std::abs(nb / na);
}

double db(double m) { return 20 * std::log10(m); }

RealVec stable_denominator(std::mt19937_64& g, int order) {
    std::uniform_real_distribution<double> r(0.05, 0.95), th(0.0, oracle::pi);
    ComplexVec roots;
    while (static_cast<int>(roots.size()) + 2 <= order) {
        const cplx p = std::polar(r(g), th(g));
        roots.push_back(p);
        roots.push_back(std::conj(p));
    }
    if (static_cast<int>(roots.size()) < order) roots.push_back(r(g) * (g() % 2 ? 1 : -1));
    return expand_roots(roots, 1.0);
}

// 1. FFT vs direct DFT and Parseval.
Outcome fft_oracle() {
    Check c;
    const auto start = Clock::now();
    std::mt19937_64 g(1001);
    const std::size_t sizes[] = {8, 64, 256, 1024};
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = sizes[t % 4];
        const auto x = oracle::random_complex(g, n);
        const auto fx = fft(x, false);
        const auto d = oracle::dft(x);
        double err = 0, ex = 0, ef = 0;
        for (std::size_t k = 0; k < n; ++k) {
            err = std::max(err, std::abs(fx[k] - d[k]));
            ex += std::norm(x[k]);
            ef += std::norm(fx[k]);
        }
        worst = std::max(worst, err / oracle::norm2(x));
        c.require(err <= 1e-9 * oracle::norm2(x), "dft mismatch at N=" + std::to_string(n));
        c.require(std::abs(ex - ef / n) <= 1e-9 * ex, "parseval at N=" + std::to_string(n));
    }
    const double secs = seconds_since(start);
    c.require(secs < 5.0, "runtime " + fmt(secs) + " s");
    Outcome o = c.result();
    if (o.pass) o.note = "max err/|x| " + fmt(worst) + ", " + fmt(secs) + " s";
    return o;
}

// 2. Linearity, time invariance, closed-form impulse response.
Outcome filter_identities() {
    Check c;
    std::mt19937_64 g(1002);
    for (int t = 0; t < 50; ++t) {
        const int order = 1 + static_cast<int>(g() % 10);
        const TransferFunction tf{oracle::random_reals(g, 1 + g() % 11), stable_denominator(g, order)};
        const RealVec x = oracle::random_reals(g, 200), y = oracle::random_reals(g, 200);
        const double al = 0.5 + (g() % 100) / 50.0, be = -1.3;
        RealVec mix(200);
        for (int i = 0; i < 200; ++i) mix[i] = al * x[i] + be * y[i];
        const RealVec fm = filter_samples(tf, mix), fx = filter_samples(tf, x), fy = filter_samples(tf, y);
        double scale = 0;
        for (int i = 0; i < 200; ++i) scale = std::max(scale, std::abs(al * fx[i]) + std::abs(be * fy[i]));
        for (int i = 0; i < 200; ++i)
            c.require(std::abs(fm[i] - (al * fx[i] + be * fy[i])) <= 1e-10 * std::max(scale, 1e-300), "linearity");
        RealVec imp(200, 0.0), shifted(200, 0.0);
        imp[0] = 1;
        const std::size_t s = 1 + g() % 50;
        shifted[s] = 1;
        const RealVec h = filter_samples(tf, imp), hs = filter_samples(tf, shifted);
        double hmax = 0;
        for (double v : h) hmax = std::max(hmax, std::abs(v));
        for (std::size_t i = 0; i < 200; ++i)
            c.require(std::abs(hs[i] - (i >= s ? h[i - s] : 0.0)) <= 1e-10 * hmax, "time invariance");
    }
    const RealVec h = impulse_response({{1}, {1, -0.9}}, 51).samples;
    for (int n = 0; n <= 50; ++n) c.require(std::abs(h[n] - std::pow(0.9, n)) <= 1e-12, "0.9^n at n=" + std::to_string(n));
    return c.result();
}

// 3. Root finding round trip.
Outcome root_round_trip() {
    Check c;
    std::mt19937_64 g(1003);
    std::uniform_real_distribution<double> rad(0.0, 2.0), th(0.0, oracle::pi);
    double worst = 0;
    for (int t = 0; t < 200; ++t) {
        const int degree = 1 + static_cast<int>(g() % 12);
        ComplexVec roots;
        while (static_cast<int>(roots.size()) + 2 <= degree && g() % 4 != 0) {
            const cplx p = std::polar(rad(g), th(g));
            roots.push_back(p);
            roots.push_back(std::conj(p));
        }
        while (static_cast<int>(roots.size()) < degree) roots.push_back(rad(g) * (g() % 2 ? 1.0 : -1.0));
        const double d = oracle::set_distance(find_roots(expand_roots(roots, 1.0)), roots);
        worst = std::max(worst, d);
        c.require(d <= 1e-8, "set distance " + fmt(d) + " at degree " + std::to_string(degree));
    }
    Outcome o = c.result();
    if (o.pass) o.note = "worst distance " + fmt(worst);
    return o;
}

// 4. Kaiser design.
Outcome kaiser_design() {
    Check c;
    const double beta = kaiser_params(60, 0.1 * kPi).beta;
    c.require(std::abs(beta - 5.65326) <= 1e-5, "beta " + fmt(beta));
    FirSpec s;
    s.passband_edge = 0.2 * kPi;
    s.stopband_edge = 0.3 * kPi;
    s.stopband_atten_db = 60;
    const TransferFunction tf = design_fir_kaiser(s);
    double worst = 0;
    for (int i = 0; i < 4096; ++i) {
        const double w = kPi * i / 4095;
        if (w >= s.stopband_edge) worst = std::max(worst, mag_z(tf, w));
    }
    c.require(db(worst) <= -58, "stopband " + fmt(db(worst)) + " dB");
    Outcome o = c.result();
    if (o.pass) o.note = "stopband " + fmt(db(worst)) + " dB, beta " + fmt(beta);
    return o;
}

// 5. Equiripple alternation.
Outcome equiripple() {
    Check c;
    EquirippleSpec s;
    s.numtaps = 15;
    s.bands = {{0, 0.2 * kPi}, {0.3 * kPi, kPi}};
    s.desired = {1, 0};
    s.weight = {1, 1};
    const EquirippleResult r = design_fir_equiripple(s);
    c.require(r.converged && r.iterations <= 40, "iterations " + std::to_string(r.iterations));
    int alternations = 0;
    double prev = 0;
    for (double w : r.extrema) {
        const double e = equiripple_weighted_error(s, r.tf, w);
        c.require(std::abs(std::abs(e) - r.delta) <= 1e-3 * r.delta, "extremum magnitude");
        if (prev == 0 || e * prev < 0) ++alternations;
        prev = e;
    }
    c.require(alternations >= 9, std::to_string(alternations) + " alternations");
    Outcome o = c.result();
    if (o.pass) o.note = std::to_string(alternations) + " alternations, " + std::to_string(r.iterations) + " iterations";
    return o;
}

// 6. IIR families.
Outcome iir_families() {
    Check c;
    for (int n : {2, 4}) {
        IirSpec s;
        s.order = n;
        s.cutoff = 0.3 * kPi;
        const TransferFunction tf = design_iir(s);
        c.require(std::abs(db(mag_z(tf, s.cutoff)) + 3.0103) <= 0.01, "butterworth cutoff");
        c.require(is_stable(tf).stable, "butterworth stability");
    }
    IirSpec ch;
    ch.family = IirFamily::Chebyshev1;
    ch.order = 4;
    ch.passband_ripple_db = 1;
    ch.cutoff = 0.4 * kPi;
    const TransferFunction tc = design_iir(ch);
    double lo = INFINITY, hi = 0;
    for (int i = 0; i <= 8000; ++i) {
        const double m = mag_z(tc, ch.cutoff * i / 8000);
        lo = std::min(lo, m);
        hi = std::max(hi, m);
    }
    c.require(std::abs(db(hi / lo) - 1) <= 0.01, "chebyshev1 excursion " + fmt(db(hi / lo)));
    c.require(is_stable(tc).stable, "chebyshev1 stability");
    IirSpec el;
    el.family = IirFamily::Elliptic;
    el.order = 4;
    el.passband_ripple_db = 1;
    el.stopband_atten_db = 40;
    el.cutoff = 0.4 * kPi;
    const TransferFunction te = design_iir(el);
    const double ws = elliptic_stopband_edge(el);
    double plo = INFINITY, phi = 0, shi = 0;
    for (int i = 0; i <= 8000; ++i) {
        const double w = kPi * i / 8000;
        const double m = mag_z(te, w);
        if (w <= el.cutoff) plo = std::min(plo, m), phi = std::max(phi, m);
        if (w >= ws) shi = std::max(shi, m);
    }
    c.require(db(phi) <= 0.05 && -db(plo) <= 1 + 0.05, "elliptic passband");
    c.require(-db(shi) >= 40 - 0.05, "elliptic stopband " + fmt(-db(shi)));
    c.require(is_stable(te).stable, "elliptic stability");
    return c.result();
}

// 7. Haar QMF bank.
Outcome qmf_haar() {
    Check c;
    std::mt19937_64 g(1007);
    const QmfBank haar = QmfBank::haar();
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
        const RealVec x = oracle::random_reals(g, 2 * (1 + g() % 256));
        const Subbands sb = qmf_analysis(haar, {x, 8000});
        const RealVec y = qmf_synthesis(haar, sb.low, sb.high).samples;
        c.require(y.size() >= x.size(), "output length");
        if (y.size() < x.size()) break;
        worst = std::max(worst, std::abs(y[0]));
        for (std::size_t n = 1; n < x.size(); ++n) worst = std::max(worst, std::abs(y[n] - x[n - 1]));
    }
    c.require(worst < 1e-12, "max error " + fmt(worst));
    Outcome o = c.result();
    if (o.pass) o.note = "max error " + fmt(worst);
    return o;
}

// 8. Levinson-Durbin.
Outcome levinson() {
    Check c;
    std::mt19937_64 g(1008);
    for (int t = 0; t < 50; ++t) {
        const int p = 1 + static_cast<int>(g() % 12);
        const RealVec r = autocorrelation(oracle::random_reals(g, 32 + g() % 200), p);
        const LpcModel m = levinson_durbin(r, p);
        std::vector<std::vector<double>> mat(p, std::vector<double>(p));
        RealVec rhs(p);
        for (int i = 0; i < p; ++i) {
            for (int j = 0; j < p; ++j) mat[i][j] = r[std::abs(i - j)];
            rhs[i] = -r[i + 1];
        }
        const RealVec sol = oracle::solve(mat, rhs);
        double diff = 0, norm = 0;
        for (int i = 0; i < p; ++i) {
            diff = std::max(diff, std::abs(m.a[i + 1] - sol[i]));
            norm = std::max(norm, std::abs(sol[i]));
        }
        c.require(diff <= 1e-8 * std::max(1.0, norm), "normal equations");
        for (double k : m.k) c.require(std::abs(k) < 1, "reflection coefficient");
    }
    std::mt19937_64 wg(2024);
    std::normal_distribution<double> w(0, 1);
    RealVec y(101000, 0.0);
    for (std::size_t n = 0; n < y.size(); ++n)
        y[n] = w(wg) + (n >= 1 ? 0.9 * y[n - 1] : 0) - (n >= 2 ? 0.2 * y[n - 2] : 0);
    const RealVec x(y.begin() + 1000, y.end());
    const LpcModel m = levinson_durbin(autocorrelation(x, 2), 2);
    c.require(std::abs(m.a[1] + 0.9) <= 0.02 && std::abs(m.a[2] - 0.2) <= 0.02,
              "AR(2) estimate " + fmt(m.a[1]) + ", " + fmt(m.a[2]));
    Outcome o = c.result();
    if (o.pass) o.note = "AR(2) estimate [1, " + fmt(m.a[1]) + ", " + fmt(m.a[2]) + "]";
    return o;
}

// 9. Formant formula.
Outcome formants() {
    Check c;
    const double fs = 8000, th = 2 * kPi * 700 / fs;
    LpcModel m;
    m.a = {1, -2 * 0.95 * std::cos(th), 0.95 * 0.95};
    const auto f = formants_from_lpc(m, fs);
    c.require(f.size() == 1, "formant count");
    if (f.size() == 1) {
        c.require(std::abs(f[0].frequency_hz - 700) <= 0.5, "frequency " + fmt(f[0].frequency_hz));
        c.require(std::abs(f[0].bandwidth_hz - 130.6) <= 0.5, "bandwidth " + fmt(f[0].bandwidth_hz));
    }
    for (double r = 0.5; r < 0.9995; r += 0.01)
        c.require(std::abs(pole_radius_from_bandwidth(formant_bandwidth(r, fs), fs) - r) <= 1e-9, "radius inversion");
    Outcome o = c.result();
    if (o.pass) o.note = "(" + fmt(f[0].frequency_hz) + " Hz, " + fmt(f[0].bandwidth_hz) + " Hz)";
    return o;
}

// 10. k-means and the phoneme experiment.
Outcome kmeans_suite() {
    Check c;
    std::mt19937_64 g(1010);
    for (int t = 0; t < 20; ++t) {
        FeatureMatrix x;
        x.cols = 2;
        x.data = oracle::random_reals(g, 2 * (50 + g() % 150), -5, 5);
        const KMeansModel m = kmeans(x, 2 + static_cast<int>(g() % 5), t);
        for (std::size_t i = 1; i < m.inertia_history.size(); ++i)
            c.require(m.inertia_history[i] <= m.inertia_history[i - 1], "inertia increased");
    }
    const std::vector<std::pair<double, double>> centers{{0, 0}, {8, 0}, {4, 8}};
    FeatureMatrix blobs;
    blobs.cols = 2;
    std::normal_distribution<double> n(0, 0.5);
    for (const auto& [cx, cy] : centers)
        for (int i = 0; i < 100; ++i) blobs.add_row({cx + n(g), cy + n(g)});
    const KMeansModel bm = kmeans(blobs, 3, 17);
    std::vector<bool> used(3, false);
    for (std::size_t k = 0; k < 3; ++k) {
        std::size_t best = 0;
        double bd = INFINITY;
        for (std::size_t t = 0; t < 3; ++t) {
            const double d = std::hypot(bm.centroids[2 * k] - centers[t].first, bm.centroids[2 * k + 1] - centers[t].second);
            if (d < bd) bd = d, best = t;
        }
        c.require(bd <= 0.3 && !used[best], "blob centroid");
        used[best] = true;
    }
    Rng rng(1234);
    std::vector<LabeledUtterance> utt;
    const std::vector<std::vector<Formant>> table{{{700, 80}, {1200, 90}}, {{300, 60}, {2300, 100}}};
    for (int cls = 0; cls < 2; ++cls)
        for (int i = 0; i < 6; ++i) utt.push_back({synthesize_resonator(table[cls], 8000, 2048, rng), cls});
    PhonemeConfig cfg;
    cfg.k = 2;
    cfg.seed = 99;
    const double clean = phoneme_experiment(utt, cfg).confusion.accuracy;
    cfg.noise_snr_db = 0.0;
    const double noisy = phoneme_experiment(utt, cfg).confusion.accuracy;
    c.require(clean >= 0.95, "clean accuracy " + fmt(clean));
    c.require(noisy <= clean, "noisy accuracy " + fmt(noisy));
    Outcome o = c.result();
    if (o.pass) o.note = "accuracy clean " + fmt(clean) + ", 0 dB " + fmt(noisy);
    return o;
}

// 11. Quantum suite.
Outcome quantum_suite() {
    Check c;
    const auto start = Clock::now();
    std::mt19937_64 g(1011);
    for (unsigned n = 1; n <= 8; ++n) {
        const std::size_t dim = std::size_t{1} << n;
        const StateVector s{n, oracle::random_state(g, dim)};
        const QftCircuit qc = build_qft_circuit(n);
        const StateVector y = apply_circuit(s, qc);
        const auto want = oracle::matvec(oracle::qft_matrix(dim), s.amplitudes);
        double err = 0;
        for (std::size_t k = 0; k < dim; ++k) err = std::max(err, std::abs(y.amplitudes[k] - want[k]));
        c.require(err <= 1e-10, "dense oracle at n=" + std::to_string(n));
        const StateVector back = apply_circuit(y, inverse_circuit(qc));
        double rt = 0;
        for (std::size_t k = 0; k < dim; ++k) rt = std::max(rt, std::abs(back.amplitudes[k] - s.amplitudes[k]));
        c.require(rt <= 1e-10, "inverse at n=" + std::to_string(n));
        for (std::uint64_t seed = 0; seed < 5; ++seed)
            c.require(std::abs(apply_circuit(s, qc, NoiseModel{0.1, 0, seed}).norm() - 1) <= 1e-10, "noisy norm");
        const RealVec x = oracle::random_reals(g, dim);
        const StateVector q = apply_circuit(amplitude_encode(x, n).state, qc);
        std::vector<oracle::cplx> xn(dim);
        for (std::size_t i = 0; i < dim; ++i) xn[i] = x[i] / oracle::norm2(x);
        const auto d = oracle::dft(xn);
        for (std::size_t k = 0; k < dim; ++k)
            c.require(std::abs(q.amplitudes[k] * std::sqrt(double(dim)) - std::conj(d[k])) <= 1e-9, "dft bridge");
    }
    const RealVec x = oracle::random_reals(g, 32);
    const double lossless = qft_codec(x, CodecConfig{5, 32, {}}).snr_db;
    c.require(lossless >= 120, "lossless snr " + fmt(lossless));
    std::vector<double> mean(4, 0.0);
    for (int seed = 0; seed < 20; ++seed) {
        std::mt19937_64 sg(static_cast<std::uint64_t>(seed));
        const RealVec s = oracle::random_reals(sg, 32);
        for (int i = 0; i < 4; ++i) mean[i] += std::min(qft_codec(s, CodecConfig{5, std::size_t{32} >> i, {}}).snr_db, 300.0);
        const CodecConfig clean{5, 4, {0.0, 0, static_cast<std::uint64_t>(seed)}};
        const CodecConfig noisy{5, 4, {0.01, 0, static_cast<std::uint64_t>(seed)}};
        c.require(qft_codec(s, noisy).snr_db <= qft_codec(s, clean).snr_db, "noisy snr above clean");
    }
    for (int i = 1; i < 4; ++i) c.require(mean[i] <= mean[i - 1], "mean snr increased as peaks dropped");
    const double secs = seconds_since(start);
    c.require(secs < 30, "runtime " + fmt(secs) + " s");
    Outcome o = c.result();
    if (o.pass) o.note = "lossless " + fmt(lossless) + " dB, " + fmt(secs) + " s";
    return o;
}

// 12. End-to-end determinism over the CLI and HTTP.
int run_process(const std::vector<std::string>& args, const std::string& stdout_path) {
    std::fflush(stdout);
    const pid_t pid = fork();
    if (pid == 0) {
        if (!stdout_path.empty()) {
            if (!std::freopen(stdout_path.c_str(), "w", stdout)) _exit(127);
        }
        std::vector<char*> argv;
        for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
        argv.push_back(nullptr);
        execv(argv[0], argv.data());
        _exit(127);
    }
    int status = 0;
    waitpid(pid, &status, 0);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::vector<std::string> csv_column(const std::string& text, const std::string& name) {
    std::istringstream in(text);
    std::string line, cell;
    std::getline(in, line);
    std::istringstream header(line);
    int col = -1, i = 0;
    while (std::getline(header, cell, ',')) {
        if (cell == name) col = i;
        ++i;
    }
    std::vector<std::string> out;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        for (int j = 0; std::getline(row, cell, ','); ++j)
            if (j == col) out.push_back(cell);
    }
    return out;
}

Outcome end_to_end(const std::string& jdsp, const std::string& graph_path) {
    Check c;
    const fs::path work = fs::temp_directory_path() / ("jdsp_acceptance_" + std::to_string(getpid()));
    fs::remove_all(work);
    fs::create_directories(work);
    for (const char* d : {"a", "b"})
        c.require(run_process({jdsp, "run", graph_path, "--seed", "42", "--out", (work / d).string()}, "/dev/null") == 0,
                  "jdsp run failed");
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(work / "a")) names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    c.require(!names.empty(), "no output files");
    for (const auto& n : names) c.require(slurp(work / "a" / n) == slurp(work / "b" / n), "file differs: " + n);
    std::size_t count_b = 0;
    for (auto it = fs::directory_iterator(work / "b"); it != fs::directory_iterator(); ++it) ++count_b;
    c.require(count_b == names.size(), "file sets differ");

    c.require(run_process({jdsp, "run", graph_path, "--seed", "42"}, (work / "cli.json").string()) == 0, "jdsp run to stdout");
    const json cli_body = json::parse(slurp(work / "cli.json"));

    const int port = 20000 + static_cast<int>(getpid() % 20000);
    std::fflush(stdout);
    const pid_t server = fork();
    if (server == 0) {
        if (!std::freopen("/dev/null", "w", stderr)) _exit(127);
        const std::string p = std::to_string(port);
        execl(jdsp.c_str(), jdsp.c_str(), "serve", "--port", p.c_str(), "--host", "127.0.0.1", static_cast<char*>(nullptr));
        _exit(127);
    }
    httplib::Client client("127.0.0.1", port);
    client.set_connection_timeout(1, 0);
    client.set_read_timeout(30, 0);
    const json request{{"graph", json::parse(slurp(graph_path))}, {"seed", 42}};
    httplib::Result res;
    for (int attempt = 0; attempt < 100 && !res; ++attempt) {
        res = client.Post("/api/graph/execute", request.dump(), "application/json");
        if (!res) std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
    kill(server, SIGTERM);
    waitpid(server, nullptr, 0);
    c.require(static_cast<bool>(res) && res->status == 200, "http execute failed");
    if (res && res->status == 200) {
        const json http_body = json::parse(res->body);
        c.require(http_body == cli_body, "cli and http bodies differ");
        // The CSV files carry the same numbers as the JSON body.
        const std::string fft_csv = slurp(work / "a" / "fft.out.csv");
        const auto re = csv_column(fft_csv, "re");
        const json& jre = http_body["outputs"]["fft.out"]["re"];
        c.require(re.size() == jre.size(), "fft length");
        for (std::size_t i = 0; i < std::min(re.size(), jre.size()); ++i)
            c.require(std::abs(std::stod(re[i]) - jre[i].get<double>()) <= 1e-12 * (1 + std::abs(jre[i].get<double>())), "fft value " + std::to_string(i));
    }
    fs::remove_all(work);
    Outcome o = c.result();
    if (o.pass) o.note = std::to_string(names.size()) + " files identical; HTTP body equals CLI body";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <jdsp> <filter lab graph>\n";
        return 2;
    }
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"FFT oracle equivalence", fft_oracle},
        {"filter identities", filter_identities},
        {"root-finding round trip", root_round_trip},
        {"Kaiser design meets spec", kaiser_design},
        {"equiripple alternation", equiripple},
        {"IIR family compliance", iir_families},
        {"QMF Haar bank", qmf_haar},
        {"Levinson correctness", levinson},
        {"formant formula", formants},
        {"k-means and phoneme experiment", kmeans_suite},
        {"quantum suite", quantum_suite},
        {"end-to-end determinism", [&] { return end_to_end(argv[1], argv[2]); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s %2zu  %-32s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.note.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
