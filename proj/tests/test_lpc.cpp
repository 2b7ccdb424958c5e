#include <algorithm>
#include <cmath>

#include "doctest.h"

#include "jdsp/filter.hpp"
#include "jdsp/lpc.hpp"
#include "oracles.hpp"

using namespace jdsp;

namespace {

// Stationary AR process driven by unit Gaussian noise, after a warm-up.
RealVec ar_process(const RealVec& a, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::normal_distribution<double> w(0.0, 1.0);
    const std::size_t warm = 1000;
    RealVec y(n + warm, 0.0);
    for (std::size_t i = 0; i < y.size(); ++i) {
        double v = w(g);
        for (std::size_t k = 1; k < a.size() && k <= i; ++k) v -= a[k] * y[i - k];
        y[i] = v;
    }
    return RealVec(y.begin() + warm, y.end());
}

RealVec pole_pair_poly(double r, double theta) { return {1.0, -2 * r * std::cos(theta), r * r}; }

RealVec poly_mul(const RealVec& a, const RealVec& b) {
    RealVec y(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) y[i + j] += a[i] * b[j];
    return y;
}

std::vector<std::size_t> local_maxima(const RealVec& v) {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        if (v[i] > v[i - 1] && v[i] >= v[i + 1]) out.push_back(i);
    return out;
}

}  // namespace

TEST_CASE("autocorrelation examples") {
    CHECK(autocorrelation({1, 1}, 1) == RealVec{2, 1});
    CHECK(autocorrelation(RealVec(8, 0.0), 3) == RealVec(4, 0.0));
    CHECK_THROWS_WITH_AS(autocorrelation({1, 2}, 2), doctest::Contains("InvalidLag"), Error);
}

TEST_CASE("autocorrelation matches the transform-domain oracle") {
    std::mt19937_64 g(1);
    for (std::size_t n : {5u, 32u, 100u}) {
        const RealVec x = oracle::random_reals(g, n);
        const int p = static_cast<int>(n) - 1;
        std::vector<oracle::cplx> padded(2 * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) padded[i] = x[i];
        auto spec = oracle::dft(padded);
        for (auto& v : spec) v = std::norm(v);
        auto r_oracle = oracle::dft(spec, +1);
        const RealVec r = autocorrelation(x, p);
        for (int m = 0; m <= p; ++m) {
            CHECK(std::abs(r[m] - r_oracle[m].real() / (2.0 * n)) <= 1e-9 * r[0]);
            CHECK(std::abs(r[m]) <= r[0] * (1 + 1e-15));
        }
    }
}

TEST_CASE("levinson order one") {
    for (double rho : {-0.7, 0.0, 0.3, 0.95}) {
        const LpcModel m = levinson_durbin({1, rho}, 1);
        CHECK(m.a == RealVec{1, -rho});
        CHECK(std::abs(m.k[0] - rho) < 1e-15);
        CHECK(std::abs(m.error - (1 - rho * rho)) < 1e-15);
    }
    CHECK_THROWS_AS(levinson_durbin({0, 0}, 1), Error);
    CHECK_THROWS_WITH_AS(levinson_durbin({1, 1, 1}, 2), doctest::Contains("SingularError"), Error);
}

TEST_CASE("levinson recovers an AR(2) process") {
    const RealVec x = ar_process({1, -0.9, 0.2}, 100000, 42);
    const LpcModel m = levinson_durbin(autocorrelation(x, 2), 2);
    CHECK(std::abs(m.a[1] + 0.9) <= 0.02);
    CHECK(std::abs(m.a[2] - 0.2) <= 0.02);
}

TEST_CASE("levinson solves the normal equations") {
    std::mt19937_64 g(2);
    for (int t = 0; t < 20; ++t) {
        const int p = 1 + static_cast<int>(g() % 12);
        const RealVec r = autocorrelation(oracle::random_reals(g, 64), p);
        const LpcModel m = levinson_durbin(r, p);
        std::vector<std::vector<double>> mat(p, std::vector<double>(p));
        RealVec rhs(p);
        for (int i = 0; i < p; ++i) {
            for (int j = 0; j < p; ++j) mat[i][j] = r[std::abs(i - j)];
            rhs[i] = -r[i + 1];
        }
        const RealVec want = oracle::solve(mat, rhs);
        for (int i = 0; i < p; ++i) CHECK(std::abs(m.a[i + 1] - want[i]) <= 1e-8 * std::max(1.0, std::abs(want[i])));
        for (double k : m.k) CHECK(std::abs(k) < 1.0);
        CHECK(m.error > 0);
        CHECK(m.order() == p);
        double prev = r[0];
        for (int q = 1; q <= p; ++q) {
            const double e = levinson_durbin(r, q).error;
            CHECK(e <= prev * (1 + 1e-12));
            prev = e;
        }
    }
}

TEST_CASE("lpc envelope") {
    LpcModel flat;
    flat.error = 4.0;
    for (double v : lpc_envelope(flat, 1.5, 16)) CHECK(v == 1.5);
    for (double v : lpc_envelope(flat, 16)) CHECK(v == 2.0);
    LpcModel one;
    one.a = {1, -0.9};
    const RealVec s = lpc_envelope(one, 1.0, 64);
    CHECK(std::abs(s.front() / s.back() - 19.0) < 1e-9);
}

TEST_CASE("envelope peaks track the true AR spectrum") {
    const double fs = 8000;
    const RealVec a_true =
        poly_mul(pole_pair_poly(0.97, 2 * kPi * 700 / fs), pole_pair_poly(0.96, 2 * kPi * 1800 / fs));
    const RealVec x = ar_process(a_true, 4096, 3);
    const LpcModel m = fit_frame(x, 4);
    const int n = 256;
    const RealVec env = lpc_envelope(m, n);
    RealVec truth(n);
    for (int k = 0; k < n; ++k) truth[k] = 1.0 / std::abs(oracle::polyval(RealVec(a_true.rbegin(), a_true.rend()),
                                                                          std::polar(1.0, kPi * k / (n - 1))));
    const auto pe = local_maxima(env), pt = local_maxima(truth);
    REQUIRE(pe.size() == pt.size());
    for (std::size_t i = 0; i < pe.size(); ++i) CHECK(std::abs(static_cast<long>(pe[i]) - static_cast<long>(pt[i])) <= 2);
}

TEST_CASE("formants from a pole pair") {
    const double fs = 8000;
    LpcModel m;
    m.a = pole_pair_poly(0.95, 2 * kPi * 700 / fs);
    const auto f = formants_from_lpc(m, fs);
    REQUIRE(f.size() == 1);
    CHECK(std::abs(f[0].frequency_hz - 700) < 0.5);
    CHECK(std::abs(f[0].bandwidth_hz - (-(fs / kPi) * std::log(0.95))) < 0.5);
    CHECK(std::abs(f[0].bandwidth_hz - 130.6) < 0.5);
    m.a = poly_mul({1, -0.5}, {1, 0.3});
    CHECK(formants_from_lpc(m, fs).empty());
    m.a = pole_pair_poly(0.8, 2 * kPi * 700 / fs);
    CHECK(formant_bandwidth(0.8, fs) > 500);
    CHECK(formants_from_lpc(m, fs).empty());
    m.a = pole_pair_poly(0.97, 2 * kPi * 50 / fs);
    CHECK(formants_from_lpc(m, fs).empty());
}

TEST_CASE("formants ascend and bandwidths invert") {
    const double fs = 10000;
    std::mt19937_64 g(4);
    for (int t = 0; t < 10; ++t) {
        RealVec a{1.0};
        std::vector<double> freqs;
        for (int i = 0; i < 4; ++i) {
            const double fr = 200 + 4500.0 * (g() % 1000) / 1000.0;
            a = poly_mul(a, pole_pair_poly(0.97, 2 * kPi * fr / fs));
        }
        LpcModel m;
        m.a = a;
        const auto f = formants_from_lpc(m, fs);
        for (std::size_t i = 1; i < f.size(); ++i) CHECK(f[i].frequency_hz > f[i - 1].frequency_hz);
        for (const auto& fm : f) CHECK(fm.bandwidth_hz < 500);
    }
    for (double r : {0.5, 0.9, 0.99, 0.999}) CHECK(std::abs(pole_radius_from_bandwidth(formant_bandwidth(r, fs), fs) - r) < 1e-9);
    for (double r : {0.5, 0.9, 0.99}) CHECK(std::abs(std::exp(-kPi * formant_bandwidth(r, fs) / fs) - r) < 1e-9);
}

TEST_CASE("framing") {
    const Signal x{RealVec{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, 1};
    const auto fr = frame_signal(x, {4, 2, {WindowKind::Rectangular, 4, 0}});
    REQUIRE(fr.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(fr[i][0] == 2.0 * i);
    const auto part = frame_signal(x, {5, 5, {WindowKind::Rectangular, 5, 0}});
    REQUIRE(part.size() == 2);
    CHECK(part[1] == RealVec{5, 6, 7, 8, 9});
    const auto hann = frame_signal({RealVec(10, 1.0), 1}, {4, 2, {WindowKind::Hann, 4, 0}});
    for (const auto& f : hann) {
        CHECK(f.front() == doctest::Approx(0.0));
        CHECK(f.back() == doctest::Approx(0.0));
    }
    CHECK_THROWS_WITH_AS(frame_signal(x, {11, 1, {WindowKind::Rectangular, 11, 0}}), doctest::Contains("InvalidSpec"), Error);
    CHECK_THROWS_AS(frame_signal(x, {4, 5, {WindowKind::Rectangular, 4, 0}}), Error);
    CHECK_THROWS_AS(frame_signal(x, {4, 0, {WindowKind::Rectangular, 4, 0}}), Error);
}

TEST_CASE("analysis-synthesis is exact") {
    std::mt19937_64 g(5);
    for (int p : {0, 1, 4, 10}) {
        const Signal x{oracle::random_reals(g, 1000), 8000};
        const auto res = lpc_analysis_synthesis(x, p, {200, 200, {WindowKind::Hamming, 200, 0}});
        REQUIRE(res.reconstructed.size() == x.size());
        RealVec err(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) err[i] = x.samples[i] - res.reconstructed.samples[i];
        CHECK(oracle::norm2(err) <= 1e-9 * oracle::norm2(x.samples));
        if (p == 0) CHECK(res.residual.samples == x.samples);
    }
    CHECK_THROWS_WITH_AS(lpc_analysis_synthesis({RealVec(100, 1.0), 1}, 2, {20, 10, {WindowKind::Rectangular, 20, 0}}),
                         doctest::Contains("InvalidSpec"), Error);
}

TEST_CASE("prediction gain on an AR input") {
    const Signal x{ar_process({1, -1.3, 0.8}, 4000, 6), 8000};
    const auto res = lpc_analysis_synthesis(x, 2, {400, 400, {WindowKind::Hamming, 400, 0}});
    CHECK(oracle::norm2(res.residual.samples) < oracle::norm2(x.samples));
}
