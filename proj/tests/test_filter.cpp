#include <algorithm>
#include <cmath>

#include "doctest.h"

#include "jdsp/filter.hpp"
#include "oracles.hpp"

using namespace jdsp;

namespace {

RealVec impulse(std::size_t n, std::size_t at = 0) {
    RealVec x(n, 0.0);
    x[at] = 1.0;
    return x;
}

// Random stable denominator built from poles inside radius 0.95.
RealVec random_stable_a(std::mt19937_64& g, int pairs) {
    std::uniform_real_distribution<double> r(0.1, 0.95), th(0.0, oracle::pi);
    ComplexVec roots;
    for (int i = 0; i < pairs; ++i) {
        const cplx p = std::polar(r(g), th(g));
        roots.push_back(p);
        roots.push_back(std::conj(p));
    }
    return expand_roots(roots, 1.0);
}

ComplexVec random_conjugate_set(std::mt19937_64& g, int degree) {
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    ComplexVec roots;
    while (static_cast<int>(roots.size()) + 2 <= degree) {
        const cplx p(u(g), 0.2 + std::abs(u(g)));
        roots.push_back(p);
        roots.push_back(std::conj(p));
    }
    if (static_cast<int>(roots.size()) < degree) roots.push_back(u(g));
    return roots;
}

}  // namespace

TEST_CASE("filter examples") {
    std::mt19937_64 g(1);
    const RealVec x = oracle::random_reals(g, 20);
    CHECK(filter_samples({{1}, {1}}, x) == x);
    CHECK(filter_samples({{1, 1}, {1}}, {1, 0, 0}) == RealVec{1, 1, 0});
    const RealVec y = filter_samples({{1}, {1, -0.5}}, impulse(12));
    for (std::size_t n = 0; n < y.size(); ++n) CHECK(std::abs(y[n] - std::pow(0.5, n)) < 1e-15);
    const Signal s = filter_signal({{1}, {1}}, {x, 44100});
    CHECK(s.sample_rate_hz == 44100);
    CHECK(s.size() == x.size());
}

TEST_CASE("filter matches the difference equation oracle") {
    std::mt19937_64 g(2);
    for (int t = 0; t < 20; ++t) {
        const RealVec b = oracle::random_reals(g, 1 + g() % 6);
        const RealVec a = random_stable_a(g, 1 + static_cast<int>(g() % 3));
        const RealVec x = oracle::random_reals(g, 64);
        const RealVec got = filter_samples({b, a}, x);
        const RealVec want = oracle::difference_equation(b, a, x);
        for (std::size_t n = 0; n < x.size(); ++n) CHECK(std::abs(got[n] - want[n]) < 1e-10);
    }
}

TEST_CASE("impulse response examples") {
    const Signal h = impulse_response({{3, 2, 1}, {1}}, 6);
    CHECK(h.samples == RealVec{3, 2, 1, 0, 0, 0});
    const Signal g = impulse_response({{1}, {1, -0.9}}, 11);
    CHECK(std::abs(g.samples[10] - 0.3486784401) < 1e-12);
    CHECK(impulse_response({{7, 1}, {1, 0.3}}, 1).samples == RealVec{7});
    CHECK_THROWS_WITH_AS(impulse_response({{1}, {1}}, 0), doctest::Contains("InvalidLength"), Error);
}

TEST_CASE("frequency response examples") {
    const auto avg = frequency_response({{0.5, 0.5}, {1}}, 129);
    CHECK(std::abs(std::abs(avg.h.front()) - 1.0) < 1e-12);
    CHECK(std::abs(avg.h.back()) < 1e-12);
    CHECK(avg.omega.back() == doctest::Approx(oracle::pi));
    for (std::size_t k = 0; k < avg.omega.size(); ++k)
        CHECK(std::abs(avg.omega[k] - k * oracle::pi / 128) < 1e-15);
    const auto id = frequency_response({{1}, {1}}, 16);
    for (const cplx& v : id.h) CHECK(std::abs(v - 1.0) < 1e-15);
    const auto pole = frequency_response({{1}, {1, -0.9}}, 16);
    CHECK(std::abs(std::abs(pole.h[0]) - 10.0) < 1e-12);
    CHECK_THROWS_WITH_AS(frequency_response({{1}, {1, -1}}, 16), doctest::Contains("DivisionNearZero"), Error);
    CHECK_THROWS_AS(frequency_response({{1}, {1}}, 1), Error);
}

TEST_CASE("fir frequency response matches a zero-padded dft") {
    std::mt19937_64 g(3);
    const std::size_t n = 64;
    for (int t = 0; t < 5; ++t) {
        const RealVec b = oracle::random_reals(g, 1 + g() % 10);
        std::vector<oracle::cplx> padded(2 * (n - 1), 0.0);
        for (std::size_t k = 0; k < b.size(); ++k) padded[k] = b[k];
        const auto dft = oracle::dft(padded);
        const auto fr = frequency_response({b, {1}}, static_cast<int>(n));
        for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(fr.h[k] - dft[k]) < 1e-10);
    }
}

TEST_CASE("root finding examples") {
    CHECK(oracle::set_distance(find_roots({1, -1.5, 0.56}), {0.7, 0.8}) < 1e-9);
    CHECK(oracle::set_distance(find_roots({1, 0, 1}), {cplx(0, 1), cplx(0, -1)}) < 1e-9);
    CHECK(oracle::set_distance(find_roots({2, -1}), {0.5}) < 1e-12);
    CHECK(oracle::set_distance(find_roots({1, -1, 0, 0}), {1.0, 0.0, 0.0}) < 1e-12);
}

TEST_CASE("root residuals are small") {
    std::mt19937_64 g(4);
    for (int t = 0; t < 30; ++t) {
        const RealVec p = oracle::random_reals(g, 2 + g() % 15);
        double pn = 0;
        for (double c : p) pn += c * c;
        pn = std::sqrt(pn);
        for (const cplx& r : find_roots(p)) {
            double scale = 0;
            for (std::size_t i = 0; i < p.size(); ++i)
                scale += std::abs(p[i]) * std::pow(std::abs(r), static_cast<double>(p.size() - 1 - i));
            CHECK(std::abs(oracle::polyval(p, r)) / std::max(pn, scale) <= 1e-10);
        }
    }
}

TEST_CASE("expand roots examples") {
    const RealVec p = expand_roots({cplx(0.5, 0.5), cplx(0.5, -0.5)}, 1.0);
    REQUIRE(p.size() == 3);
    CHECK(std::abs(p[0] - 1) < 1e-15);
    CHECK(std::abs(p[1] + 1) < 1e-15);
    CHECK(std::abs(p[2] - 0.5) < 1e-15);
    CHECK(expand_roots({}, 2.0) == RealVec{2.0});
    CHECK_THROWS_WITH_AS(expand_roots({cplx(0.5, 0.5)}, 1.0), doctest::Contains("NonConjugateRoots"), Error);
}

TEST_CASE("find_roots inverts expand_roots") {
    std::mt19937_64 g(5);
    for (int degree = 1; degree <= 12; ++degree)
        for (int t = 0; t < 5; ++t) {
            const ComplexVec r = random_conjugate_set(g, degree);
            CHECK(oracle::set_distance(find_roots(expand_roots(r, 1.0)), r) < 1e-8);
        }
}

TEST_CASE("stability") {
    auto s = is_stable({{1}, {1, -0.9}});
    CHECK(s.stable);
    CHECK(std::abs(s.max_pole_magnitude - 0.9) < 1e-12);
    s = is_stable({{1}, {1, -1.0}});
    CHECK_FALSE(s.stable);
    CHECK(std::abs(s.max_pole_magnitude - 1.0) < 1e-12);
    s = is_stable({{1, 2, 3}, {1}});
    CHECK(s.stable);
    CHECK(s.max_pole_magnitude == 0.0);
}

TEST_CASE("pole zero set") {
    const auto pz = pole_zero({{2, -1}, {1, -1.5, 0.56}});
    // (2 - z^-1) / (1 - 1.5 z^-1 + 0.56 z^-2) = z (2z - 1) / (z^2 - 1.5z + 0.56)
    CHECK(oracle::set_distance(pz.zeros, {0.5, 0.0}) < 1e-12);
    CHECK(pz.gain == 2.0);
    CHECK(pz.poles.size() == 2);
    CHECK(oracle::set_distance(pz.poles, {0.7, 0.8}) < 1e-9);
}

TEST_CASE("transfer function validation") {
    CHECK_THROWS_AS(TransferFunction({{1}, {2, 1}}).validate(), Error);
    CHECK_THROWS_AS(TransferFunction({{}, {1}}).validate(), Error);
    CHECK_THROWS_AS(TransferFunction({{NAN}, {1}}).validate(), Error);
    const auto n = TransferFunction::normalized({2, 4}, {2, 1});
    CHECK(n.b == RealVec{1, 2});
    CHECK(n.a == RealVec{1, 0.5});
    CHECK_THROWS_AS(TransferFunction::normalized({1}, {0, 1}), Error);
}

TEST_CASE("linearity") {
    std::mt19937_64 g(6);
    for (int t = 0; t < 10; ++t) {
        const TransferFunction tf{oracle::random_reals(g, 4), random_stable_a(g, 2)};
        const RealVec x = oracle::random_reals(g, 100), y = oracle::random_reals(g, 100);
        const double al = 1.7, be = -0.6;
        RealVec mix(100);
        for (int i = 0; i < 100; ++i) mix[i] = al * x[i] + be * y[i];
        const RealVec fm = filter_samples(tf, mix), fx = filter_samples(tf, x), fy = filter_samples(tf, y);
        for (int i = 0; i < 100; ++i) {
            const double want = al * fx[i] + be * fy[i];
            CHECK(std::abs(fm[i] - want) <= 1e-10 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("time invariance") {
    std::mt19937_64 g(7);
    const TransferFunction tf{oracle::random_reals(g, 3), random_stable_a(g, 2)};
    const RealVec h = filter_samples(tf, impulse(80));
    for (std::size_t shift : {1u, 5u, 17u}) {
        const RealVec hs = filter_samples(tf, impulse(80, shift));
        for (std::size_t n = 0; n < shift; ++n) CHECK(hs[n] == 0.0);
        for (std::size_t n = shift; n < 80; ++n) CHECK(std::abs(hs[n] - h[n - shift]) < 1e-12);
    }
}

TEST_CASE("stable impulse responses decay") {
    std::mt19937_64 g(8);
    for (int t = 0; t < 10; ++t) {
        const TransferFunction tf{oracle::random_reals(g, 3), random_stable_a(g, 2)};
        const auto st = is_stable(tf);
        REQUIRE(st.stable);
        const int order = static_cast<int>(tf.a.size()) - 1;
        const int start = 5 * order;
        const RealVec h = impulse_response(tf, 400).samples;
        const double rho = st.max_pole_magnitude + 1e-6;
        double c = 0;
        for (int n = start; n < start + order + 1; ++n) c = std::max(c, std::abs(h[n]) / std::pow(rho, n));
        c *= 50.0;  // allows polynomial growth from repeated or close poles
        for (int n = start; n < 400; ++n) CHECK(std::abs(h[n]) <= c * std::pow(rho, n) * (1 + n) + 1e-300);
    }
}
