#include "jdsp/filter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jdsp/kernels.hpp"

namespace jdsp {

void TransferFunction::validate() const {
    if (b.empty() || a.empty()) throw Error("InvalidTransferFunction", "b and a must be non-empty");
    if (a[0] != 1.0) throw Error("InvalidTransferFunction", "a[0] must equal 1");
    for (double v : b)
        if (!std::isfinite(v)) throw Error("InvalidTransferFunction", "non-finite numerator coefficient");
    for (double v : a)
        if (!std::isfinite(v)) throw Error("InvalidTransferFunction", "non-finite denominator coefficient");
}

TransferFunction TransferFunction::normalized(RealVec b, RealVec a) {
    if (a.empty() || a[0] == 0.0) throw Error("InvalidTransferFunction", "a[0] must be non-zero");
    const double a0 = a[0];
    for (double& v : b) v /= a0;
    for (double& v : a) v /= a0;
    a[0] = 1.0;
    TransferFunction tf{std::move(b), std::move(a)};
    tf.validate();
    return tf;
}

RealVec filter_samples(const TransferFunction& tf, const RealVec& x) {
    tf.validate();
    const std::size_t order = std::max(tf.a.size(), tf.b.size()) - 1;
    RealVec bb(order + 1, 0.0), aa(order + 1, 0.0);
    std::copy(tf.b.begin(), tf.b.end(), bb.begin());
    std::copy(tf.a.begin(), tf.a.end(), aa.begin());

    RealVec state(order + 1, 0.0);  // state[order] stays zero
    RealVec y(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) {
        const double xn = x[n];
        const double yn = bb[0] * xn + state[0];
        for (std::size_t i = 0; i < order; ++i) state[i] = bb[i + 1] * xn - aa[i + 1] * yn + state[i + 1];
        y[n] = yn;
    }
    return y;
}

Signal filter_signal(const TransferFunction& tf, const Signal& x) {
    return Signal{filter_samples(tf, x.samples), x.sample_rate_hz};
}

Signal impulse_response(const TransferFunction& tf, int length) {
    if (length < 1) throw Error("InvalidLength", "impulse response length must be >= 1");
    RealVec delta(static_cast<std::size_t>(length), 0.0);
    delta[0] = 1.0;
    return Signal{filter_samples(tf, delta), 1.0};
}

ComplexVec evaluate_response(const TransferFunction& tf, const RealVec& omega) {
    ComplexVec num(omega.size()), den(omega.size());
    kernels::eval_on_unit_circle(tf.b, omega, num);
    kernels::eval_on_unit_circle(tf.a, omega, den);
    for (std::size_t i = 0; i < omega.size(); ++i) num[i] /= den[i];
    return num;
}

FrequencyResponse frequency_response(const TransferFunction& tf, int n_points) {
    tf.validate();
    if (n_points < 2) throw Error("InvalidLength", "frequency response needs at least 2 points");
    FrequencyResponse fr;
    const auto n = static_cast<std::size_t>(n_points);
    fr.omega.resize(n);
    for (std::size_t k = 0; k < n; ++k) fr.omega[k] = static_cast<double>(k) * kPi / static_cast<double>(n - 1);
    fr.omega.back() = kPi;

    ComplexVec num(n), den(n);
    kernels::eval_on_unit_circle(tf.b, fr.omega, num);
    kernels::eval_on_unit_circle(tf.a, fr.omega, den);
    fr.h.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(den[k]) < 1e-300)
            throw Error("DivisionNearZero", "denominator vanishes at omega = " + std::to_string(fr.omega[k]));
        fr.h[k] = num[k] / den[k];
    }
    return fr;
}

// ---------------------------------------------------------------- roots

namespace {

constexpr int kMaxAberthIterations = 200;

struct Horner {
    cplx p;
    cplx dp;
    double bound;  // sum |c_k| |z|^(n-k), scale of the rounding error in p
};

Horner horner(const RealVec& c, cplx z) {
    cplx p = c[0];
    cplx dp = 0.0;
    double bound = std::abs(c[0]);
    const double az = std::abs(z);
    for (std::size_t k = 1; k < c.size(); ++k) {
        dp = dp * z + p;
        p = p * z + c[k];
        bound = bound * az + std::abs(c[k]);
    }
    return {p, dp, bound};
}

double poly_norm(const RealVec& c) {
    double s = 0.0;
    for (double v : c) s += v * v;
    return std::sqrt(s);
}

// Makes the root multiset exactly conjugate-symmetric: pairs each root in the
// upper half-plane with its nearest unmatched partner and averages the pair;
// leftover near-real roots are projected onto the real axis.
void pair_conjugates(ComplexVec& roots) {
    const std::size_t n = roots.size();
    std::vector<bool> used(n, false);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return roots[i].imag() > roots[j].imag(); });

    for (std::size_t oi : order) {
        if (used[oi] || roots[oi].imag() <= 0.0) continue;
        const cplx target = std::conj(roots[oi]);
        std::size_t best = n;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == oi || used[j]) continue;
            const double d = std::abs(roots[j] - target);
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        if (best == n || best_d > 1e-6 * std::max(1.0, std::abs(roots[oi]))) continue;
        const cplx avg = 0.5 * (roots[oi] + std::conj(roots[best]));
        roots[oi] = avg;
        roots[best] = std::conj(avg);
        used[oi] = used[best] = true;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!used[i] && std::abs(roots[i].imag()) <= 1e-9 * std::max(1.0, std::abs(roots[i])))
            roots[i] = cplx(roots[i].real(), 0.0);
    }
}

ComplexVec aberth(const RealVec& c) {
    const std::size_t n = c.size() - 1;
    double max_tail = 0.0;
    for (std::size_t k = 1; k < c.size(); ++k) max_tail = std::max(max_tail, std::abs(c[k]));
    const double radius = 1.0 + max_tail / std::abs(c[0]);

    ComplexVec z(n);
    for (std::size_t k = 0; k < n; ++k)
        z[k] = std::polar(radius, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n) + 0.4);

    const double eps = std::numeric_limits<double>::epsilon();
    std::vector<bool> done(n, false);
    for (int iter = 0; iter < kMaxAberthIterations; ++iter) {
        bool all_done = true;
        ComplexVec next = z;
        for (std::size_t k = 0; k < n; ++k) {
            if (done[k]) continue;
            const Horner h = horner(c, z[k]);
            if (std::abs(h.p) <= 4.0 * eps * h.bound) {
                done[k] = true;
                continue;
            }
            all_done = false;
            const cplx ratio = h.p / h.dp;
            cplx s = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) s += 1.0 / (z[k] - z[j]);
            const cplx step = ratio / (1.0 - ratio * s);
            next[k] = z[k] - step;
            if (std::abs(step) <= eps * std::abs(next[k])) done[k] = true;
        }
        z = std::move(next);
        if (all_done) return z;
    }

    // Out of iterations: accept if every residual is still tiny.
    const double norm = poly_norm(c);
    for (const cplx& r : z) {
        const Horner h = horner(c, r);
        const double scale = std::max(1.0, std::pow(std::abs(r), static_cast<double>(n)));
        if (std::abs(h.p) / norm > 1e-10 * scale) {
            Error err("NoConvergence", "Aberth iteration did not converge in 200 iterations; residual " +
                                           std::to_string(std::abs(h.p) / norm));
            throw err;
        }
    }
    return z;
}

}  // namespace

ComplexVec find_roots(const RealVec& poly) {
    if (poly.empty()) throw Error("InvalidPolynomial", "empty coefficient array");
    for (double v : poly)
        if (!std::isfinite(v)) throw Error("InvalidPolynomial", "non-finite coefficient");

    RealVec c = poly;
    std::size_t origin = 0;
    while (!c.empty() && c.back() == 0.0) {
        c.pop_back();
        ++origin;
    }
    if (c.empty()) throw Error("InvalidPolynomial", "zero polynomial");
    if (c[0] == 0.0) throw Error("InvalidPolynomial", "leading coefficient is zero");

    ComplexVec roots;
    if (c.size() == 2) {
        roots.push_back(-c[1] / c[0]);
    } else if (c.size() > 2) {
        roots = aberth(c);
        pair_conjugates(roots);
    }
    roots.insert(roots.end(), origin, cplx(0.0, 0.0));
    std::sort(roots.begin(), roots.end(), [](const cplx& l, const cplx& r) {
        return l.real() != r.real() ? l.real() < r.real() : l.imag() < r.imag();
    });
    return roots;
}

RealVec expand_roots(const ComplexVec& roots, double gain) {
    const std::size_t n = roots.size();
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (used[i]) continue;
        if (std::abs(roots[i].imag()) <= 1e-9) {
            used[i] = true;
            continue;
        }
        bool found = false;
        for (std::size_t j = 0; j < n && !found; ++j) {
            if (j == i || used[j]) continue;
            if (std::abs(roots[j] - std::conj(roots[i])) <= 1e-9) {
                used[i] = used[j] = true;
                found = true;
            }
        }
        if (!found) throw Error("NonConjugateRoots", "root set is not closed under conjugation");
    }

    ComplexVec c{cplx(1.0, 0.0)};
    for (const cplx& r : roots) {
        c.push_back(0.0);
        for (std::size_t k = c.size() - 1; k > 0; --k) c[k] -= r * c[k - 1];
    }
    RealVec out(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (std::abs(c[k].imag()) >= 1e-9 * std::max(1.0, std::abs(c[k])))
            throw Error("NonConjugateRoots", "expanded polynomial has an imaginary residue");
        out[k] = gain * c[k].real();
    }
    return out;
}

PoleZeroSet pole_zero(const TransferFunction& tf) {
    tf.validate();
    PoleZeroSet pz;
    // B(z)/A(z) in z^-1; pad the shorter polynomial so both are in powers of z
    // with a common degree, which accounts for poles/zeros at the origin.
    const std::size_t order = std::max(tf.a.size(), tf.b.size());
    RealVec b = tf.b, a = tf.a;
    b.resize(order, 0.0);
    a.resize(order, 0.0);
    std::size_t lead = 0;
    while (lead < b.size() && b[lead] == 0.0) ++lead;
    if (lead < b.size()) {
        RealVec trimmed(b.begin() + static_cast<std::ptrdiff_t>(lead), b.end());
        pz.zeros = find_roots(trimmed);
        pz.gain = trimmed[0];
    } else {
        pz.gain = 0.0;
    }
    pz.poles = find_roots(a);
    return pz;
}

StabilityReport is_stable(const TransferFunction& tf) {
    tf.validate();
    StabilityReport rep;
    if (tf.a.size() > 1) {
        for (const cplx& p : find_roots(tf.a)) rep.max_pole_magnitude = std::max(rep.max_pole_magnitude, std::abs(p));
    }
    rep.stable = rep.max_pole_magnitude < 1.0 - 1e-9;
    return rep;
}

}  // namespace jdsp
