#include "jdsp/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace jdsp {

BandKind band_kind_from_string(std::string_view name) {
    if (name == "lowpass") return BandKind::Lowpass;
    if (name == "highpass") return BandKind::Highpass;
    throw Error("InvalidSpec", "unknown filter kind '" + std::string(name) + "'");
}

std::string_view to_string(BandKind kind) { return kind == BandKind::Lowpass ? "lowpass" : "highpass"; }

IirFamily iir_family_from_string(std::string_view name) {
    if (name == "butterworth") return IirFamily::Butterworth;
    if (name == "chebyshev1" || name == "cheby1") return IirFamily::Chebyshev1;
    if (name == "chebyshev2" || name == "cheby2") return IirFamily::Chebyshev2;
    if (name == "elliptic") return IirFamily::Elliptic;
    throw Error("InvalidSpec", "unknown IIR family '" + std::string(name) + "'");
}

std::string_view to_string(IirFamily family) {
    switch (family) {
        case IirFamily::Butterworth: return "butterworth";
        case IirFamily::Chebyshev1: return "chebyshev1";
        case IirFamily::Chebyshev2: return "chebyshev2";
        case IirFamily::Elliptic: return "elliptic";
    }
    return "?";
}

// ---------------------------------------------------------------- Kaiser

KaiserParams kaiser_params(double atten_db, double transition_width) {
    if (!(transition_width > 0.0 && transition_width < kPi))
        throw Error("InvalidSpec", "transition width must lie in (0, pi)");
    if (!(atten_db >= 0.0) || !std::isfinite(atten_db)) throw Error("InvalidSpec", "attenuation must be >= 0");
    KaiserParams kp;
    if (atten_db > 50.0)
        kp.beta = 0.1102 * (atten_db - 8.7);
    else if (atten_db >= 21.0)
        kp.beta = 0.5842 * std::pow(atten_db - 21.0, 0.4) + 0.07886 * (atten_db - 21.0);
    else
        kp.beta = 0.0;
    const double m = std::ceil((atten_db - 7.95) / (2.285 * transition_width));
    kp.order = std::max(1, static_cast<int>(m));
    if (kp.order % 2 != 0) ++kp.order;
    return kp;
}

double bessel_i0(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 1000; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (term / sum < 1e-14) break;
    }
    return sum;
}

RealVec kaiser_window(int order, double beta) {
    if (order < 0) throw Error("InvalidSpec", "window order must be >= 0");
    const auto taps = static_cast<std::size_t>(order) + 1;
    RealVec w(taps, 1.0);
    if (order == 0) return w;
    const double denom = bessel_i0(beta);
    for (std::size_t n = 0; n < taps; ++n) {
        const double r = 2.0 * static_cast<double>(n) / order - 1.0;
        w[n] = bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / denom;
    }
    return w;
}

namespace {

void symmetrize(RealVec& b) {
    const std::size_t n = b.size();
    for (std::size_t i = 0; i < n / 2; ++i) {
        const double v = 0.5 * (b[i] + b[n - 1 - i]);
        b[i] = b[n - 1 - i] = v;
    }
}

}  // namespace

TransferFunction design_kaiser_lowpass(double cutoff, int order, double beta) {
    if (!(cutoff > 0.0 && cutoff < kPi)) throw Error("InvalidSpec", "cutoff must lie in (0, pi)");
    if (order < 1) throw Error("InvalidSpec", "order must be >= 1");
    const RealVec w = kaiser_window(order, beta);
    RealVec b(w.size());
    const double mid = 0.5 * order;
    for (std::size_t n = 0; n < b.size(); ++n) {
        const double t = static_cast<double>(n) - mid;
        const double ideal = t == 0.0 ? cutoff / kPi : std::sin(cutoff * t) / (kPi * t);
        b[n] = ideal * w[n];
    }
    symmetrize(b);
    return TransferFunction{std::move(b), {1.0}};
}

TransferFunction design_fir_kaiser(const FirSpec& spec) {
    const double wp = spec.passband_edge;
    const double ws = spec.stopband_edge;
    if (!(wp > 0.0 && wp < kPi && ws > 0.0 && ws < kPi)) throw Error("InvalidSpec", "band edges must lie in (0, pi)");
    if (spec.kind == BandKind::Lowpass && !(wp < ws))
        throw Error("InvalidSpec", "lowpass needs passband_edge < stopband_edge");
    if (spec.kind == BandKind::Highpass && !(ws < wp))
        throw Error("InvalidSpec", "highpass needs stopband_edge < passband_edge");

    const KaiserParams kp = kaiser_params(spec.stopband_atten_db, std::abs(ws - wp));
    TransferFunction tf = design_kaiser_lowpass(0.5 * (wp + ws), kp.order, kp.beta);
    if (spec.kind == BandKind::Highpass) {
        for (double& v : tf.b) v = -v;
        tf.b[static_cast<std::size_t>(kp.order / 2)] += 1.0;
    }
    return tf;
}

// ---------------------------------------------------------------- frequency sampling

TransferFunction design_fir_freq_sampling(const RealVec& desired_mag) {
    const std::size_t n = desired_mag.size();
    if (n == 0 || n % 2 == 0) throw Error("InvalidSpec", "frequency sampling needs an odd number of samples");
    const std::size_t half = (n - 1) / 2;
    for (std::size_t k = 0; k <= half; ++k)
        if (!(desired_mag[k] >= 0.0) || !std::isfinite(desired_mag[k]))
            throw Error("InvalidSpec", "desired magnitudes must be finite and >= 0");

    const double nn = static_cast<double>(n);
    ComplexVec h(n);
    for (std::size_t k = 0; k <= half; ++k) {
        h[k] = std::polar(desired_mag[k], -kPi * static_cast<double>(k) * (nn - 1.0) / nn);
        if (k > 0) h[n - k] = std::conj(h[k]);
    }
    RealVec b(n);
    for (std::size_t t = 0; t < n; ++t) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            acc += h[k] * std::polar(1.0, 2.0 * kPi * static_cast<double>((k * t) % n) / nn);
        acc /= nn;
        if (std::abs(acc.imag()) >= 1e-10 * std::max(1.0, std::abs(acc)))
            throw Error("NumericalFailure", "inverse DFT left an imaginary residue");
        b[t] = acc.real();
    }
    symmetrize(b);
    return TransferFunction{std::move(b), {1.0}};
}

// ---------------------------------------------------------------- Remez exchange

namespace {

struct DenseGrid {
    RealVec omega;
    RealVec x;  // cos(omega)
    RealVec desired;
    RealVec weight;
    std::vector<std::size_t> band_start;  // index of the first point of each band
};

void check_equiripple_spec(const EquirippleSpec& spec) {
    if (spec.numtaps < 3 || spec.numtaps % 2 == 0) throw Error("InvalidSpec", "numtaps must be odd and >= 3");
    if (spec.bands.empty()) throw Error("InvalidSpec", "at least one band is required");
    if (spec.desired.size() != spec.bands.size() || spec.weight.size() != spec.bands.size())
        throw Error("InvalidSpec", "desired and weight need one entry per band");
    double prev_hi = -1.0;
    double measure = 0.0;
    for (std::size_t i = 0; i < spec.bands.size(); ++i) {
        const Band& b = spec.bands[i];
        if (!(b.lo >= 0.0 && b.hi <= kPi && b.lo <= b.hi)) throw Error("InvalidSpec", "band edges must satisfy 0 <= lo <= hi <= pi");
        if (i > 0 && !(b.lo > prev_hi)) throw Error("InvalidSpec", "bands must be disjoint and ascending");
        if (!(spec.weight[i] > 0.0) || !std::isfinite(spec.weight[i])) throw Error("InvalidSpec", "weights must be > 0");
        if (!std::isfinite(spec.desired[i])) throw Error("InvalidSpec", "desired values must be finite");
        prev_hi = b.hi;
        measure += b.hi - b.lo;
    }
    if (!(measure > 0.0)) throw Error("InvalidSpec", "total band measure must be positive");
}

DenseGrid make_grid(const EquirippleSpec& spec, std::size_t r) {
    constexpr double kDensity = 16.0;
    const double step = kPi / (kDensity * static_cast<double>(r));
    DenseGrid g;
    for (std::size_t i = 0; i < spec.bands.size(); ++i) {
        const Band& b = spec.bands[i];
        const auto intervals = static_cast<std::size_t>(std::max(1.0, std::ceil((b.hi - b.lo) / step)));
        g.band_start.push_back(g.omega.size());
        const std::size_t count = b.hi > b.lo ? intervals + 1 : 1;
        for (std::size_t j = 0; j < count; ++j) {
            const double w = j + 1 == count ? b.hi : b.lo + (b.hi - b.lo) * static_cast<double>(j) / static_cast<double>(intervals);
            g.omega.push_back(w);
            g.x.push_back(std::cos(w));
            g.desired.push_back(spec.desired[i]);
            g.weight.push_back(spec.weight[i]);
        }
    }
    return g;
}

// Barycentric weights 1 / prod_{j != i} 2 (x_i - x_j); the factor 2 keeps the
// products away from underflow and cancels in every ratio they enter.
RealVec barycentric_weights(const RealVec& x) {
    RealVec w(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double p = 1.0;
        for (std::size_t j = 0; j < x.size(); ++j)
            if (j != i) p *= 2.0 * (x[i] - x[j]);
        w[i] = 1.0 / p;
    }
    return w;
}

struct Interpolant {
    RealVec x;
    RealVec w;
    RealVec c;

    double operator()(double at) const {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = at - x[i];
            if (d == 0.0) return c[i];
            const double t = w[i] / d;
            num += t * c[i];
            den += t;
        }
        return num / den;
    }
};

struct RemezStep {
    double delta;
    Interpolant amplitude;
};

RemezStep solve_on_extrema(const DenseGrid& g, const std::vector<std::size_t>& ext) {
    RealVec x(ext.size());
    for (std::size_t i = 0; i < ext.size(); ++i) x[i] = g.x[ext[i]];
    const RealVec w = barycentric_weights(x);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < ext.size(); ++i) {
        const double sgn = i % 2 == 0 ? 1.0 : -1.0;
        num += w[i] * g.desired[ext[i]];
        den += sgn * w[i] / g.weight[ext[i]];
    }
    const double delta = num / den;

    Interpolant a;
    a.x.assign(x.begin(), x.end() - 1);
    a.w = barycentric_weights(a.x);
    for (std::size_t i = 0; i + 1 < ext.size(); ++i) {
        const double sgn = i % 2 == 0 ? 1.0 : -1.0;
        a.c.push_back(g.desired[ext[i]] - sgn * delta / g.weight[ext[i]]);
    }
    return {delta, std::move(a)};
}

// Local extrema of the weighted error per band, alternation enforced by
// scanning (same-sign neighbours keep the larger magnitude), then trimmed
// from the ends down to `want` points.
std::vector<std::size_t> find_extrema(const DenseGrid& g, const RealVec& err, std::size_t want) {
    std::vector<std::size_t> cand;
    for (std::size_t bi = 0; bi < g.band_start.size(); ++bi) {
        const std::size_t s = g.band_start[bi];
        const std::size_t e = bi + 1 < g.band_start.size() ? g.band_start[bi + 1] : g.omega.size();
        for (std::size_t j = s; j < e; ++j) {
            const double v = err[j];
            if (v == 0.0) continue;
            const double l = j > s ? err[j - 1] : (v > 0 ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity());
            const double r = j + 1 < e ? err[j + 1] : (v > 0 ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity());
            if ((v > 0.0 && v >= l && v >= r) || (v < 0.0 && v <= l && v <= r)) cand.push_back(j);
        }
    }
    std::vector<std::size_t> alt;
    for (std::size_t j : cand) {
        if (!alt.empty() && (err[alt.back()] > 0.0) == (err[j] > 0.0)) {
            if (std::abs(err[j]) > std::abs(err[alt.back()])) alt.back() = j;
        } else {
            alt.push_back(j);
        }
    }
    while (alt.size() > want) {
        if (std::abs(err[alt.front()]) < std::abs(err[alt.back()]))
            alt.erase(alt.begin());
        else
            alt.pop_back();
    }
    return alt;
}

RealVec cosine_to_taps(const Interpolant& amp, int numtaps) {
    const auto n = static_cast<std::size_t>(numtaps);
    const std::size_t m = (n - 1) / 2;
    const double nn = static_cast<double>(n);
    RealVec samples(m + 1);
    for (std::size_t l = 0; l <= m; ++l) samples[l] = amp(std::cos(2.0 * kPi * static_cast<double>(l) / nn));
    RealVec b(n);
    for (std::size_t t = 0; t <= m; ++t) {
        double acc = samples[0];
        const double off = static_cast<double>(t) - static_cast<double>(m);
        for (std::size_t l = 1; l <= m; ++l)
            acc += 2.0 * samples[l] * std::cos(2.0 * kPi * static_cast<double>(l) * off / nn);
        b[t] = b[n - 1 - t] = acc / nn;
    }
    return b;
}

}  // namespace

EquirippleResult design_fir_equiripple(const EquirippleSpec& spec) {
    check_equiripple_spec(spec);
    constexpr int kMaxIterations = 40;
    const std::size_t r = static_cast<std::size_t>(spec.numtaps - 1) / 2 + 1;
    const DenseGrid g = make_grid(spec, r);
    if (g.omega.size() < r + 1) throw Error("InvalidSpec", "bands too narrow for the requested number of taps");

    std::vector<std::size_t> ext(r + 1);
    for (std::size_t i = 0; i <= r; ++i) ext[i] = i * (g.omega.size() - 1) / r;

    double scale = 0.0;
    for (double d : spec.desired) scale = std::max(scale, std::abs(d));
    scale = std::max(scale, 1.0);

    EquirippleResult res;
    double prev_delta = std::numeric_limits<double>::quiet_NaN();
    RealVec err(g.omega.size());
    for (int iter = 1; iter <= kMaxIterations; ++iter) {
        const RemezStep step = solve_on_extrema(g, ext);
        res.iterations = iter;
        res.delta = std::abs(step.delta);
        res.extrema.clear();
        for (std::size_t i : ext) res.extrema.push_back(g.omega[i]);
        res.tf = TransferFunction{cosine_to_taps(step.amplitude, spec.numtaps), {1.0}};

        double max_err = 0.0;
        for (std::size_t j = 0; j < g.omega.size(); ++j) {
            err[j] = g.weight[j] * (g.desired[j] - step.amplitude(g.x[j]));
            max_err = std::max(max_err, std::abs(err[j]));
        }
        // Exactly achievable target: the error is rounding noise.
        if (max_err <= 1e-12 * scale) {
            res.delta = 0.0;
            res.converged = true;
            return res;
        }
        if (iter > 1 && std::abs(res.delta - prev_delta) < 1e-6 * res.delta) {
            res.converged = true;
            return res;
        }
        prev_delta = res.delta;

        std::vector<std::size_t> next = find_extrema(g, err, r + 1);
        if (next.size() < r + 1)
            throw EquirippleNoConvergence("extremal search found " + std::to_string(next.size()) + " of " +
                                              std::to_string(r + 1) + " alternation points",
                                          res);
        if (next == ext) {
            res.converged = true;
            return res;
        }
        ext = std::move(next);
    }
    throw EquirippleNoConvergence("Remez exchange did not converge in 40 iterations; delta " + std::to_string(res.delta),
                                  res);
}

double equiripple_weighted_error(const EquirippleSpec& spec, const TransferFunction& tf, double omega) {
    for (std::size_t i = 0; i < spec.bands.size(); ++i) {
        const Band& b = spec.bands[i];
        if (omega < b.lo || omega > b.hi) continue;
        const double m = 0.5 * static_cast<double>(tf.b.size() - 1);
        const cplx h = evaluate_response(tf, {omega})[0] * std::polar(1.0, omega * m);
        return spec.weight[i] * (spec.desired[i] - h.real());
    }
    throw Error("InvalidSpec", "frequency outside every band");
}

// ---------------------------------------------------------------- IIR

namespace {

// Descending Landen sequence of moduli, k_{i+1} = (k_i / (1 + k_i'))^2, until
// the modulus drops below 1e-14. `kp` is the complementary modulus of `k`.
RealVec landen(double k, double kp) {
    RealVec v;
    for (int i = 0; i < 64; ++i) {
        k = (k / (1.0 + kp)) * (k / (1.0 + kp));
        v.push_back(k);
        if (k < 1e-14) break;
        kp = std::sqrt((1.0 - k) * (1.0 + k));
    }
    return v;
}

RealVec landen(double k) { return landen(k, std::sqrt((1.0 - k) * (1.0 + k))); }

// cd(u K, k) and sn(u K, k) by ascending Landen transformations.
cplx cde(cplx u, const RealVec& v) {
    cplx w = std::cos(u * (kPi / 2.0));
    for (std::size_t i = v.size(); i-- > 0;) w = (1.0 + v[i]) * w / (1.0 + v[i] * w * w);
    return w;
}

cplx sne(cplx u, const RealVec& v) {
    cplx w = std::sin(u * (kPi / 2.0));
    for (std::size_t i = v.size(); i-- > 0;) w = (1.0 + v[i]) * w / (1.0 + v[i] * w * w);
    return w;
}

// Inverse of cd: u with cd(u K, k) = w, by descending Landen.
cplx acde(cplx w, double k, const RealVec& v) {
    double prev = k;
    for (double vi : v) {
        w = w / (1.0 + std::sqrt(1.0 - w * w * (prev * prev))) * (2.0 / (1.0 + vi));
        prev = vi;
    }
    return std::acos(w) * (2.0 / kPi);
}

cplx asne(cplx w, double k, const RealVec& v) { return 1.0 - acde(w, k, v); }

// Solves the degree equation for the selectivity modulus k given the order
// and the discrimination modulus k1 = eps_p / eps_s.
double elliptic_degree(int n, double k1) {
    const double k1p = std::sqrt((1.0 - k1) * (1.0 + k1));
    const RealVec v = landen(k1p, k1);
    double prod = 1.0;
    for (int i = 1; i <= n / 2; ++i) prod *= sne(cplx((2.0 * i - 1.0) / n, 0.0), v).real();
    const double kp = std::pow(k1p, n) * std::pow(prod, 4);
    const double k = std::sqrt((1.0 - kp) * (1.0 + kp));
    if (!(k > 0.0 && k < 1.0) || !std::isfinite(k)) throw Error("NumericalFailure", "elliptic degree equation failed");
    return k;
}

void check_iir(const IirSpec& spec) {
    if (spec.order < 1 || spec.order > 30) throw Error("InvalidSpec", "order must lie in [1, 30]");
    if (!(spec.cutoff > 0.0 && spec.cutoff < kPi)) throw Error("InvalidSpec", "cutoff must lie in (0, pi)");
    const bool need_rp = spec.family == IirFamily::Chebyshev1 || spec.family == IirFamily::Elliptic;
    const bool need_as = spec.family == IirFamily::Chebyshev2 || spec.family == IirFamily::Elliptic;
    if (need_rp && !(spec.passband_ripple_db > 0.0 && std::isfinite(spec.passband_ripple_db)))
        throw Error("InvalidSpec", "passband_ripple_db must be > 0");
    if (need_as && !(spec.stopband_atten_db > 0.0 && std::isfinite(spec.stopband_atten_db)))
        throw Error("InvalidSpec", "stopband_atten_db must be > 0");
    if (spec.family == IirFamily::Elliptic && !(spec.stopband_atten_db > spec.passband_ripple_db))
        throw Error("InvalidSpec", "stopband attenuation must exceed passband ripple");
}

ComplexVec chebyshev_poles(int n, double eps) {
    const double mu = std::asinh(1.0 / eps) / n;
    ComplexVec p;
    for (int k = 1; k <= n; ++k) {
        const double theta = (2.0 * k - 1.0) * kPi / (2.0 * n);
        p.emplace_back(-std::sinh(mu) * std::sin(theta), std::cosh(mu) * std::cos(theta));
    }
    return p;
}

cplx product_neg(const ComplexVec& roots) {
    cplx p = 1.0;
    for (const cplx& r : roots) p *= -r;
    return p;
}

RealVec real_poly(const ComplexVec& roots) {
    ComplexVec c{cplx(1.0, 0.0)};
    for (const cplx& r : roots) {
        c.push_back(0.0);
        for (std::size_t k = c.size() - 1; k > 0; --k) c[k] -= r * c[k - 1];
    }
    RealVec out(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) out[k] = c[k].real();
    return out;
}

}  // namespace

AnalogPrototype analog_prototype(const IirSpec& spec) {
    check_iir(spec);
    const int n = spec.order;
    AnalogPrototype proto;
    switch (spec.family) {
        case IirFamily::Butterworth:
            for (int k = 1; k <= n; ++k) proto.poles.push_back(std::polar(1.0, kPi * (2.0 * k + n - 1.0) / (2.0 * n)));
            break;
        case IirFamily::Chebyshev1: {
            const double eps = std::sqrt(std::pow(10.0, spec.passband_ripple_db / 10.0) - 1.0);
            proto.poles = chebyshev_poles(n, eps);
            if (n % 2 == 0) proto.dc_gain = 1.0 / std::sqrt(1.0 + eps * eps);
            break;
        }
        case IirFamily::Chebyshev2: {
            const double eps = 1.0 / std::sqrt(std::pow(10.0, spec.stopband_atten_db / 10.0) - 1.0);
            for (const cplx& q : chebyshev_poles(n, eps)) proto.poles.push_back(1.0 / q);
            for (int k = 1; k <= n; ++k) {
                if (2 * k - 1 == n) continue;  // cos(pi/2): zero at infinity
                const double theta = (2.0 * k - 1.0) * kPi / (2.0 * n);
                proto.zeros.emplace_back(0.0, 1.0 / std::cos(theta));
            }
            break;
        }
        case IirFamily::Elliptic: {
            const double eps_p = std::sqrt(std::pow(10.0, spec.passband_ripple_db / 10.0) - 1.0);
            const double eps_s = std::sqrt(std::pow(10.0, spec.stopband_atten_db / 10.0) - 1.0);
            const double k1 = eps_p / eps_s;
            const double k = elliptic_degree(n, k1);
            const RealVec vk = landen(k);
            const RealVec vk1 = landen(k1);
            const double v0 = (cplx(0.0, -1.0) * asne(cplx(0.0, 1.0 / eps_p), k1, vk1)).real() / n;
            for (int i = 1; i <= n / 2; ++i) {
                const double ui = (2.0 * i - 1.0) / n;
                const double zeta = cde(cplx(ui, 0.0), vk).real();
                const cplx z(0.0, 1.0 / (k * zeta));
                proto.zeros.push_back(z);
                proto.zeros.push_back(std::conj(z));
                const cplx p = cplx(0.0, 1.0) * cde(cplx(ui, -v0), vk);
                proto.poles.push_back(p);
                proto.poles.push_back(std::conj(p));
            }
            if (n % 2 == 1) proto.poles.emplace_back((cplx(0.0, 1.0) * sne(cplx(0.0, v0), vk)).real(), 0.0);
            if (n % 2 == 0) proto.dc_gain = 1.0 / std::sqrt(1.0 + eps_p * eps_p);
            proto.stopband_edge = 1.0 / k;
            break;
        }
    }
    for (const cplx& p : proto.poles)
        if (!(p.real() < 0.0)) throw Error("NumericalFailure", "analog prototype pole outside the left half-plane");
    proto.gain = proto.dc_gain * std::abs(product_neg(proto.poles) / product_neg(proto.zeros));
    return proto;
}

double analog_magnitude(const AnalogPrototype& proto, double omega) {
    const cplx s(0.0, omega);
    cplx h = proto.gain;
    for (const cplx& z : proto.zeros) h *= s - z;
    for (const cplx& p : proto.poles) h /= s - p;
    return std::abs(h);
}

TransferFunction design_iir(const IirSpec& spec) {
    const AnalogPrototype proto = analog_prototype(spec);
    const double warped = 2.0 * std::tan(spec.cutoff / 2.0);
    const bool low = spec.kind == BandKind::Lowpass;

    ComplexVec az, ap;
    for (const cplx& z : proto.zeros) az.push_back(low ? z * warped : warped / z);
    for (const cplx& p : proto.poles) ap.push_back(low ? p * warped : warped / p);

    // Bilinear map z = (2 + s) / (2 - s). Analog zeros at infinity land on
    // z = -1 (lowpass) or, after s -> W/s, on s = 0 i.e. z = +1 (highpass).
    ComplexVec dz, dp;
    for (const cplx& z : az) dz.push_back((2.0 + z) / (2.0 - z));
    for (const cplx& p : ap) dp.push_back((2.0 + p) / (2.0 - p));
    const std::size_t extra = dp.size() - dz.size();
    dz.insert(dz.end(), extra, cplx(low ? -1.0 : 1.0, 0.0));

    RealVec b = real_poly(dz);
    RealVec a = real_poly(dp);
    TransferFunction tf{std::move(b), std::move(a)};
    const double ref = low ? 0.0 : kPi;
    const cplx h = evaluate_response(tf, {ref})[0];
    const double g = proto.dc_gain / h.real();
    for (double& v : tf.b) v *= g;
    return tf;
}

double elliptic_stopband_edge(const IirSpec& spec) {
    if (spec.family != IirFamily::Elliptic) throw Error("InvalidSpec", "stopband edge is defined for elliptic designs");
    const AnalogPrototype proto = analog_prototype(spec);
    const double warped = 2.0 * std::tan(spec.cutoff / 2.0);
    const double edge = spec.kind == BandKind::Lowpass ? warped * proto.stopband_edge : warped / proto.stopband_edge;
    return 2.0 * std::atan(edge / 2.0);
}

}  // namespace jdsp
