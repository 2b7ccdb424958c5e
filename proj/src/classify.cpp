#include "jdsp/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "jdsp/filter.hpp"
#include "jdsp/kernels.hpp"

namespace jdsp {

void FeatureMatrix::add_row(const RealVec& row) {
    if (cols == 0) cols = row.size();
    if (row.size() != cols) throw Error("DimensionMismatch", "row width differs from matrix width");
    data.insert(data.end(), row.begin(), row.end());
}

namespace {

void check_finite(const FeatureMatrix& m) {
    for (double v : m.data)
        if (!std::isfinite(v)) throw Error("InvalidData", "feature matrix contains non-finite values");
}

// k-means++ seeding: first centre uniform, the rest drawn with probability
// proportional to squared distance from the nearest chosen centre.
RealVec seed_centroids(const FeatureMatrix& data, std::size_t k, Rng& rng) {
    const std::size_t n = data.rows();
    const std::size_t d = data.cols;
    RealVec c;
    c.reserve(k * d);
    auto take = [&](std::size_t i) { c.insert(c.end(), data.data.begin() + static_cast<std::ptrdiff_t>(i * d),
                                              data.data.begin() + static_cast<std::ptrdiff_t>((i + 1) * d)); };
    take(uniform_index(rng, n));
    RealVec d2(n, std::numeric_limits<double>::infinity());
    while (c.size() < k * d) {
        const std::size_t last = c.size() / d - 1;
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t t = 0; t < d; ++t) {
                const double diff = data.at(i, t) - c[last * d + t];
                s += diff * diff;
            }
            d2[i] = std::min(d2[i], s);
            total += d2[i];
        }
        std::size_t pick = n - 1;
        if (total > 0.0) {
            const double u = uniform01(rng) * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (u < acc) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = uniform_index(rng, n);
        }
        take(pick);
    }
    return c;
}

}  // namespace

KMeansModel kmeans(const FeatureMatrix& data, int k, Rng& rng, int max_iter, double tol) {
    if (data.rows() == 0 || data.cols == 0) throw Error("EmptyData", "k-means needs at least one point");
    if (k < 1 || static_cast<std::size_t>(k) > data.rows()) throw Error("InvalidK", "k must lie in [1, n_points]");
    if (max_iter < 1) throw Error("InvalidSpec", "max_iter must be >= 1");
    check_finite(data);

    const std::size_t n = data.rows();
    const std::size_t d = data.cols;
    const auto kk = static_cast<std::size_t>(k);

    KMeansModel m;
    m.dims = d;
    m.centroids = seed_centroids(data, kk, rng);
    m.assignments.assign(n, 0);
    RealVec dist2(n, 0.0);

    auto assign = [&] {
        kernels::assign_nearest(data.data, d, m.centroids, m.assignments, dist2);
        m.inertia = std::accumulate(dist2.begin(), dist2.end(), 0.0);
        m.inertia_history.push_back(m.inertia);
    };
    assign();

    for (int it = 1; it <= max_iter; ++it) {
        std::vector<int> labels = m.assignments;
        std::vector<std::size_t> count(kk, 0);
        for (int a : labels) ++count[static_cast<std::size_t>(a)];

        // Empty clusters seize the point farthest from its own centroid.
        for (std::size_t j = 0; j < kk; ++j) {
            if (count[j] != 0) continue;
            std::size_t far = n;
            double best = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (count[static_cast<std::size_t>(labels[i])] > 1 && dist2[i] > best) {
                    best = dist2[i];
                    far = i;
                }
            }
            if (far == n) break;
            --count[static_cast<std::size_t>(labels[far])];
            labels[far] = static_cast<int>(j);
            dist2[far] = 0.0;
            count[j] = 1;
        }

        RealVec next(kk * d, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t t = 0; t < d; ++t) next[static_cast<std::size_t>(labels[i]) * d + t] += data.at(i, t);
        double movement = 0.0;
        for (std::size_t j = 0; j < kk; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < d; ++t) {
                double& v = next[j * d + t];
                v = count[j] ? v / static_cast<double>(count[j]) : m.centroids[j * d + t];
                const double diff = v - m.centroids[j * d + t];
                s += diff * diff;
            }
            movement = std::max(movement, std::sqrt(s));
        }
        m.centroids = std::move(next);

        const std::vector<int> before = m.assignments;
        assign();
        m.iterations = it;
        if (m.assignments == before || movement < tol) break;
    }
    return m;
}

KMeansModel kmeans(const FeatureMatrix& data, int k, std::uint64_t seed, int max_iter, double tol) {
    Rng rng(seed);
    return kmeans(data, k, rng, max_iter, tol);
}

std::vector<int> nearest_centroid_classify(const KMeansModel& model, const FeatureMatrix& points) {
    if (points.rows() == 0) return {};
    if (points.cols != model.dims) throw Error("DimensionMismatch", "point dimension differs from centroid dimension");
    std::vector<int> out(points.rows());
    RealVec d2(points.rows());
    kernels::assign_nearest(points.data, points.cols, model.centroids, out, d2);
    return out;
}

std::vector<int> map_clusters_to_labels(const std::vector<int>& assignments, const std::vector<int>& true_labels, int k) {
    if (assignments.size() != true_labels.size()) throw Error("LengthMismatch", "assignments and labels differ in length");
    if (k < 1) throw Error("InvalidK", "k must be >= 1");
    int n_classes = 1;
    for (int l : true_labels) {
        if (l < 0) throw Error("LabelOutOfRange", "negative class label");
        n_classes = std::max(n_classes, l + 1);
    }
    std::vector<std::vector<long long>> votes(static_cast<std::size_t>(k), std::vector<long long>(static_cast<std::size_t>(n_classes), 0));
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (assignments[i] < 0 || assignments[i] >= k) throw Error("InvalidK", "assignment outside [0, k)");
        ++votes[static_cast<std::size_t>(assignments[i])][static_cast<std::size_t>(true_labels[i])];
    }
    std::vector<int> map(static_cast<std::size_t>(k), 0);
    for (std::size_t c = 0; c < map.size(); ++c) {
        const auto& v = votes[c];
        // max_element returns the first maximum, i.e. the lower class on ties.
        map[c] = static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
    }
    return map;
}

ConfusionMatrix confusion_matrix(const std::vector<int>& true_labels, const std::vector<int>& predicted, int n_classes) {
    if (true_labels.size() != predicted.size()) throw Error("LengthMismatch", "label vectors differ in length");
    if (n_classes < 1) throw Error("InvalidSpec", "need at least one class");
    ConfusionMatrix cm;
    const auto nc = static_cast<std::size_t>(n_classes);
    cm.counts.assign(nc, std::vector<long long>(nc, 0));
    for (std::size_t i = 0; i < true_labels.size(); ++i) {
        const int t = true_labels[i];
        const int p = predicted[i];
        if (t < 0 || t >= n_classes || p < 0 || p >= n_classes) throw Error("LabelOutOfRange", "label outside [0, n_classes)");
        ++cm.counts[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
    }
    cm.total = static_cast<long long>(true_labels.size());
    for (std::size_t c = 0; c < nc; ++c) cm.correct += cm.counts[c][c];
    cm.no_samples = cm.total == 0;
    cm.accuracy = cm.no_samples ? 0.0 : static_cast<double>(cm.correct) / static_cast<double>(cm.total);
    for (std::size_t c = 0; c < nc; ++c) cm.class_names.push_back("class" + std::to_string(c));
    return cm;
}

Signal add_noise_snr(const Signal& x, double snr_db, Rng& rng) {
    double power = 0.0;
    for (double v : x.samples) power += v * v;
    power /= std::max<std::size_t>(1, x.size());
    const double sigma = std::sqrt(power / std::pow(10.0, snr_db / 10.0));
    Signal y = x;
    for (double& v : y.samples) v += sigma * gaussian(rng);
    return y;
}

Signal synthesize_resonator(const std::vector<Formant>& formants, double sample_rate_hz, int length, Rng& rng) {
    ComplexVec poles;
    for (const Formant& f : formants) {
        const cplx p = std::polar(pole_radius_from_bandwidth(f.bandwidth_hz, sample_rate_hz),
                                  2.0 * kPi * f.frequency_hz / sample_rate_hz);
        poles.push_back(p);
        poles.push_back(std::conj(p));
    }
    const TransferFunction tf{{1.0}, expand_roots(poles, 1.0)};
    Signal drive{RealVec(static_cast<std::size_t>(length)), sample_rate_hz};
    for (double& v : drive.samples) v = gaussian(rng);
    Signal y = filter_signal(tf, drive);
    const double peak = std::max(1e-300, std::abs(*std::max_element(y.samples.begin(), y.samples.end(),
                                                                  [](double l, double r) { return std::abs(l) < std::abs(r); })));
    for (double& v : y.samples) v *= 0.9 / peak;
    return y;
}

FeatureMatrix formant_features(const std::vector<LabeledUtterance>& utterances, const PhonemeConfig& cfg, Rng& rng) {
    const std::size_t dims = cfg.use_f3 ? 3 : 2;
    FeatureMatrix fm;
    fm.cols = dims;
    fm.column_names = {"f1", "f2"};
    if (cfg.use_f3) fm.column_names.push_back("f3");
    for (const LabeledUtterance& u : utterances) {
        const Signal x = cfg.noise_snr_db ? add_noise_snr(u.signal, *cfg.noise_snr_db, rng) : u.signal;
        for (const RealVec& frame : frame_signal(x, cfg.frames)) {
            const std::vector<Formant> f = formants_from_lpc(fit_frame(frame, cfg.lpc_order), x.sample_rate_hz);
            if (f.size() < dims) continue;
            RealVec row;
            for (std::size_t i = 0; i < dims; ++i) row.push_back(f[i].frequency_hz);
            fm.add_row(row);
            fm.labels.push_back(u.label);
        }
    }
    return fm;
}

PhonemeResult classify_features(const FeatureMatrix& features, int k, double train_fraction, Rng& rng) {
    const std::size_t n = features.rows();
    if (features.labels.size() != n) throw Error("LengthMismatch", "every feature row needs a label");
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw Error("InvalidSpec", "train fraction must lie in (0, 1)");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[uniform_index(rng, i)]);
    const auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));

    int n_classes = static_cast<int>(features.class_names.size());
    for (int l : features.labels) n_classes = std::max(n_classes, l + 1);

    FeatureMatrix train, test;
    train.cols = test.cols = features.cols;
    std::vector<int> train_labels, test_labels;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = order[i];
        RealVec row(features.data.begin() + static_cast<std::ptrdiff_t>(r * features.cols),
                    features.data.begin() + static_cast<std::ptrdiff_t>((r + 1) * features.cols));
        if (i < n_train) {
            train.data.insert(train.data.end(), row.begin(), row.end());
            train_labels.push_back(features.labels[r]);
        } else {
            test.data.insert(test.data.end(), row.begin(), row.end());
            test_labels.push_back(features.labels[r]);
        }
    }

    PhonemeResult res;
    res.features = features;
    res.model = kmeans(train, k, rng);
    res.cluster_to_label = map_clusters_to_labels(res.model.assignments, train_labels, k);
    std::vector<int> predicted;
    for (int c : nearest_centroid_classify(res.model, test)) predicted.push_back(res.cluster_to_label[static_cast<std::size_t>(c)]);
    res.confusion = confusion_matrix(test_labels, predicted, std::max(1, n_classes));
    if (features.class_names.size() == static_cast<std::size_t>(n_classes)) res.confusion.class_names = features.class_names;
    return res;
}

PhonemeResult phoneme_experiment(const std::vector<LabeledUtterance>& utterances, const PhonemeConfig& cfg) {
    Rng rng(cfg.seed);
    const FeatureMatrix features = formant_features(utterances, cfg, rng);
    return classify_features(features, cfg.k, cfg.train_fraction, rng);
}

}  // namespace jdsp
