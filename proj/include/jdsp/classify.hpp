#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jdsp/common.hpp"
#include "jdsp/lpc.hpp"
#include "jdsp/random.hpp"

namespace jdsp {

/// Row-major n x d real matrix with optional per-row class labels.
struct FeatureMatrix {
    std::size_t cols = 0;
    RealVec data;
    std::vector<std::string> column_names;
    std::vector<int> labels;               // empty or one per row
    std::vector<std::string> class_names;  // optional names for label ids
    // Hint for serializers ("", "pole_zero", "formants", "confusion", "response").
    std::string layout;

    std::size_t rows() const { return cols == 0 ? 0 : data.size() / cols; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    void add_row(const RealVec& row);
};

struct KMeansModel {
    std::size_t dims = 0;
    RealVec centroids;  // k x dims row-major
    double inertia = 0.0;
    int iterations = 0;
    std::vector<int> assignments;
    RealVec inertia_history;  // after every assignment step

    std::size_t k() const { return dims == 0 ? 0 : centroids.size() / dims; }
};

struct ConfusionMatrix {
    std::vector<std::vector<long long>> counts;  // [true][predicted]
    std::vector<std::string> class_names;
    long long total = 0;
    long long correct = 0;
    double accuracy = 0.0;
    bool no_samples = true;
};

KMeansModel kmeans(const FeatureMatrix& data, int k, std::uint64_t seed, int max_iter = 300, double tol = 1e-6);
KMeansModel kmeans(const FeatureMatrix& data, int k, Rng& rng, int max_iter = 300, double tol = 1e-6);

std::vector<int> nearest_centroid_classify(const KMeansModel& model, const FeatureMatrix& points);

/// Majority true label per cluster; empty clusters map to 0, ties to the lower class.
std::vector<int> map_clusters_to_labels(const std::vector<int>& assignments, const std::vector<int>& true_labels, int k);

ConfusionMatrix confusion_matrix(const std::vector<int>& true_labels, const std::vector<int>& predicted, int n_classes);

struct LabeledUtterance {
    Signal signal;
    int label = 0;
};

struct PhonemeConfig {
    int k = 2;
    std::uint64_t seed = 0;
    std::optional<double> noise_snr_db;  // Gaussian noise added before LPC
    int lpc_order = 8;
    FrameSpec frames{256, 256, {WindowKind::Hamming, 256, 0.0}};
    bool use_f3 = false;
    double train_fraction = 0.7;
};

struct PhonemeResult {
    ConfusionMatrix confusion;
    KMeansModel model;
    std::vector<int> cluster_to_label;
    FeatureMatrix features;  // all labeled formant rows before the split
};

/// Per-frame (F1, F2[, F3]) rows from LPC formants; frames with too few
/// formants are dropped.
FeatureMatrix formant_features(const std::vector<LabeledUtterance>& utterances, const PhonemeConfig& cfg, Rng& rng);

/// Split, cluster, map, classify and score a labeled feature matrix.
PhonemeResult classify_features(const FeatureMatrix& features, int k, double train_fraction, Rng& rng);

/// Full pipeline: optional noise, LPC formants, k-means, confusion matrix.
PhonemeResult phoneme_experiment(const std::vector<LabeledUtterance>& utterances, const PhonemeConfig& cfg);

/// Adds white Gaussian noise at the given SNR (relative to the signal's mean power).
Signal add_noise_snr(const Signal& x, double snr_db, Rng& rng);

/// All-pole resonator driven by white Gaussian noise, one conjugate pole pair
/// per formant (frequency Hz, bandwidth Hz).
Signal synthesize_resonator(const std::vector<Formant>& formants, double sample_rate_hz, int length, Rng& rng);

}  // namespace jdsp
