#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "graphfeat/features.hpp"

namespace graphfeat {

struct KnnConfig {
    int k = 5;
};

/// Majority vote over the k nearest training rows by Euclidean distance.
/// Distance ties prefer the lower training-row index; vote ties go to the
/// class whose nearest selected member is closest, then the lower class id.
inline int knn_predict(const FeatureMatrix& train, std::span<const double> query,
                       const KnnConfig& cfg = {}) {
    if (train.rows() == 0) throw std::invalid_argument("knn_predict: empty training set");
    if (cfg.k < 1 || static_cast<std::size_t>(cfg.k) > train.rows())
        throw std::invalid_argument("knn_predict: k must be in [1, |train|]");
    if (query.size() != static_cast<std::size_t>(train.cols()))
        throw std::invalid_argument("knn_predict: dimension mismatch");

    const std::size_t n = train.rows();
    std::vector<double> dist2(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        auto r = train.row(i);
        double acc = 0;
        for (std::size_t j = 0; j < query.size(); ++j) {
            double d = r[j] - query[j];
            acc += d * d;
        }
        dist2[i] = acc;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (dist2[a] != dist2[b]) return dist2[a] < dist2[b];
        return a < b;
    });

    const int classes = train.num_classes();
    std::vector<int> votes(static_cast<std::size_t>(classes), 0);
    std::vector<double> nearest(static_cast<std::size_t>(classes),
                                std::numeric_limits<double>::infinity());
    for (int i = 0; i < cfg.k; ++i) {
        int label = train.labels[order[static_cast<std::size_t>(i)]];
        ++votes[static_cast<std::size_t>(label)];
        nearest[static_cast<std::size_t>(label)] =
            std::min(nearest[static_cast<std::size_t>(label)], dist2[order[static_cast<std::size_t>(i)]]);
    }
    int best = 0;
    for (int c = 1; c < classes; ++c) {
        if (votes[static_cast<std::size_t>(c)] > votes[static_cast<std::size_t>(best)] ||
            (votes[static_cast<std::size_t>(c)] == votes[static_cast<std::size_t>(best)] &&
             nearest[static_cast<std::size_t>(c)] < nearest[static_cast<std::size_t>(best)]))
            best = c;
    }
    return best;
}

/// k-NN bundled with its training data (the "model" is the data).
struct KnnModel {
    KnnConfig cfg;
    FeatureMatrix train;

    int predict(std::span<const double> x) const { return knn_predict(train, x, cfg); }
};

}  // namespace graphfeat
