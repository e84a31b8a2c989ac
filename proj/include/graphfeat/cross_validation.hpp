#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphfeat/features.hpp"
#include "graphfeat/folds.hpp"
#include "graphfeat/knn.hpp"
#include "graphfeat/parallel.hpp"
#include "graphfeat/random_forest.hpp"
#include "graphfeat/rng.hpp"
#include "graphfeat/svm.hpp"

namespace graphfeat {

enum class ClassifierKind { knn, svm, rf };

inline const char* classifier_name(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::knn: return "knn";
        case ClassifierKind::svm: return "svm";
        default: return "rf";
    }
}

struct ClassifierConfig {
    ClassifierKind kind = ClassifierKind::rf;
    int knn_k = 5;
    double svm_c = 10.0;
    double svm_tol = 1e-3;
    int svm_max_iter = 100000;
    int rf_trees = 200;
    int rf_max_depth = 5;
    std::uint64_t seed = 42;
    bool scale = true;  // z-score knn/svm inputs; trees always see raw values
    int jobs = 1;
};

struct CVResult {
    std::vector<double> fold_accuracy;  // each in [0, 1]
    double mean_accuracy_pct = 0.0;
    std::string classifier;
    std::uint32_t feature_mask = 0;
    std::string dataset;
    std::uint64_t seed = 0;
};

inline constexpr std::uint32_t full_mask(int cols) { return (1u << cols) - 1u; }

/// Per fold: fit the standardizer on the training rows only (knn/svm with
/// scaling on), train, score the held-out rows. The mean is reported as a
/// percentage. Random-forest folds are seeded from (config seed, fold), so
/// results are bit-reproducible and paired across feature masks.
inline CVResult cross_validate(const FeatureMatrix& fm, const ClassifierConfig& cfg,
                               const FoldAssignment& folds, const std::string& dataset_name = "",
                               std::uint32_t mask = 0) {
    if (folds.fold_of_row.size() != fm.rows())
        throw std::invalid_argument("cross_validate: fold assignment does not cover the matrix");

    CVResult result;
    result.classifier = classifier_name(cfg.kind);
    result.dataset = dataset_name;
    result.seed = cfg.seed;
    result.feature_mask = mask ? mask : full_mask(fm.cols());
    result.fold_accuracy.resize(static_cast<std::size_t>(folds.k), 0.0);

    for (int f = 0; f < folds.k; ++f) {
        std::vector<std::size_t> train_rows, test_rows;
        for (std::size_t i = 0; i < fm.rows(); ++i)
            (folds.fold_of_row[i] == f ? test_rows : train_rows).push_back(i);
        if (test_rows.empty())
            throw std::invalid_argument("cross_validate: fold " + std::to_string(f) +
                                        " has no held-out rows; reduce the fold count");
        if (train_rows.empty())
            throw std::invalid_argument("cross_validate: fold " + std::to_string(f) +
                                        " has no training rows");

        FeatureMatrix train = fm.select_rows(train_rows);
        FeatureMatrix test = fm.select_rows(test_rows);
        const bool scale_now = cfg.scale && cfg.kind != ClassifierKind::rf;
        if (scale_now) {
            Standardizer s = Standardizer::fit(train);
            train = s.apply(train);
            test = s.apply(test);
        }

        std::size_t correct = 0;
        try {
            switch (cfg.kind) {
                case ClassifierKind::knn: {
                    KnnConfig kc{cfg.knn_k};
                    for (std::size_t i = 0; i < test.rows(); ++i)
                        if (knn_predict(train, test.row(i), kc) == test.labels[i]) ++correct;
                    break;
                }
                case ClassifierKind::svm: {
                    SvmModel model = svm_train(train, cfg.svm_c, cfg.svm_tol, cfg.svm_max_iter);
                    for (std::size_t i = 0; i < test.rows(); ++i)
                        if (svm_predict(model, test.row(i)) == test.labels[i]) ++correct;
                    break;
                }
                case ClassifierKind::rf: {
                    RfConfig rc;
                    rc.trees = cfg.rf_trees;
                    rc.max_depth = cfg.rf_max_depth;
                    rc.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(f));
                    rc.jobs = cfg.jobs;
                    Forest forest = rf_train(train, rc);
                    for (std::size_t i = 0; i < test.rows(); ++i)
                        if (rf_predict(forest, test.row(i)) == test.labels[i]) ++correct;
                    break;
                }
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("cross_validate: fold " + std::to_string(f) + ": " + e.what());
        }
        result.fold_accuracy[static_cast<std::size_t>(f)] =
            static_cast<double>(correct) / static_cast<double>(test_rows.size());
    }

    double mean = 0;
    for (double a : result.fold_accuracy) mean += a;
    result.mean_accuracy_pct = 100.0 * mean / static_cast<double>(folds.k);
    return result;
}

struct SubsetBest {
    int k = 0;
    std::uint32_t mask = 0;
    long long evaluations = 0;
    CVResult result;
};

namespace detail {

inline std::vector<std::uint32_t> masks_of_size(int d, int k) {
    std::vector<std::uint32_t> masks;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (;;) {
        std::uint32_t m = 0;
        for (int i : idx) m |= 1u << i;
        masks.push_back(m);
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == d - k + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < k; ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i) - 1] + 1;
    }
    return masks;
}

inline std::vector<int> mask_columns(std::uint32_t mask, int d) {
    std::vector<int> cols;
    for (int j = 0; j < d; ++j)
        if (mask & (1u << j)) cols.push_back(j);
    return cols;
}

}  // namespace detail

/// Exhaustive feature-subset search with a random-forest scorer: for each
/// subset size in [k_min, k_max], every C(d, k) column mask is scored by
/// cross_validate under the one shared fold assignment. Enumeration is in
/// lexicographic order of the column index lists and the best score is kept
/// with strict improvement, so ties resolve to the lexicographically
/// smallest mask no matter how many threads score masks.
inline std::vector<SubsetBest> subset_search(const FeatureMatrix& fm, int k_min, int k_max,
                                             const ClassifierConfig& cfg, const FoldAssignment& folds,
                                             const std::string& dataset_name = "", int jobs = 1) {
    if (cfg.kind != ClassifierKind::rf)
        throw std::invalid_argument("subset_search: the scorer is the random forest");
    const int d = fm.cols();
    if (k_min < 1 || k_max > d || k_min > k_max)
        throw std::invalid_argument("subset_search: bad subset-size range");

    ClassifierConfig inner = cfg;
    inner.jobs = 1;  // parallelism goes across masks

    std::vector<SubsetBest> out;
    for (int k = k_min; k <= k_max; ++k) {
        const std::vector<std::uint32_t> masks = detail::masks_of_size(d, k);
        std::vector<CVResult> results(masks.size());
        std::vector<std::string> errors(masks.size());
        parallel_for(masks.size(), jobs, [&](std::size_t i) {
            try {
                FeatureMatrix sub = fm.select_columns(detail::mask_columns(masks[i], d));
                results[i] = cross_validate(sub, inner, folds, dataset_name, masks[i]);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        });
        for (const auto& e : errors)
            if (!e.empty()) throw std::runtime_error("subset_search: " + e);

        std::size_t best = 0;
        for (std::size_t i = 1; i < masks.size(); ++i)
            if (results[i].mean_accuracy_pct > results[best].mean_accuracy_pct) best = i;

        SubsetBest sb;
        sb.k = k;
        sb.mask = masks[best];
        sb.evaluations = static_cast<long long>(masks.size());
        sb.result = results[best];
        out.push_back(std::move(sb));
    }
    return out;
}

}  // namespace graphfeat
