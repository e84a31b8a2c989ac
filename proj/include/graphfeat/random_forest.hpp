#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "graphfeat/features.hpp"
#include "graphfeat/parallel.hpp"
#include "graphfeat/rng.hpp"

namespace graphfeat {

/// feature == -1 marks a leaf; leaves keep their class distribution, inner
/// nodes keep sample count and entropy so importances can be recomputed
/// from the stored structure alone.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int n_samples = 0;
    double impurity = 0.0;
    std::vector<int> class_counts;

    bool is_leaf() const { return feature < 0; }
};

struct Tree {
    std::vector<TreeNode> nodes;

    int leaf_for(std::span<const double> x) const {
        int cur = 0;
        while (!nodes[static_cast<std::size_t>(cur)].is_leaf()) {
            const TreeNode& nd = nodes[static_cast<std::size_t>(cur)];
            cur = x[static_cast<std::size_t>(nd.feature)] <= nd.threshold ? nd.left : nd.right;
        }
        return cur;
    }

    int predict(std::span<const double> x) const {
        const auto& counts = nodes[static_cast<std::size_t>(leaf_for(x))].class_counts;
        int best = 0;
        for (std::size_t c2 = 1; c2 < counts.size(); ++c2)
            if (counts[c2] > counts[static_cast<std::size_t>(best)]) best = static_cast<int>(c2);
        return best;
    }
};

struct RfConfig {
    int trees = 200;
    int max_depth = 5;
    std::uint64_t seed = 0;
    int jobs = 1;
};

struct Forest {
    int num_classes = 0;
    int feature_count = 0;
    int max_depth = 5;
    std::uint64_t seed = 0;
    std::vector<Tree> trees;
};

namespace detail {

inline double entropy_bits(const std::vector<int>& counts, int total) {
    if (total <= 0) return 0.0;
    double h = 0;
    for (int c : counts) {
        if (c == 0) continue;
        double p = static_cast<double>(c) / total;
        h -= p * std::log2(p);
    }
    return h;
}

struct TreeBuilder {
    const FeatureMatrix& fm;
    int num_classes;
    int max_depth;
    int mtry;
    Rng rng;
    Tree tree;
    std::vector<std::pair<double, int>> scratch;  // (value, label) for one feature

    TreeBuilder(const FeatureMatrix& fm_, int classes, int depth, std::uint64_t seed)
        : fm(fm_), num_classes(classes), max_depth(depth),
          mtry(static_cast<int>(std::ceil(std::sqrt(static_cast<double>(fm_.cols()))))),
          rng(seed) {}

    int build(std::vector<int>& samples, int depth) {
        std::vector<int> counts(static_cast<std::size_t>(num_classes), 0);
        for (int s : samples) ++counts[static_cast<std::size_t>(fm.labels[static_cast<std::size_t>(s)])];
        const int total = static_cast<int>(samples.size());
        const double impurity = entropy_bits(counts, total);

        const int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes[static_cast<std::size_t>(node_id)].n_samples = total;
        tree.nodes[static_cast<std::size_t>(node_id)].impurity = impurity;

        bool make_leaf = depth >= max_depth || impurity <= 0.0;
        int best_feature = -1;
        double best_threshold = 0, best_gain = 0;
        if (!make_leaf) {
            std::vector<int> feats = rng.sample_without_replacement(fm.cols(), std::min(mtry, fm.cols()));
            for (int f : feats) {
                scratch.clear();
                for (int s : samples)
                    scratch.emplace_back(fm.at(static_cast<std::size_t>(s), f),
                                         fm.labels[static_cast<std::size_t>(s)]);
                std::sort(scratch.begin(), scratch.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                std::vector<int> left(static_cast<std::size_t>(num_classes), 0);
                std::vector<int> right = counts;
                for (int i = 0; i + 1 < total; ++i) {
                    ++left[static_cast<std::size_t>(scratch[static_cast<std::size_t>(i)].second)];
                    --right[static_cast<std::size_t>(scratch[static_cast<std::size_t>(i)].second)];
                    double lo = scratch[static_cast<std::size_t>(i)].first;
                    double hi = scratch[static_cast<std::size_t>(i) + 1].first;
                    if (lo == hi) continue;
                    int nl = i + 1, nr = total - nl;
                    double gain = impurity -
                                  (static_cast<double>(nl) / total) * entropy_bits(left, nl) -
                                  (static_cast<double>(nr) / total) * entropy_bits(right, nr);
                    if (gain > best_gain + 1e-12) {
                        best_gain = gain;
                        best_feature = f;
                        best_threshold = (lo + hi) / 2.0;  // midpoint between distinct values
                    }
                }
            }
            if (best_feature < 0) make_leaf = true;
        }

        if (make_leaf) {
            tree.nodes[static_cast<std::size_t>(node_id)].class_counts = std::move(counts);
            return node_id;
        }

        std::vector<int> left_samples, right_samples;
        for (int s : samples)
            (fm.at(static_cast<std::size_t>(s), best_feature) <= best_threshold ? left_samples
                                                                                : right_samples)
                .push_back(s);
        samples.clear();
        samples.shrink_to_fit();

        tree.nodes[static_cast<std::size_t>(node_id)].feature = best_feature;
        tree.nodes[static_cast<std::size_t>(node_id)].threshold = best_threshold;
        int left_id = build(left_samples, depth + 1);
        tree.nodes[static_cast<std::size_t>(node_id)].left = left_id;
        int right_id = build(right_samples, depth + 1);
        tree.nodes[static_cast<std::size_t>(node_id)].right = right_id;
        return node_id;
    }
};

}  // namespace detail

/// Bagged entropy trees: each tree draws a bootstrap sample of the full
/// training size from a generator seeded by (seed, tree index) and considers
/// ceil(sqrt(d)) features per split. Identical (data, config, seed) give an
/// identical forest regardless of thread count.
inline Forest rf_train(const FeatureMatrix& fm, const RfConfig& cfg = {}) {
    if (fm.rows() == 0) throw std::invalid_argument("rf_train: empty training set");
    if (cfg.trees < 1) throw std::invalid_argument("rf_train: need at least one tree");

    Forest forest;
    forest.num_classes = fm.num_classes();
    forest.feature_count = fm.cols();
    forest.max_depth = cfg.max_depth;
    forest.seed = cfg.seed;
    forest.trees.resize(static_cast<std::size_t>(cfg.trees));

    parallel_for(static_cast<std::size_t>(cfg.trees), cfg.jobs, [&](std::size_t t) {
        detail::TreeBuilder builder(fm, forest.num_classes, cfg.max_depth,
                                    mix_seed(cfg.seed, static_cast<std::uint64_t>(t)));
        std::vector<int> sample = builder.rng.bootstrap_indices(static_cast<int>(fm.rows()));
        builder.build(sample, 0);
        forest.trees[t] = std::move(builder.tree);
    });
    return forest;
}

/// Majority vote over trees; ties go to the lower class id.
inline int rf_predict(const Forest& forest, std::span<const double> x) {
    std::vector<int> votes(static_cast<std::size_t>(forest.num_classes), 0);
    for (const Tree& t : forest.trees) ++votes[static_cast<std::size_t>(t.predict(x))];
    int best = 0;
    for (int c = 1; c < forest.num_classes; ++c)
        if (votes[static_cast<std::size_t>(c)] > votes[static_cast<std::size_t>(best)]) best = c;
    return best;
}

/// Mean decrease in impurity: every split credits its entropy reduction,
/// weighted by the node's share of the tree's samples, to the split feature.
/// Per-tree vectors are normalized to sum 1 and averaged over the trees that
/// split at all; a forest of pure stumps yields the zero vector.
inline std::vector<double> rf_feature_importance(const Forest& forest) {
    std::vector<double> total(static_cast<std::size_t>(forest.feature_count), 0.0);
    int contributing = 0;
    std::vector<double> per_tree(static_cast<std::size_t>(forest.feature_count));
    for (const Tree& t : forest.trees) {
        std::fill(per_tree.begin(), per_tree.end(), 0.0);
        const double root_samples = t.nodes.empty() ? 0.0 : t.nodes[0].n_samples;
        for (const TreeNode& nd : t.nodes) {
            if (nd.is_leaf()) continue;
            const TreeNode& l = t.nodes[static_cast<std::size_t>(nd.left)];
            const TreeNode& r = t.nodes[static_cast<std::size_t>(nd.right)];
            double drop = nd.impurity -
                          (static_cast<double>(l.n_samples) / nd.n_samples) * l.impurity -
                          (static_cast<double>(r.n_samples) / nd.n_samples) * r.impurity;
            per_tree[static_cast<std::size_t>(nd.feature)] +=
                drop * (static_cast<double>(nd.n_samples) / root_samples);
        }
        double sum = 0;
        for (double x : per_tree) sum += x;
        if (sum > 0) {
            ++contributing;
            for (std::size_t j = 0; j < per_tree.size(); ++j) total[j] += per_tree[j] / sum;
        }
    }
    if (contributing > 0)
        for (double& x : total) x /= contributing;
    return total;
}

}  // namespace graphfeat
