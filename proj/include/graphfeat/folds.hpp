#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "graphfeat/rng.hpp"

namespace graphfeat {

struct FoldAssignment {
    std::vector<int> fold_of_row;
    int k = 0;
    std::uint64_t seed = 0;
    std::vector<int> short_classes;  // classes with fewer than k rows
};

/// Stratified k-fold split: per class, rows are shuffled by a seeded
/// generator and dealt round-robin. The fold pointer continues across
/// classes instead of resetting, which keeps total fold sizes balanced and
/// spreads classes shorter than k (reported in `short_classes`).
inline FoldAssignment stratified_folds(std::span<const int> labels, int k = 5,
                                       std::uint64_t seed = 0) {
    const std::size_t n = labels.size();
    if (k < 2) throw std::invalid_argument("stratified_folds: k must be at least 2");
    if (static_cast<std::size_t>(k) > n)
        throw std::invalid_argument("stratified_folds: k exceeds the number of rows");

    int classes = 0;
    for (int l : labels) {
        if (l < 0) throw std::invalid_argument("stratified_folds: negative label");
        classes = std::max(classes, l + 1);
    }
    std::vector<std::vector<int>> by_class(static_cast<std::size_t>(classes));
    for (std::size_t i = 0; i < n; ++i)
        by_class[static_cast<std::size_t>(labels[i])].push_back(static_cast<int>(i));

    FoldAssignment fa;
    fa.fold_of_row.assign(n, 0);
    fa.k = k;
    fa.seed = seed;
    Rng rng(mix_seed(seed, 0xf01d5u));
    int next_fold = 0;
    for (int c = 0; c < classes; ++c) {
        auto& rows = by_class[static_cast<std::size_t>(c)];
        if (!rows.empty() && rows.size() < static_cast<std::size_t>(k)) fa.short_classes.push_back(c);
        rng.shuffle(rows);
        for (int r : rows) {
            fa.fold_of_row[static_cast<std::size_t>(r)] = next_fold;
            next_fold = (next_fold + 1) % k;
        }
    }
    return fa;
}

}  // namespace graphfeat
