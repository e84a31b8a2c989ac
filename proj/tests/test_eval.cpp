#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <numeric>

#include <graphfeat/cross_validation.hpp>
#include <graphfeat/folds.hpp>
#include <graphfeat/pca.hpp>
#include <graphfeat/rng.hpp>
#include <graphfeat/stats.hpp>

#include "oracles.hpp"

using namespace graphfeat;

namespace {

FeatureMatrix cluster_toy(int per_class, double gap = 10.0, std::uint64_t seed = 0x70eull) {
    // two tight clusters far apart in a 9-column matrix
    Rng rng(seed);
    FeatureMatrix fm;
    for (int j = 0; j < 9; ++j) fm.names.push_back("f" + std::to_string(j));
    for (int i = 0; i < 2 * per_class; ++i) {
        int label = i % 2;
        std::vector<double> row;
        for (int j = 0; j < 9; ++j)
            row.push_back((label == 0 ? 0.0 : gap) + rng.next_double());
        fm.push_row(i, label, row);
    }
    return fm;
}

}  // namespace

TEST_CASE("stratified folds: exact divisibility gives one row per class per fold") {
    std::vector<int> labels;
    for (int i = 0; i < 10; ++i) labels.push_back(i % 2);
    FoldAssignment fa = stratified_folds(labels, 5, 1);
    REQUIRE(fa.k == 5);
    std::array<std::array<int, 2>, 5> count{};
    for (std::size_t i = 0; i < labels.size(); ++i)
        ++count[static_cast<std::size_t>(fa.fold_of_row[i])][static_cast<std::size_t>(labels[i])];
    for (int f = 0; f < 5; ++f) {
        CHECK(count[static_cast<std::size_t>(f)][0] == 1);
        CHECK(count[static_cast<std::size_t>(f)][1] == 1);
    }
}

TEST_CASE("stratified folds are deterministic in the seed") {
    std::vector<int> labels;
    for (int i = 0; i < 37; ++i) labels.push_back(i % 3);
    FoldAssignment a = stratified_folds(labels, 5, 99);
    FoldAssignment b = stratified_folds(labels, 5, 99);
    FoldAssignment c = stratified_folds(labels, 5, 100);
    CHECK(a.fold_of_row == b.fold_of_row);
    CHECK(a.fold_of_row != c.fold_of_row);
}

TEST_CASE("stratified folds balance classes within one row") {
    // class sizes mirroring a 188-row two-class benchmark split 125/63
    std::vector<int> labels(188, 0);
    for (int i = 125; i < 188; ++i) labels[static_cast<std::size_t>(i)] = 1;
    FoldAssignment fa = stratified_folds(labels, 5, 42);
    std::array<std::array<int, 2>, 5> count{};
    for (std::size_t i = 0; i < labels.size(); ++i)
        ++count[static_cast<std::size_t>(fa.fold_of_row[i])][static_cast<std::size_t>(labels[i])];
    for (int c = 0; c < 2; ++c) {
        int lo = 1 << 20, hi = 0;
        for (int f = 0; f < 5; ++f) {
            lo = std::min(lo, count[static_cast<std::size_t>(f)][static_cast<std::size_t>(c)]);
            hi = std::max(hi, count[static_cast<std::size_t>(f)][static_cast<std::size_t>(c)]);
        }
        CHECK(hi - lo <= 1);
    }

    CHECK_THROWS_AS(stratified_folds(labels, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(stratified_folds(labels, 189, 0), std::invalid_argument);
}

TEST_CASE("short classes are flagged and spread") {
    std::vector<int> labels = {0, 0, 0, 0, 0, 0, 0, 0, 1, 1};
    FoldAssignment fa = stratified_folds(labels, 5, 7);
    CHECK(fa.short_classes == std::vector<int>{1});
}

TEST_CASE("cross_validate reaches 100% on separable clusters with every classifier") {
    FeatureMatrix fm = cluster_toy(10);
    FoldAssignment folds = stratified_folds(fm.labels, 5, 42);
    for (auto kind : {ClassifierKind::knn, ClassifierKind::svm, ClassifierKind::rf}) {
        ClassifierConfig cfg;
        cfg.kind = kind;
        cfg.rf_trees = 30;
        CVResult r = cross_validate(fm, cfg, folds, "toy");
        CHECK(r.mean_accuracy_pct == Catch::Approx(100.0));
        for (double a : r.fold_accuracy) CHECK(a == 1.0);
    }
}

TEST_CASE("cross_validate fold accuracies are reproducible bit for bit") {
    FeatureMatrix fm = cluster_toy(10, 2.0);
    FoldAssignment folds = stratified_folds(fm.labels, 5, 42);
    ClassifierConfig cfg;
    cfg.kind = ClassifierKind::rf;
    cfg.rf_trees = 25;
    cfg.seed = 17;
    CVResult a = cross_validate(fm, cfg, folds, "toy");
    CVResult b = cross_validate(fm, cfg, folds, "toy");
    CHECK(a.fold_accuracy == b.fold_accuracy);
    CHECK(a.mean_accuracy_pct == b.mean_accuracy_pct);
}

TEST_CASE("label permutation drives accuracy to the majority-class rate") {
    FeatureMatrix fm = cluster_toy(10);
    FoldAssignment folds = stratified_folds(fm.labels, 5, 42);
    Rng rng(0x9e97ull);
    double total = 0;
    const int reshuffles = 20;
    for (int t = 0; t < reshuffles; ++t) {
        FeatureMatrix shuffled = fm;
        rng.shuffle(shuffled.labels);
        // keep both classes present
        shuffled.labels[0] = 0;
        shuffled.labels[1] = 1;
        ClassifierConfig cfg;
        cfg.kind = ClassifierKind::rf;
        cfg.rf_trees = 25;
        cfg.seed = static_cast<std::uint64_t>(t);
        FoldAssignment f2 = stratified_folds(shuffled.labels, 5, static_cast<std::uint64_t>(t));
        total += cross_validate(shuffled, cfg, f2, "toy").mean_accuracy_pct;
    }
    double mean = total / reshuffles;
    CHECK(mean > 35.0);
    CHECK(mean < 65.0);
}

TEST_CASE("pca2 on rank-1 data") {
    FeatureMatrix fm;
    fm.names = {"a", "b", "c"};
    for (int i = 0; i < 10; ++i) {
        double t = i - 4.5;
        fm.push_row(i, 0, std::array<double, 3>{t / std::sqrt(2.0), t / std::sqrt(2.0), 0.0});
    }
    Embedding2D emb = pca2(fm);
    CHECK(emb.explained_variance[1] == Catch::Approx(0.0).margin(1e-9));
    CHECK(emb.components[0][0] == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-9));
    CHECK(emb.components[0][1] == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-9));
    CHECK(emb.components[0][2] == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("pca2 matches a deflated-power-iteration oracle") {
    Rng rng(0x9ca2ull);
    FeatureMatrix fm;
    for (int j = 0; j < 5; ++j) fm.names.push_back("f" + std::to_string(j));
    for (int i = 0; i < 60; ++i) {
        std::vector<double> row;
        double base = rng.next_double() * 3;
        for (int j = 0; j < 5; ++j) row.push_back(base * (j + 1) + rng.next_double());
        fm.push_row(i, 0, row);
    }
    Embedding2D emb = pca2(fm);

    // rebuild the same covariance for the oracle
    const int d = 5;
    const std::size_t n = fm.rows();
    std::vector<double> mean(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) mean[static_cast<std::size_t>(j)] += fm.at(i, j);
    for (double& x : mean) x /= static_cast<double>(n);
    std::vector<double> cov(d * d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                cov[static_cast<std::size_t>(a * d + b)] +=
                    (fm.at(i, a) - mean[static_cast<std::size_t>(a)]) *
                    (fm.at(i, b) - mean[static_cast<std::size_t>(b)]) / static_cast<double>(n - 1);
    auto top2 = oracles::deflated_power_eigen(cov, d, 2);

    for (int comp = 0; comp < 2; ++comp) {
        CHECK(emb.explained_variance[static_cast<std::size_t>(comp)] ==
              Catch::Approx(top2[static_cast<std::size_t>(comp)].first).margin(1e-8));
        // compare projections up to the component's sign
        double flip = 0;
        for (int j = 0; j < d; ++j)
            flip += emb.components[static_cast<std::size_t>(comp)][static_cast<std::size_t>(j)] *
                    top2[static_cast<std::size_t>(comp)].second[static_cast<std::size_t>(j)];
        double sign = flip >= 0 ? 1.0 : -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            double oracle_coord = 0;
            for (int j = 0; j < d; ++j)
                oracle_coord += (fm.at(i, j) - mean[static_cast<std::size_t>(j)]) *
                                top2[static_cast<std::size_t>(comp)].second[static_cast<std::size_t>(j)];
            CHECK(emb.coordinates[i][static_cast<std::size_t>(comp)] ==
                  Catch::Approx(sign * oracle_coord).margin(1e-6));
        }
    }
}

TEST_CASE("pca2 components are orthonormal and row-order invariant") {
    Rng rng(0x0b0eull);
    FeatureMatrix fm;
    for (int j = 0; j < 4; ++j) fm.names.push_back("f" + std::to_string(j));
    for (int i = 0; i < 30; ++i) {
        std::vector<double> row;
        for (int j = 0; j < 4; ++j) row.push_back(rng.next_double() * (j + 1));
        fm.push_row(i, 0, row);
    }
    Embedding2D emb = pca2(fm);
    double dot = 0, n1 = 0, n2 = 0;
    for (int j = 0; j < 4; ++j) {
        dot += emb.components[0][static_cast<std::size_t>(j)] * emb.components[1][static_cast<std::size_t>(j)];
        n1 += emb.components[0][static_cast<std::size_t>(j)] * emb.components[0][static_cast<std::size_t>(j)];
        n2 += emb.components[1][static_cast<std::size_t>(j)] * emb.components[1][static_cast<std::size_t>(j)];
    }
    CHECK(std::abs(dot) < 1e-9);
    CHECK(std::abs(n1 - 1.0) < 1e-9);
    CHECK(std::abs(n2 - 1.0) < 1e-9);
    CHECK(emb.explained_variance[0] >= emb.explained_variance[1]);

    // rotate row order
    std::vector<std::size_t> rot;
    for (std::size_t i = 0; i < fm.rows(); ++i) rot.push_back((i + 7) % fm.rows());
    Embedding2D emb2 = pca2(fm.select_rows(rot));
    for (int comp = 0; comp < 2; ++comp)
        for (int j = 0; j < 4; ++j)
            CHECK(emb2.components[static_cast<std::size_t>(comp)][static_cast<std::size_t>(j)] ==
                  Catch::Approx(emb.components[static_cast<std::size_t>(comp)][static_cast<std::size_t>(j)])
                      .margin(1e-9));
}

TEST_CASE("pca2 input validation") {
    FeatureMatrix fm;
    fm.names = {"a", "b"};
    fm.push_row(0, 0, std::array<double, 2>{1, 2});
    CHECK_THROWS_AS(pca2(fm), std::invalid_argument);  // one row
    fm.push_row(1, 0, std::array<double, 2>{1, 3});
    CHECK_THROWS_AS(pca2(fm), std::invalid_argument);  // only one non-constant column
}

TEST_CASE("anova on the closed-form fixture") {
    AnovaResult r = anova_oneway({{1, 2, 3}, {2, 3, 4}, {3, 4, 5}});
    CHECK(r.f_statistic == Catch::Approx(3.0).margin(1e-12));
    CHECK(r.df_between == 2);
    CHECK(r.df_within == 6);
    CHECK(r.p_value == Catch::Approx(0.125).margin(1e-3));
}

TEST_CASE("anova on identical groups gives F=0, p=1") {
    AnovaResult r = anova_oneway({{1, 2, 3}, {1, 2, 3}});
    CHECK(r.f_statistic == 0.0);
    CHECK(r.p_value == 1.0);

    AnovaResult rc = anova_oneway({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}, {1, 2, 3}});
    CHECK(rc.f_statistic == 0.0);
    CHECK(rc.p_value == 1.0);
}

TEST_CASE("anova input validation") {
    CHECK_THROWS_AS(anova_oneway({{1, 2, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(anova_oneway({{1, 2}, {3}}), std::invalid_argument);
    CHECK_THROWS_AS(anova_oneway({{2, 2}, {2, 2}}), std::invalid_argument);
}

TEST_CASE("regularized incomplete beta spot values") {
    CHECK(regularized_incomplete_beta(3, 1, 0.5) == Catch::Approx(0.125).margin(1e-10));
    CHECK(regularized_incomplete_beta(1, 1, 0.25) == Catch::Approx(0.25).margin(1e-10));
    CHECK(regularized_incomplete_beta(2, 2, 0.5) == Catch::Approx(0.5).margin(1e-10));
    // I_x(2,2) = 3x^2 - 2x^3
    CHECK(regularized_incomplete_beta(2, 2, 0.3) == Catch::Approx(3 * 0.09 - 2 * 0.027).margin(1e-10));
}

TEST_CASE("pearson") {
    std::vector<double> a = {1, 2, 3, 5, 8};
    std::vector<double> neg, affine;
    for (double x : a) {
        neg.push_back(-x);
        affine.push_back(2.5 * x + 7);
    }
    CHECK(pearson(a, a) == Catch::Approx(1.0).margin(1e-12));
    CHECK(pearson(a, neg) == Catch::Approx(-1.0).margin(1e-12));
    CHECK(pearson(a, affine) == Catch::Approx(1.0).margin(1e-12));
    std::vector<double> down;
    for (double x : a) down.push_back(-0.5 * x + 1);
    CHECK(pearson(a, down) == Catch::Approx(-1.0).margin(1e-12));

    std::vector<double> constant = {2, 2, 2, 2, 2};
    CHECK_THROWS_AS(pearson(a, constant), std::invalid_argument);
    CHECK_THROWS_AS(pearson(a, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST_CASE("subset_search counts, selection, and full-mask equivalence") {
    // 50 rows, 9 features; feature 4 separates the classes alone
    Rng rng(0x5b5e7ull);
    FeatureMatrix fm;
    for (int j = 0; j < 9; ++j) fm.names.push_back("f" + std::to_string(j));
    for (int i = 0; i < 50; ++i) {
        int label = i % 2;
        std::vector<double> row;
        for (int j = 0; j < 9; ++j) {
            if (j == 4)
                row.push_back(label == 0 ? -1.0 - rng.next_double() : 1.0 + rng.next_double());
            else
                row.push_back(rng.next_double());
        }
        fm.push_row(i, label, row);
    }
    FoldAssignment folds = stratified_folds(fm.labels, 5, 42);
    ClassifierConfig cfg;
    cfg.kind = ClassifierKind::rf;
    cfg.rf_trees = 15;
    cfg.seed = 42;

    auto best = subset_search(fm, 1, 3, cfg, folds, "toy", 2);
    REQUIRE(best.size() == 3);
    CHECK(best[0].evaluations == 9);
    CHECK(best[1].evaluations == 36);
    CHECK(best[2].evaluations == 84);

    CHECK(best[0].mask == (1u << 4));
    CHECK(best[0].result.mean_accuracy_pct == Catch::Approx(100.0));

    SECTION("independent re-enumeration finds the same winner per k") {
        for (const auto& sb : best) {
            double top = -1;
            std::uint32_t top_mask = 0;
            auto masks = graphfeat::detail::masks_of_size(9, sb.k);
            for (std::uint32_t mask : masks) {
                std::vector<int> cols;
                for (int j = 0; j < 9; ++j)
                    if (mask & (1u << j)) cols.push_back(j);
                CVResult r = cross_validate(fm.select_columns(cols), cfg, folds, "toy", mask);
                if (r.mean_accuracy_pct > top) {
                    top = r.mean_accuracy_pct;
                    top_mask = mask;
                }
            }
            CHECK(sb.result.mean_accuracy_pct == Catch::Approx(top));
            CHECK(sb.mask == top_mask);
        }
    }

    SECTION("k = 9 equals cross_validate on the full matrix") {
        auto full = subset_search(fm, 9, 9, cfg, folds, "toy", 1);
        REQUIRE(full.size() == 1);
        CHECK(full[0].evaluations == 1);
        CVResult direct = cross_validate(fm, cfg, folds, "toy");
        CHECK(full[0].result.fold_accuracy == direct.fold_accuracy);
    }

    SECTION("non-rf scorer is rejected") {
        ClassifierConfig knn_cfg;
        knn_cfg.kind = ClassifierKind::knn;
        CHECK_THROWS_AS(subset_search(fm, 1, 2, knn_cfg, folds, "toy", 1), std::invalid_argument);
    }
}

TEST_CASE("total mask count across k = 1..8 is 510") {
    long long total = 0;
    for (int k = 1; k <= 8; ++k)
        total += static_cast<long long>(graphfeat::detail::masks_of_size(9, k).size());
    CHECK(total == 510);
}
