#pragma once

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "graphfeat/features.hpp"
#include "graphfeat/jacobi.hpp"

namespace graphfeat {

/// Two-dimensional principal-component embedding. Component vectors are
/// orthonormal; the sign convention makes each component's largest-magnitude
/// entry positive.
struct Embedding2D {
    std::vector<std::array<double, 2>> coordinates;
    std::array<std::vector<double>, 2> components;
    std::array<double, 2> explained_variance{0.0, 0.0};
};

/// PCA to two components: columns are centered, the d x d covariance is
/// eigendecomposed by cyclic Jacobi, and rows are projected onto the top two
/// eigenvectors. Feed standardized features; unscaled inputs let the
/// large-magnitude columns dominate.
inline Embedding2D pca2(const FeatureMatrix& fm) {
    const std::size_t n = fm.rows();
    const int d = fm.cols();
    if (n < 2) throw std::invalid_argument("pca2: need at least two rows");

    std::vector<double> mean(static_cast<std::size_t>(d), 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) mean[static_cast<std::size_t>(j)] += fm.at(i, j);
    for (double& x : mean) x /= static_cast<double>(n);

    std::vector<double> centered(n * static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j)
            centered[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] =
                fm.at(i, j) - mean[static_cast<std::size_t>(j)];

    int non_constant = 0;
    for (int j = 0; j < d; ++j) {
        double var = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double v = centered[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)];
            var += v * v;
        }
        if (var > 0) ++non_constant;
    }
    if (non_constant < 2) throw std::invalid_argument("pca2: need at least two non-constant columns");

    std::vector<double> cov(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), 0.0);
    const double inv = 1.0 / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = centered.data() + i * static_cast<std::size_t>(d);
        for (int a = 0; a < d; ++a)
            for (int b = a; b < d; ++b)
                cov[static_cast<std::size_t>(a) * static_cast<std::size_t>(d) + static_cast<std::size_t>(b)] +=
                    row[a] * row[b];
    }
    for (int a = 0; a < d; ++a)
        for (int b = a; b < d; ++b) {
            double v = cov[static_cast<std::size_t>(a) * static_cast<std::size_t>(d) + static_cast<std::size_t>(b)] * inv;
            cov[static_cast<std::size_t>(a) * static_cast<std::size_t>(d) + static_cast<std::size_t>(b)] = v;
            cov[static_cast<std::size_t>(b) * static_cast<std::size_t>(d) + static_cast<std::size_t>(a)] = v;
        }

    SymmetricEigen eig = jacobi_eigen(std::move(cov), d, /*want_vectors=*/true);

    Embedding2D emb;
    for (int comp = 0; comp < 2; ++comp) {
        emb.explained_variance[static_cast<std::size_t>(comp)] =
            std::max(0.0, eig.values[static_cast<std::size_t>(comp)]);
        auto& vec = emb.components[static_cast<std::size_t>(comp)];
        vec.resize(static_cast<std::size_t>(d));
        int peak = 0;
        for (int j = 0; j < d; ++j) {
            vec[static_cast<std::size_t>(j)] = eig.vector_entry(j, comp);
            if (std::abs(vec[static_cast<std::size_t>(j)]) > std::abs(vec[static_cast<std::size_t>(peak)]))
                peak = j;
        }
        if (vec[static_cast<std::size_t>(peak)] < 0)
            for (double& x : vec) x = -x;
    }

    emb.coordinates.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = centered.data() + i * static_cast<std::size_t>(d);
        for (int comp = 0; comp < 2; ++comp) {
            double acc = 0;
            for (int j = 0; j < d; ++j)
                acc += row[j] * emb.components[static_cast<std::size_t>(comp)][static_cast<std::size_t>(j)];
            emb.coordinates[i][static_cast<std::size_t>(comp)] = acc;
        }
    }
    return emb;
}

/// CSV with one row per input row: graph_id,label,pc1,pc2.
inline void write_pca_csv(const std::filesystem::path& path, const FeatureMatrix& fm,
                          const Embedding2D& emb) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "graph_id,label,pc1,pc2\n";
    for (std::size_t i = 0; i < fm.rows(); ++i)
        out << fm.graph_ids[i] << ',' << fm.labels[i] << ',' << format_real(emb.coordinates[i][0])
            << ',' << format_real(emb.coordinates[i][1]) << '\n';
}

}  // namespace graphfeat
