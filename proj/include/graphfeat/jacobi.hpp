#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace graphfeat {

/// Eigendecomposition of a real symmetric matrix. Eigenvalues are sorted
/// descending; column j of `vectors` (stored row-major, vectors[i*n+j]) is
/// the unit eigenvector of values[j].
struct SymmetricEigen {
    int n = 0;
    std::vector<double> values;
    std::vector<double> vectors;
    int sweeps = 0;

    double vector_entry(int i, int j) const {
        return vectors[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                       static_cast<std::size_t>(j)];
    }
};

/// Cyclic Jacobi rotations on a dense symmetric matrix (row-major, n x n).
/// Rotations keep the accumulated vector basis orthonormal to machine
/// precision regardless of how early the off-diagonal mass dies out.
inline SymmetricEigen jacobi_eigen(std::vector<double> a, int n, bool want_vectors = true,
                                   int max_sweeps = 100) {
    if (n < 1 || a.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw std::invalid_argument("jacobi_eigen: bad dimensions");
    auto at = [&](int i, int j) -> double& {
        return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(j)];
    };
    std::vector<double> v;
    if (want_vectors) {
        v.assign(a.size(), 0.0);
        for (int i = 0; i < n; ++i)
            v[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] = 1.0;
    }
    auto vat = [&](int i, int j) -> double& {
        return v[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(j)];
    };

    double fro2 = 0;
    for (double x : a) fro2 += x * x;
    const double stop = 1e-28 * std::max(fro2, 1e-300);

    SymmetricEigen result;
    result.n = n;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
        result.sweeps = sweep;
        if (off <= stop) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (apq == 0.0) continue;
                double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;

                double app = at(p, p), aqq = at(q, q);
                at(p, p) = c * c * app - 2.0 * s * c * apq + s * s * aqq;
                at(q, q) = s * s * app + 2.0 * s * c * apq + c * c * aqq;
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(p, k) = at(k, p);
                    at(k, q) = s * akp + c * akq;
                    at(q, k) = at(k, q);
                }
                if (want_vectors) {
                    for (int k = 0; k < n; ++k) {
                        double vkp = vat(k, p), vkq = vat(k, q);
                        vat(k, p) = c * vkp - s * vkq;
                        vat(k, q) = s * vkp + c * vkq;
                    }
                }
            }
        }
    }

    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int x, int y) { return at(x, x) > at(y, y); });

    result.values.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) result.values[static_cast<std::size_t>(j)] = at(perm[static_cast<std::size_t>(j)], perm[static_cast<std::size_t>(j)]);
    if (want_vectors) {
        result.vectors.assign(a.size(), 0.0);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                result.vectors[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                               static_cast<std::size_t>(j)] = vat(i, perm[static_cast<std::size_t>(j)]);
    }
    return result;
}

}  // namespace graphfeat
