#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "graphfeat/features.hpp"

namespace graphfeat {

/// One soft-margin linear separator of a class pair; rows of class_a carry
/// y = +1, rows of class_b carry y = -1.
struct BinarySvm {
    int class_a = 0;
    int class_b = 0;
    std::vector<double> w;
    double bias = 0.0;
    double dual_objective = 0.0;
    int iterations = 0;
    bool converged = true;
};

/// One-vs-one ensemble over all class pairs present in the training data.
struct SvmModel {
    double c = 10.0;
    int num_classes = 0;
    std::vector<BinarySvm> pairs;

    bool converged() const {
        for (const auto& p : pairs)
            if (!p.converged) return false;
        return true;
    }
};

inline double svm_decision(const BinarySvm& m, std::span<const double> x) {
    double acc = m.bias;
    for (std::size_t j = 0; j < m.w.size(); ++j) acc += m.w[j] * x[j];
    return acc;
}

namespace detail {

/// SMO on the soft-margin dual with the equality constraint sum(y a) = 0:
/// repeatedly pick the maximal-violating pair (Keerthi selection) and solve
/// the two-variable subproblem analytically. The linear kernel lets the
/// gradient scan run off the primal vector w in O(l d) per step.
inline BinarySvm smo_train_pair(const std::vector<double>& xs, const std::vector<int>& ys, int d,
                                double c, double tol, int max_iter) {
    const int l = static_cast<int>(ys.size());
    BinarySvm m;
    m.w.assign(static_cast<std::size_t>(d), 0.0);
    std::vector<double> alpha(static_cast<std::size_t>(l), 0.0);
    auto x = [&](int i) { return xs.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(d); };

    double m_up = 0, m_low = 0;
    m.converged = false;
    int iter = 0;
    while (iter < max_iter) {
        // v_t = y_t - w.x_t; optimality when max over I_up <= min over I_low + tol.
        m_up = -std::numeric_limits<double>::infinity();
        m_low = std::numeric_limits<double>::infinity();
        int i_up = -1, i_low = -1;
        for (int t = 0; t < l; ++t) {
            double wx = 0;
            const double* xt = x(t);
            for (int j = 0; j < d; ++j) wx += m.w[static_cast<std::size_t>(j)] * xt[j];
            double v = static_cast<double>(ys[static_cast<std::size_t>(t)]) - wx;
            bool in_up = (ys[static_cast<std::size_t>(t)] > 0 && alpha[static_cast<std::size_t>(t)] < c) ||
                         (ys[static_cast<std::size_t>(t)] < 0 && alpha[static_cast<std::size_t>(t)] > 0);
            bool in_low = (ys[static_cast<std::size_t>(t)] > 0 && alpha[static_cast<std::size_t>(t)] > 0) ||
                          (ys[static_cast<std::size_t>(t)] < 0 && alpha[static_cast<std::size_t>(t)] < c);
            if (in_up && v > m_up) {
                m_up = v;
                i_up = t;
            }
            if (in_low && v < m_low) {
                m_low = v;
                i_low = t;
            }
        }
        if (i_up < 0 || i_low < 0 || m_up - m_low < tol) {
            m.converged = true;
            break;
        }
        ++iter;

        // Move alpha_i by y_i t and alpha_j by -y_j t: w(t) = w + t (x_i - x_j),
        // unconstrained optimum t* = gap / ||x_i - x_j||^2.
        const int i = i_up, j = i_low;
        const int si = ys[static_cast<std::size_t>(i)], sj = ys[static_cast<std::size_t>(j)];
        double eta = 0;
        const double* xi = x(i);
        const double* xj = x(j);
        for (int k = 0; k < d; ++k) {
            double dk = xi[k] - xj[k];
            eta += dk * dk;
        }
        double hi_i = si > 0 ? c - alpha[static_cast<std::size_t>(i)] : alpha[static_cast<std::size_t>(i)];
        double hi_j = sj > 0 ? alpha[static_cast<std::size_t>(j)] : c - alpha[static_cast<std::size_t>(j)];
        double step = std::min(hi_i, hi_j);
        if (eta > 0) step = std::min(step, (m_up - m_low) / eta);
        if (step <= 0) {
            m.converged = true;  // box leaves no room; the gap is numerical dust
            break;
        }
        alpha[static_cast<std::size_t>(i)] += si > 0 ? step : -step;
        alpha[static_cast<std::size_t>(j)] -= sj > 0 ? step : -step;
        for (int k = 0; k < d; ++k) m.w[static_cast<std::size_t>(k)] += step * (xi[k] - xj[k]);
    }
    m.iterations = iter;

    // Bias from the average residual of free support vectors, falling back
    // to the midpoint of the optimality bounds when every alpha sits at a box
    // edge.
    double bias_sum = 0;
    int bias_count = 0;
    const double edge = 1e-8 * c;
    for (int t = 0; t < l; ++t) {
        if (alpha[static_cast<std::size_t>(t)] > edge && alpha[static_cast<std::size_t>(t)] < c - edge) {
            double wx = 0;
            const double* xt = x(t);
            for (int j = 0; j < d; ++j) wx += m.w[static_cast<std::size_t>(j)] * xt[j];
            bias_sum += static_cast<double>(ys[static_cast<std::size_t>(t)]) - wx;
            ++bias_count;
        }
    }
    if (bias_count > 0)
        m.bias = bias_sum / bias_count;
    else if (std::isfinite(m_up) && std::isfinite(m_low))
        m.bias = (m_up + m_low) / 2.0;

    double alpha_sum = 0, w2 = 0;
    for (double a : alpha) alpha_sum += a;
    for (double wk : m.w) w2 += wk * wk;
    m.dual_objective = alpha_sum - 0.5 * w2;
    return m;
}

}  // namespace detail

/// Trains one-vs-one linear SVMs with regularization C. Expects features on
/// comparable scales (standardize first). Pairs that hit the iteration cap
/// keep their converged flag false but stay usable.
inline SvmModel svm_train(const FeatureMatrix& fm, double c = 10.0, double tol = 1e-3,
                          int max_iter = 100000) {
    if (c <= 0) throw std::invalid_argument("svm_train: C must be positive");
    const int classes = fm.num_classes();
    std::vector<int> present;
    {
        std::vector<char> seen(static_cast<std::size_t>(classes), 0);
        for (int l : fm.labels) seen[static_cast<std::size_t>(l)] = 1;
        for (int c2 = 0; c2 < classes; ++c2)
            if (seen[static_cast<std::size_t>(c2)]) present.push_back(c2);
    }
    if (present.size() < 2) throw std::invalid_argument("svm_train: need at least two classes");

    SvmModel model;
    model.c = c;
    model.num_classes = classes;
    const int d = fm.cols();
    for (std::size_t a = 0; a < present.size(); ++a) {
        for (std::size_t b = a + 1; b < present.size(); ++b) {
            std::vector<double> xs;
            std::vector<int> ys;
            for (std::size_t i = 0; i < fm.rows(); ++i) {
                if (fm.labels[i] == present[a] || fm.labels[i] == present[b]) {
                    auto r = fm.row(i);
                    xs.insert(xs.end(), r.begin(), r.end());
                    ys.push_back(fm.labels[i] == present[a] ? 1 : -1);
                }
            }
            BinarySvm pair = detail::smo_train_pair(xs, ys, d, c, tol, max_iter);
            pair.class_a = present[a];
            pair.class_b = present[b];
            model.pairs.push_back(std::move(pair));
        }
    }
    return model;
}

/// One-vs-one vote; ties go to the larger summed |decision value|, then the
/// lower class id.
inline int svm_predict(const SvmModel& model, std::span<const double> x) {
    std::vector<int> votes(static_cast<std::size_t>(model.num_classes), 0);
    std::vector<double> magnitude(static_cast<std::size_t>(model.num_classes), 0.0);
    for (const auto& p : model.pairs) {
        double f = svm_decision(p, x);
        int winner = f >= 0 ? p.class_a : p.class_b;
        ++votes[static_cast<std::size_t>(winner)];
        magnitude[static_cast<std::size_t>(winner)] += std::abs(f);
    }
    int best = 0;
    for (int c = 1; c < model.num_classes; ++c) {
        if (votes[static_cast<std::size_t>(c)] > votes[static_cast<std::size_t>(best)] ||
            (votes[static_cast<std::size_t>(c)] == votes[static_cast<std::size_t>(best)] &&
             magnitude[static_cast<std::size_t>(c)] > magnitude[static_cast<std::size_t>(best)]))
            best = c;
    }
    return best;
}

}  // namespace graphfeat
