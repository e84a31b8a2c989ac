#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace graphfeat {

namespace detail {

// Continued fraction for the incomplete beta (modified Lentz). Converges in
// a handful of terms for the df values seen here; iterated to ~1e-15.
inline double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;

    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace detail

/// Regularized incomplete beta I_x(a, b), |error| < 1e-10 over the parameter
/// ranges used by the F distribution.
inline double regularized_incomplete_beta(double a, double b, double x) {
    if (a <= 0 || b <= 0) throw std::invalid_argument("regularized_incomplete_beta: a,b > 0");
    if (x < 0 || x > 1) throw std::invalid_argument("regularized_incomplete_beta: x in [0,1]");
    if (x == 0) return 0.0;
    if (x == 1) return 1.0;
    double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                      b * std::log(1.0 - x);
    double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::betacf(a, b, x) / a;
    return 1.0 - front * detail::betacf(b, a, 1.0 - x) / b;
}

/// Upper tail of the F distribution: P(F_{d1,d2} > f).
inline double f_distribution_sf(double f, int d1, int d2) {
    if (f <= 0) return 1.0;
    if (std::isinf(f)) return 0.0;
    double x = static_cast<double>(d2) / (d2 + d1 * f);
    return regularized_incomplete_beta(d2 / 2.0, d1 / 2.0, x);
}

struct AnovaResult {
    double f_statistic = 0.0;
    double p_value = 1.0;
    int df_between = 0;
    int df_within = 0;
};

/// One-way ANOVA across groups of observations.
inline AnovaResult anova_oneway(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) throw std::invalid_argument("anova_oneway: need at least two groups");
    std::size_t total_n = 0;
    double grand_sum = 0;
    for (const auto& g : groups) {
        if (g.size() < 2) throw std::invalid_argument("anova_oneway: each group needs >= 2 values");
        total_n += g.size();
        for (double x : g) grand_sum += x;
    }
    const double grand_mean = grand_sum / static_cast<double>(total_n);

    bool all_identical = true;
    for (const auto& g : groups)
        for (double x : g)
            if (x != groups[0][0]) all_identical = false;
    if (all_identical) throw std::invalid_argument("anova_oneway: all values identical");

    double ss_between = 0, ss_within = 0;
    for (const auto& g : groups) {
        double mean = 0;
        for (double x : g) mean += x;
        mean /= static_cast<double>(g.size());
        ss_between += static_cast<double>(g.size()) * (mean - grand_mean) * (mean - grand_mean);
        for (double x : g) ss_within += (x - mean) * (x - mean);
    }

    AnovaResult r;
    r.df_between = static_cast<int>(groups.size()) - 1;
    r.df_within = static_cast<int>(total_n) - static_cast<int>(groups.size());
    const double ms_between = ss_between / r.df_between;
    const double ms_within = ss_within / r.df_within;
    if (ms_within == 0.0) {
        r.f_statistic = ss_between == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
        r.f_statistic = ms_between / ms_within;
    }
    r.p_value = f_distribution_sf(r.f_statistic, r.df_between, r.df_within);
    return r;
}

/// Sample Pearson correlation; requires equal-length non-constant inputs.
inline double pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("pearson: length mismatch");
    if (a.size() < 2) throw std::invalid_argument("pearson: need at least two points");
    const double n = static_cast<double>(a.size());
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double da = a[i] - ma, db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) throw std::invalid_argument("pearson: constant input");
    double r = sab / std::sqrt(saa * sbb);
    return std::min(1.0, std::max(-1.0, r));
}

}  // namespace graphfeat
