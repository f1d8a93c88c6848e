#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "rankdep/association.hpp"
#include "rankdep/errors.hpp"
#include "rankdep/quantile_table.hpp"
#include "rankdep/ranks.hpp"
#include "rankdep/sample.hpp"
#include "rankdep/spectral.hpp"
#include "rankdep/student_t.hpp"

namespace rankdep {

/// Tunables for the statistics that have free parameters.
struct StatParams {
    int block_size = 5;   // T2
    MfccParams mfcc;      // T5/T6
    TiePolicy ties = TiePolicy::error();
};

/// T1: number of fixed points of the rank position vector; equals the trace
/// of the rank permutation matrix. In [0, n], degenerate at n under perfect
/// positive association.
inline int t1_trace(const RankPositionVector& rpv) {
    int t = 0;
    for (int i = 0; i < rpv.n(); ++i)
        if (rpv[i] == i + 1) ++t;
    return t;
}

/// T2: the sample is split in input order into floor(n/k) consecutive
/// blocks of size k (remainder dropped); per-block rank position vectors
/// give a mean vector E and covariance diagonal V_jj (both divide-by-count
/// convention), and T2 is the population variance of the k diagonal
/// entries. Zero on monotone samples, grows with |association|.
inline double t2_block_variance(const BivariateSample& sample, int block_size,
                                const TiePolicy& policy = TiePolicy::error()) {
    const int k = block_size;
    const int n = sample.n();
    if (k < 2) throw InvalidInput("t2_block_variance: block size must be >= 2");
    if (n < 2 * k)
        throw InvalidInput("t2_block_variance: need at least two blocks (n >= 2k)");

    const int n_blocks = n / k;
    std::vector<std::vector<int>> rpvs;
    rpvs.reserve(static_cast<std::size_t>(n_blocks));
    for (int b = 0; b < n_blocks; ++b) {
        std::vector<double> bx(sample.x().begin() + b * k, sample.x().begin() + (b + 1) * k);
        std::vector<double> by(sample.y().begin() + b * k, sample.y().begin() + (b + 1) * k);
        rpvs.push_back(build_rpv(BivariateSample(std::move(bx), std::move(by)), policy).values());
    }

    std::vector<double> diag(static_cast<std::size_t>(k), 0.0);
    for (int j = 0; j < k; ++j) {
        double mean = 0.0;
        for (const auto& s : rpvs) mean += s[static_cast<std::size_t>(j)];
        mean /= n_blocks;
        double var = 0.0;
        for (const auto& s : rpvs) {
            const double d = s[static_cast<std::size_t>(j)] - mean;
            var += d * d;
        }
        diag[static_cast<std::size_t>(j)] = var / n_blocks;
    }

    double dmean = 0.0;
    for (double v : diag) dmean += v;
    dmean /= k;
    double dvar = 0.0;
    for (double v : diag) dvar += (v - dmean) * (v - dmean);
    return dvar / k;
}

/// T3: entropy of the normalized amplitude spectrum of the zero-based rank
/// offsets s - 1 (0 log 0 := 0, natural log).
inline double t3_entropy(const RankPositionVector& rpv) {
    return detail::entropy(dft_amplitudes_zero_based(rpv).a_star);
}

/// T4: sum of the amplitudes of the same zero-based spectrum.
inline double t4_amplitude_sum(const RankPositionVector& rpv) {
    double acc = 0.0;
    for (double a : dft_amplitudes_zero_based(rpv).a) acc += a;
    return acc;
}

/// T5: entropy of the normalized absolute MFCCs of the rank position vector.
inline double t5_mfcc_entropy(const RankPositionVector& rpv, const MfccParams& params = {}) {
    return detail::entropy(mfcc(rpv, params).m_star);
}

/// T6: sum of squares of the MFCCs.
inline double t6_mfcc_sumsq(const RankPositionVector& rpv, const MfccParams& params = {}) {
    double acc = 0.0;
    for (double v : mfcc(rpv, params).m) acc += v * v;
    return acc;
}

/// Parametric reference statistic T_p = sqrt(n-2) r / sqrt(1 - r^2) with r
/// the Pearson correlation; t-distributed with n-2 degrees of freedom under
/// a bivariate normal null. r = +-1 maps to +-infinity.
inline double pearson_tp(const BivariateSample& sample) {
    const int n = sample.n();
    if (n < 3) throw InvalidInput("pearson_tp: need n >= 3");

    double mx = 0.0, my = 0.0;
    for (int i = 0; i < n; ++i) {
        mx += sample.x()[static_cast<std::size_t>(i)];
        my += sample.y()[static_cast<std::size_t>(i)];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double dx = sample.x()[static_cast<std::size_t>(i)] - mx;
        const double dy = sample.y()[static_cast<std::size_t>(i)] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw NumericError("pearson_tp: degenerate variance (constant column)");
    const double r = sxy / std::sqrt(sxx * syy);
    if (r >= 1.0) return std::numeric_limits<double>::infinity();
    if (r <= -1.0) return -std::numeric_limits<double>::infinity();
    return std::sqrt(static_cast<double>(n - 2)) * r / std::sqrt(1.0 - r * r);
}

/// Evaluates any of the nine statistics on a sample.
inline double evaluate_statistic(StatisticId id, const BivariateSample& sample,
                                 const StatParams& params = {}) {
    switch (id) {
        case StatisticId::T2:
            return t2_block_variance(sample, params.block_size, params.ties);
        case StatisticId::Tp:
            return pearson_tp(sample);
        default:
            break;
    }
    const RankPositionVector rpv = build_rpv(sample, params.ties);
    switch (id) {
        case StatisticId::T1: return static_cast<double>(t1_trace(rpv));
        case StatisticId::T3: return t3_entropy(rpv);
        case StatisticId::T4: return t4_amplitude_sum(rpv);
        case StatisticId::T5: return t5_mfcc_entropy(rpv, params.mfcc);
        case StatisticId::T6: return t6_mfcc_sumsq(rpv, params.mfcc);
        case StatisticId::SpearmanRho: return spearman_rho_classical(rpv);
        case StatisticId::KendallT: return kendall_t(rpv);
        default:
            throw InvalidInput("evaluate_statistic: unhandled statistic");
    }
}

/// Exact null pmf by permutation enumeration, for the statistics that are
/// pure functions of the rank position vector.
inline ExactPmf enumerate_null_distribution(StatisticId id, int n, const StatParams& params = {}) {
    switch (id) {
        case StatisticId::T1:
            return enumerate_null_distribution(n, [](const RankPositionVector& s) {
                return static_cast<double>(t1_trace(s));
            });
        case StatisticId::T3:
            return enumerate_null_distribution(n, [](const RankPositionVector& s) {
                return t3_entropy(s);
            });
        case StatisticId::T4:
            return enumerate_null_distribution(n, [](const RankPositionVector& s) {
                return t4_amplitude_sum(s);
            });
        case StatisticId::T5:
            return enumerate_null_distribution(n, [&](const RankPositionVector& s) {
                return t5_mfcc_entropy(s, params.mfcc);
            });
        case StatisticId::T6:
            return enumerate_null_distribution(n, [&](const RankPositionVector& s) {
                return t6_mfcc_sumsq(s, params.mfcc);
            });
        case StatisticId::SpearmanRho:
            return enumerate_null_distribution(n, [](const RankPositionVector& s) {
                return spearman_rho_classical(s);
            });
        case StatisticId::KendallT:
            return enumerate_null_distribution(n, [](const RankPositionVector& s) {
                return kendall_t(s);
            });
        default:
            throw InvalidInput("enumerate_null_distribution: " + to_string(id) +
                               " is not a pure rank-position-vector statistic");
    }
}

/// One test decision.
struct TestResult {
    StatisticId statistic;
    double value = 0.0;
    std::optional<double> lower; // lower cutoff, when the rule has one
    std::optional<double> upper; // upper cutoff, when the rule has one
    bool reject = false;
    double alpha = 0.0;
};

/// Applies the rejection rule for a statistic.
///
/// Rules: T1 rejects at value >= upper(1-a/2) or value < lower(a/2) (strict
/// on the lower tail, where the cutoff is typically 0 and the statistic is
/// nonnegative); T2 and T5 reject in the upper tail at 1-a; T3, T4 and T6
/// reject in the lower tail at a; Spearman and Kendall are two-sided at the
/// a/2 levels; Tp is two-sided against the t-distribution cutoff and needs
/// no table.
inline TestResult run_test(StatisticId id, const BivariateSample& sample,
                           const QuantileTable* table, double alpha,
                           const StatParams& params = {}) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("run_test: alpha outside (0, 1)");

    TestResult res;
    res.statistic = id;
    res.alpha = alpha;
    res.value = evaluate_statistic(id, sample, params);

    if (id == StatisticId::Tp) {
        const double cut = student_t_quantile(1.0 - alpha / 2.0, sample.n() - 2);
        res.lower = -cut;
        res.upper = cut;
        res.reject = res.value <= -cut || res.value >= cut;
        return res;
    }

    if (table == nullptr)
        throw TableMismatch("run_test: statistic " + to_string(id) + " needs a quantile table");
    if (table->statistic != id)
        throw TableMismatch("run_test: table is for " + to_string(table->statistic) +
                            ", not " + to_string(id));
    if (table->n != sample.n())
        throw TableMismatch("run_test: table is for n = " + std::to_string(table->n) +
                            ", sample has n = " + std::to_string(sample.n()));

    switch (id) {
        case StatisticId::T1:
            res.lower = table->quantile_at(alpha / 2.0);
            res.upper = table->quantile_at(1.0 - alpha / 2.0);
            res.reject = res.value >= *res.upper || res.value < *res.lower;
            break;
        case StatisticId::T2:
        case StatisticId::T5:
            res.upper = table->quantile_at(1.0 - alpha);
            res.reject = res.value >= *res.upper;
            break;
        case StatisticId::T3:
        case StatisticId::T4:
        case StatisticId::T6:
            res.lower = table->quantile_at(alpha);
            res.reject = res.value <= *res.lower;
            break;
        case StatisticId::SpearmanRho:
        case StatisticId::KendallT:
            res.lower = table->quantile_at(alpha / 2.0);
            res.upper = table->quantile_at(1.0 - alpha / 2.0);
            res.reject = res.value <= *res.lower || res.value >= *res.upper;
            break;
        default:
            throw InvalidInput("run_test: unhandled statistic");
    }
    return res;
}

} // namespace rankdep
