#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>

#include "rankdep/empirical_copula.hpp"
#include "rankdep/ranks.hpp"

namespace rankdep {

/// Sample Kendall tau by concordant/discordant pair counting over the rank
/// position vector: pairs i < j are concordant iff s_i < s_j.
inline double kendall_t(const RankPositionVector& rpv) {
    const int n = rpv.n();
    std::int64_t balance = 0; // concordant - discordant
    for (int i = 0; i < n - 1; ++i)
        for (int j = i + 1; j < n; ++j)
            balance += (rpv[j] > rpv[i]) ? 1 : -1;
    return 2.0 * static_cast<double>(balance) / (static_cast<double>(n) * (n - 1));
}

inline double kendall_t(const BivariateSample& sample,
                        const TiePolicy& policy = TiePolicy::error()) {
    return kendall_t(build_rpv(sample, policy));
}

/// Sample Gini gamma:
///   g = ( sum_i |i + s_i - n - 1| - sum_i |i - s_i| ) / floor(n^2 / 2).
/// +1 on the identity permutation, -1 on the reversal.
inline double gini_g(const RankPositionVector& rpv) {
    const int n = rpv.n();
    std::int64_t acc = 0;
    for (int i = 1; i <= n; ++i) {
        const int s = rpv[i - 1];
        acc += std::abs(i + s - n - 1) - std::abs(i - s);
    }
    return static_cast<double>(acc) /
           static_cast<double>((static_cast<std::int64_t>(n) * n) / 2);
}

/// Classical Spearman rho from rank differences:
///   r = 1 - 6 * sum (i - s_i)^2 / (n (n^2 - 1)).
inline double spearman_rho_classical(const RankPositionVector& rpv) {
    const int n = rpv.n();
    std::int64_t d2 = 0;
    for (int i = 1; i <= n; ++i) {
        const std::int64_t d = i - rpv[i - 1];
        d2 += d * d;
    }
    const double nn = static_cast<double>(n);
    return 1.0 - 6.0 * static_cast<double>(d2) / (nn * (nn * nn - 1.0));
}

struct RpvMeasures {
    double r; // Spearman rho
    double t; // Kendall tau
    double g; // Gini gamma
};

/// All three association measures computed from the rank position vector
/// alone. Matches the empirical-copula-grid path on the same sample.
inline RpvMeasures rpv_measures(const RankPositionVector& rpv) {
    return {spearman_rho_classical(rpv), kendall_t(rpv), gini_g(rpv)};
}

} // namespace rankdep
