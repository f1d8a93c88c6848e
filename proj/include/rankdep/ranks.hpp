#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "rankdep/errors.hpp"
#include "rankdep/rng.hpp"
#include "rankdep/sample.hpp"

namespace rankdep {

/// Permutation s of {1..n} pairing marginal ranks: s_i is the y-rank of the
/// observation holding x-rank i. Identity under perfect positive
/// association, full reversal under perfect negative association.
class RankPositionVector {
public:
    explicit RankPositionVector(std::vector<int> s) : s_(std::move(s)) {
        const int n = static_cast<int>(s_.size());
        if (n < 1) throw InvalidInput("rank position vector: empty");
        std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
        for (int v : s_) {
            if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
                throw InvalidInput("rank position vector: not a permutation of 1..n");
            seen[static_cast<std::size_t>(v)] = 1;
        }
    }

    static RankPositionVector identity(int n) {
        std::vector<int> s(static_cast<std::size_t>(n));
        std::iota(s.begin(), s.end(), 1);
        return RankPositionVector(std::move(s));
    }

    static RankPositionVector reversal(int n) {
        std::vector<int> s(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = n - i;
        return RankPositionVector(std::move(s));
    }

    int n() const noexcept { return static_cast<int>(s_.size()); }
    const std::vector<int>& values() const noexcept { return s_; }
    int operator[](int i) const { return s_[static_cast<std::size_t>(i)]; } // 0-based index

    RankPositionVector inverse() const {
        std::vector<int> inv(s_.size());
        for (int i = 0; i < n(); ++i)
            inv[static_cast<std::size_t>(s_[static_cast<std::size_t>(i)] - 1)] = i + 1;
        return RankPositionVector(std::move(inv));
    }

private:
    std::vector<int> s_;
};

/// The n x n binary permutation matrix with r_ij = 1 iff j = s_i. Stored in
/// permutation form; the dense materialization is for inspection and tests.
class RankPermutationMatrix {
public:
    explicit RankPermutationMatrix(RankPositionVector rpv) : rpv_(std::move(rpv)) {}

    int n() const noexcept { return rpv_.n(); }
    const RankPositionVector& perm() const noexcept { return rpv_; }

    /// Row-major dense 0/1 matrix.
    std::vector<std::vector<int>> dense() const {
        const int m = n();
        std::vector<std::vector<int>> r(static_cast<std::size_t>(m),
                                        std::vector<int>(static_cast<std::size_t>(m), 0));
        for (int i = 0; i < m; ++i)
            r[static_cast<std::size_t>(i)][static_cast<std::size_t>(rpv_[i] - 1)] = 1;
        return r;
    }

    int trace() const {
        int t = 0;
        for (int i = 0; i < n(); ++i)
            if (rpv_[i] == i + 1) ++t;
        return t;
    }

private:
    RankPositionVector rpv_;
};

/// Closed-form null moments of the rank position vector: coordinate mean
/// (n+1)/2, variance (n^2-1)/12, pairwise covariance -(n^2-1)/(12(n-1)).
struct NullMoments {
    int n;
    double mean;
    double variance;
    double covariance;

    double correlation() const { return -1.0 / (n - 1); }
};

inline NullMoments null_moments(int n) {
    if (n < 2) throw InvalidInput("null_moments: n must be >= 2");
    const double nn = static_cast<double>(n);
    return NullMoments{n, (nn + 1.0) / 2.0, (nn * nn - 1.0) / 12.0,
                       -(nn * nn - 1.0) / (12.0 * (nn - 1.0))};
}

namespace detail {

/// Indices 0..n-1 ordered by ascending value; ties keep input order.
inline std::vector<int> sorted_order(const std::vector<double>& v) {
    std::vector<int> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return v[static_cast<std::size_t>(a)] <
                                                v[static_cast<std::size_t>(b)]; });
    return idx;
}

inline std::vector<int> rank_one_axis(const std::vector<double>& v, const TiePolicy& policy,
                                      std::uint64_t axis_tag) {
    const int n = static_cast<int>(v.size());
    std::vector<int> order = sorted_order(v);

    // Detect tie runs in the sorted order.
    int run_begin = 0;
    RngStream rng(mix64(policy.seed ^ axis_tag));
    bool rng_ready = false;
    while (run_begin < n) {
        int run_end = run_begin + 1;
        while (run_end < n &&
               v[static_cast<std::size_t>(order[static_cast<std::size_t>(run_end)])] ==
                   v[static_cast<std::size_t>(order[static_cast<std::size_t>(run_begin)])])
            ++run_end;
        if (run_end - run_begin > 1) {
            if (policy.mode == TiePolicy::Mode::Error)
                throw TiesError("tied values present; use the random-break tie policy");
            // Fisher-Yates over the tied slots.
            if (!rng_ready) rng_ready = true;
            for (int i = run_end - 1; i > run_begin; --i) {
                const int j = run_begin +
                              static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(i - run_begin + 1)));
                std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
            }
        }
        run_begin = run_end;
    }

    std::vector<int> ranks(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r)
        ranks[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = r + 1;
    return ranks;
}

} // namespace detail

/// Ranks of the x and y coordinates (1 = smallest). Outputs are strict
/// permutations of 1..n under either tie policy.
inline std::pair<std::vector<int>, std::vector<int>>
compute_ranks(const BivariateSample& sample, const TiePolicy& policy = TiePolicy::error()) {
    return {detail::rank_one_axis(sample.x(), policy, 0x78a5f3d2ULL),
            detail::rank_one_axis(sample.y(), policy, 0x1c6ef372ULL)};
}

/// Rank position vector of the sample: s[x_rank - 1] = y_rank.
inline RankPositionVector build_rpv(const BivariateSample& sample,
                                    const TiePolicy& policy = TiePolicy::error()) {
    const auto [xr, yr] = compute_ranks(sample, policy);
    std::vector<int> s(xr.size());
    for (std::size_t i = 0; i < xr.size(); ++i)
        s[static_cast<std::size_t>(xr[i] - 1)] = yr[i];
    return RankPositionVector(std::move(s));
}

/// Exact probability mass function of a statistic under the uniform
/// permutation null, by full enumeration of the n! rank position vectors.
struct ExactPmf {
    int n = 0;
    std::uint64_t total = 0;                       // n!
    std::vector<std::pair<double, std::uint64_t>> support; // (value, count), values ascending

    double probability(double value) const {
        for (const auto& [v, c] : support)
            if (v == value) return static_cast<double>(c) / static_cast<double>(total);
        return 0.0;
    }

    double mean() const {
        double acc = 0.0;
        for (const auto& [v, c] : support) acc += v * static_cast<double>(c);
        return acc / static_cast<double>(total);
    }

    double probability_sum() const {
        double acc = 0.0;
        for (const auto& [v, c] : support)
            acc += static_cast<double>(c) / static_cast<double>(total);
        return acc;
    }
};

/// Enumerates all permutations of 1..n (n <= 8, i.e. at most 40320) and
/// tabulates the exact null pmf of `statistic(rpv)`.
template <class Statistic>
ExactPmf enumerate_null_distribution(int n, Statistic&& statistic) {
    if (n < 2) throw InvalidInput("enumerate_null_distribution: n must be >= 2");
    if (n > 8) throw InvalidInput("enumerate_null_distribution: n too large (max 8)");

    std::vector<int> s(static_cast<std::size_t>(n));
    std::iota(s.begin(), s.end(), 1);

    std::map<double, std::uint64_t> counts;
    std::uint64_t total = 0;
    do {
        const double v = statistic(RankPositionVector(s));
        ++counts[v];
        ++total;
    } while (std::next_permutation(s.begin(), s.end()));

    ExactPmf pmf;
    pmf.n = n;
    pmf.total = total;
    pmf.support.assign(counts.begin(), counts.end());
    return pmf;
}

} // namespace rankdep
