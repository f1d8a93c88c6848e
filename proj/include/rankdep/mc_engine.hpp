#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "rankdep/errors.hpp"
#include "rankdep/quantile_table.hpp"
#include "rankdep/quantiles.hpp"
#include "rankdep/rng.hpp"
#include "rankdep/sample.hpp"
#include "rankdep/test_stats.hpp"

namespace rankdep {

/// One of the two alternative families the power study uses.
struct AlternativeSpec {
    enum class Family { CorrelatedNormal, RandomWalkNormal };

    Family family = Family::CorrelatedNormal;
    double r = 0.0;
};

inline std::string to_string(AlternativeSpec::Family f) {
    return f == AlternativeSpec::Family::CorrelatedNormal ? "normal" : "rwalk";
}

/// Bivariate normal pairs with standard margins and correlation r:
/// x = z1, y = r z1 + sqrt(1 - r^2) z2. At r = +-1 the degenerate branch
/// y = +-x is taken exactly.
inline BivariateSample sample_bivariate_normal(int n, double r, RngStream& rng) {
    if (!(r >= -1.0 && r <= 1.0)) throw InvalidInput("sample_bivariate_normal: |r| must be <= 1");
    std::vector<double> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
    const double mix = std::sqrt(std::max(1.0 - r * r, 0.0));
    for (int i = 0; i < n; ++i) {
        const double z1 = rng.normal();
        x[static_cast<std::size_t>(i)] = z1;
        if (r == 1.0)
            y[static_cast<std::size_t>(i)] = z1;
        else if (r == -1.0)
            y[static_cast<std::size_t>(i)] = -z1;
        else
            y[static_cast<std::size_t>(i)] = r * z1 + mix * rng.normal();
    }
    return BivariateSample(std::move(x), std::move(y));
}

/// Correlated random walk: cumulative sums of correlated-normal increments.
/// The pairs are dependent across index even at r = 0.
inline BivariateSample sample_random_walk(int n, double r, RngStream& rng) {
    BivariateSample steps = sample_bivariate_normal(n, r, rng);
    std::vector<double> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
    double cx = 0.0, cy = 0.0;
    for (int i = 0; i < n; ++i) {
        cx += steps.x()[static_cast<std::size_t>(i)];
        cy += steps.y()[static_cast<std::size_t>(i)];
        x[static_cast<std::size_t>(i)] = cx;
        y[static_cast<std::size_t>(i)] = cy;
    }
    return BivariateSample(std::move(x), std::move(y));
}

inline BivariateSample sample_alternative(const AlternativeSpec& alt, int n, RngStream& rng) {
    if (alt.family == AlternativeSpec::Family::CorrelatedNormal)
        return sample_bivariate_normal(n, alt.r, rng);
    return sample_random_walk(n, alt.r, rng);
}

namespace detail {

/// Runs fn(i) for i in [0, total) across `threads` workers on contiguous
/// chunks. Each index is processed exactly once, so any result written by
/// index is independent of the worker count. The first exception thrown by
/// a worker is rethrown after all workers join.
inline void parallel_for(std::int64_t total, int threads, const std::function<void(std::int64_t)>& fn) {
    int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (workers == 1 || total < 2) {
        for (std::int64_t i = 0; i < total; ++i) fn(i);
        return;
    }
    workers = static_cast<int>(std::min<std::int64_t>(workers, total));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    const std::int64_t chunk = (total + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t begin = w * chunk;
        const std::int64_t end = std::min<std::int64_t>(begin + chunk, total);
        if (begin >= end) break;
        pool.emplace_back([begin, end, w, &fn, &errors] {
            try {
                for (std::int64_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
}

/// Null draws use i.i.d. uniform pairs; the rank distribution is the same
/// as for any continuous independent pair. Tp is not rank-based, so its
/// null draws use independent normals.
inline BivariateSample sample_null(StatisticId id, int n, RngStream& rng) {
    std::vector<double> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
    if (id == StatisticId::Tp) {
        for (int i = 0; i < n; ++i) {
            x[static_cast<std::size_t>(i)] = rng.normal();
            y[static_cast<std::size_t>(i)] = rng.normal();
        }
    } else {
        for (int i = 0; i < n; ++i) {
            x[static_cast<std::size_t>(i)] = rng.uniform();
            y[static_cast<std::size_t>(i)] = rng.uniform();
        }
    }
    return BivariateSample(std::move(x), std::move(y));
}

} // namespace detail

/// Simulates the null distribution of a statistic and tabulates its
/// quantiles. Deterministic for a fixed seed whatever the worker count:
/// iteration i always draws from the stream derived from (seed, i), and the
/// draws are aggregated by sorting.
inline QuantileTable simulate_null_quantiles(StatisticId id, int n, std::int64_t iterations,
                                             const std::vector<double>& probs, std::uint64_t seed,
                                             const StatParams& params = {}, int threads = 0) {
    if (iterations < 100) throw InvalidInput("simulate_null_quantiles: need >= 100 iterations");
    if (probs.empty()) throw InvalidInput("simulate_null_quantiles: no probability levels");
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (!(probs[i] > 0.0 && probs[i] < 1.0))
            throw InvalidInput("simulate_null_quantiles: probs must lie in (0, 1)");
        if (i > 0 && probs[i] <= probs[i - 1])
            throw InvalidInput("simulate_null_quantiles: probs must be strictly increasing");
    }

    std::vector<double> draws(static_cast<std::size_t>(iterations));
    detail::parallel_for(iterations, threads, [&](std::int64_t i) {
        RngStream rng = RngStream::for_iteration(seed, static_cast<std::uint64_t>(i));
        StatParams local = params;
        // Uniform draws collide with probability ~n^2 * 2^-53; the seeded
        // break keeps the run alive if that ever happens.
        local.ties = TiePolicy::random_break(mix64(seed ^ static_cast<std::uint64_t>(i)));
        const BivariateSample s = detail::sample_null(id, n, rng);
        draws[static_cast<std::size_t>(i)] = evaluate_statistic(id, s, local);
    });
    std::sort(draws.begin(), draws.end());

    QuantileTable table;
    table.statistic = id;
    table.n = n;
    table.probs = probs;
    table.values.reserve(probs.size());
    for (double prob : probs) table.values.push_back(quantile_sorted(draws, prob));
    table.iterations = iterations;
    table.seed = seed;
    return table;
}

/// Monte Carlo power: the fraction of alternative draws the test rejects.
inline double estimate_power(StatisticId id, const AlternativeSpec& alt, int n,
                             std::int64_t iterations, const QuantileTable* table, double alpha,
                             std::uint64_t seed, const StatParams& params = {}, int threads = 0) {
    if (iterations < 100) throw InvalidInput("estimate_power: need >= 100 iterations");
    if (id != StatisticId::Tp) {
        if (table == nullptr)
            throw TableMismatch("estimate_power: statistic " + to_string(id) +
                                " needs a quantile table");
        if (table->statistic != id || table->n != n)
            throw TableMismatch("estimate_power: table does not match (statistic, n)");
    }

    std::vector<std::uint8_t> rejected(static_cast<std::size_t>(iterations), 0);
    detail::parallel_for(iterations, threads, [&](std::int64_t i) {
        RngStream rng = RngStream::for_iteration(seed, static_cast<std::uint64_t>(i));
        StatParams local = params;
        // Degenerate alternatives (r = +-1) tie x with y deterministically
        // on both axes jointly but never within one axis; the break is a
        // safety net for repeated normals only.
        local.ties = TiePolicy::random_break(mix64(seed ^ static_cast<std::uint64_t>(i)));
        const BivariateSample s = sample_alternative(alt, n, rng);
        rejected[static_cast<std::size_t>(i)] =
            run_test(id, s, table, alpha, local).reject ? 1 : 0;
    });

    std::int64_t count = 0;
    for (std::uint8_t b : rejected) count += b;
    return static_cast<double>(count) / static_cast<double>(iterations);
}

} // namespace rankdep
