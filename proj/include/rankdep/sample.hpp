#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "rankdep/errors.hpp"

namespace rankdep {

/// How tied values are handled when ranking.
///
/// Rank statistics here require strict permutations, so midranks are not an
/// option: Error refuses tied data, RandomBreak breaks ties by a seeded
/// shuffle of the tied positions (outputs stay strict permutations and are
/// reproducible for a fixed seed).
struct TiePolicy {
    enum class Mode { Error, RandomBreak };

    Mode mode = Mode::Error;
    std::uint64_t seed = 0;

    static TiePolicy error() { return {Mode::Error, 0}; }
    static TiePolicy random_break(std::uint64_t seed) {
        return {Mode::RandomBreak, seed};
    }
};

/// n paired observations (x_i, y_i), n >= 2, all values finite.
class BivariateSample {
public:
    BivariateSample(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        if (x_.size() != y_.size())
            throw InvalidInput("bivariate sample: x and y lengths differ");
        if (x_.size() < 2)
            throw InvalidInput("bivariate sample: need at least 2 observations");
        for (std::size_t i = 0; i < x_.size(); ++i) {
            if (!std::isfinite(x_[i]) || !std::isfinite(y_[i]))
                throw InvalidInput("bivariate sample: non-finite value at index " +
                                   std::to_string(i));
        }
    }

    explicit BivariateSample(const std::vector<std::pair<double, double>>& pairs)
        : BivariateSample(split_first(pairs), split_second(pairs)) {}

    int n() const noexcept { return static_cast<int>(x_.size()); }
    const std::vector<double>& x() const noexcept { return x_; }
    const std::vector<double>& y() const noexcept { return y_; }

private:
    static std::vector<double> split_first(const std::vector<std::pair<double, double>>& p) {
        std::vector<double> v;
        v.reserve(p.size());
        for (const auto& q : p) v.push_back(q.first);
        return v;
    }
    static std::vector<double> split_second(const std::vector<std::pair<double, double>>& p) {
        std::vector<double> v;
        v.reserve(p.size());
        for (const auto& q : p) v.push_back(q.second);
        return v;
    }

    std::vector<double> x_;
    std::vector<double> y_;
};

} // namespace rankdep
