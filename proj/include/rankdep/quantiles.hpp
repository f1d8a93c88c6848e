#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "rankdep/errors.hpp"

namespace rankdep {

/// Order-statistic quantile with linear interpolation, h = (N-1)p + 1.
/// `sorted` must be ascending and non-empty.
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) throw InvalidInput("quantile: empty data");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("quantile: p outside [0, 1]");
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double h = (static_cast<double>(n) - 1.0) * p + 1.0;
    const double fl = std::floor(h);
    std::size_t lo = static_cast<std::size_t>(fl);
    if (lo >= n) return sorted[n - 1];
    const double frac = h - fl;
    if (frac == 0.0) return sorted[lo - 1];
    return sorted[lo - 1] + frac * (sorted[lo] - sorted[lo - 1]);
}

/// Quantiles of unsorted data; sorts a copy.
inline std::vector<double> quantiles(std::vector<double> data, const std::vector<double>& probs) {
    std::sort(data.begin(), data.end());
    std::vector<double> out;
    out.reserve(probs.size());
    for (double p : probs) out.push_back(quantile_sorted(data, p));
    return out;
}

} // namespace rankdep
