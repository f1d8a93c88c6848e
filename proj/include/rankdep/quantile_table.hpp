#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "rankdep/errors.hpp"

namespace rankdep {

/// The nine statistic identifiers the test framework knows about.
enum class StatisticId { T1, T2, T3, T4, T5, T6, SpearmanRho, KendallT, Tp };

inline std::string to_string(StatisticId id) {
    switch (id) {
        case StatisticId::T1: return "T1";
        case StatisticId::T2: return "T2";
        case StatisticId::T3: return "T3";
        case StatisticId::T4: return "T4";
        case StatisticId::T5: return "T5";
        case StatisticId::T6: return "T6";
        case StatisticId::SpearmanRho: return "SpearmanRho";
        case StatisticId::KendallT: return "KendallT";
        case StatisticId::Tp: return "Tp";
    }
    return "?";
}

inline StatisticId parse_statistic_id(const std::string& name) {
    if (name == "T1") return StatisticId::T1;
    if (name == "T2") return StatisticId::T2;
    if (name == "T3") return StatisticId::T3;
    if (name == "T4") return StatisticId::T4;
    if (name == "T5") return StatisticId::T5;
    if (name == "T6") return StatisticId::T6;
    if (name == "SpearmanRho" || name == "Spearman") return StatisticId::SpearmanRho;
    if (name == "KendallT" || name == "Kendall") return StatisticId::KendallT;
    if (name == "Tp") return StatisticId::Tp;
    throw InvalidInput("unknown statistic '" + name + "'");
}

/// The default probability levels used throughout:
/// 2.5%, 5%, 10%, 25%, 50%, 75%, 90%, 95%, 97.5%.
inline const std::vector<double>& default_probs() {
    static const std::vector<double> p = {0.025, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95, 0.975};
    return p;
}

/// Simulated null quantiles of one statistic at one sample size, with the
/// seed and iteration count that produced them.
struct QuantileTable {
    StatisticId statistic = StatisticId::T1;
    int n = 0;
    std::vector<double> probs;
    std::vector<double> values;
    std::int64_t iterations = 0;
    std::uint64_t seed = 0;

    void validate() const {
        if (probs.size() != values.size())
            throw InvalidInput("quantile table: probs/values size mismatch");
        if (probs.empty()) throw InvalidInput("quantile table: empty");
        for (std::size_t i = 0; i < probs.size(); ++i) {
            if (!(probs[i] > 0.0 && probs[i] < 1.0))
                throw InvalidInput("quantile table: probs must lie in (0, 1)");
            if (i > 0 && probs[i] <= probs[i - 1])
                throw InvalidInput("quantile table: probs must be strictly increasing");
            if (i > 0 && values[i] < values[i - 1])
                throw InvalidInput("quantile table: values must be nondecreasing");
        }
    }

    /// Value at a stored probability level (exact match up to 1e-9).
    double quantile_at(double p) const {
        for (std::size_t i = 0; i < probs.size(); ++i)
            if (std::fabs(probs[i] - p) < 1e-9) return values[i];
        throw TableMismatch("quantile table for " + to_string(statistic) +
                            ": no stored level p = " + std::to_string(p));
    }
};

} // namespace rankdep
