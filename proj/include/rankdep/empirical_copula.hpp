#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rankdep/errors.hpp"
#include "rankdep/ranks.hpp"
#include "rankdep/sample.hpp"

namespace rankdep {

/// Empirical copula on the (i/n, j/n) lattice.
///
/// Values are kept as integer pair counts (the lattice values are multiples
/// of 1/n), so the cumulative/frequency consistency relations hold exactly:
///   C(i/n, j/n)  = lower-left block sum of the cell masses
///   c(i/n, j/n)  = C(i,j) - C(i-1,j) - C(i,j-1) + C(i-1,j-1)
class EmpiricalCopulaGrid {
public:
    EmpiricalCopulaGrid(int n, std::vector<std::uint8_t> mass) : n_(n), mass_(std::move(mass)) {
        counts_.assign(static_cast<std::size_t>(n_ + 1) * static_cast<std::size_t>(n_ + 1), 0);
        for (int i = 1; i <= n_; ++i) {
            for (int j = 1; j <= n_; ++j) {
                counts_[idx(i, j)] = counts_[idx(i - 1, j)] + counts_[idx(i, j - 1)] -
                                     counts_[idx(i - 1, j - 1)] +
                                     static_cast<int>(mass_[cell(i, j)]);
            }
        }
    }

    int n() const noexcept { return n_; }

    /// Integer count behind C: n * C(i/n, j/n), for i, j in 0..n.
    int count(int i, int j) const { return counts_[idx(i, j)]; }

    /// C_n(i/n, j/n), for i, j in 0..n.
    double C(int i, int j) const { return count(i, j) / static_cast<double>(n_); }

    /// True if cell (i, j), i, j in 1..n, carries mass 1/n.
    bool has_mass(int i, int j) const { return mass_[cell(i, j)] != 0; }

    /// c_n(i/n, j/n): either 1/n or 0.
    double mass(int i, int j) const { return has_mass(i, j) ? 1.0 / n_ : 0.0; }

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_ + 1) +
               static_cast<std::size_t>(j);
    }
    std::size_t cell(int i, int j) const {
        return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(j - 1);
    }

    int n_;
    std::vector<std::uint8_t> mass_; // n x n, row i = x-rank, col j = y-rank
    std::vector<int> counts_;        // (n+1) x (n+1) cumulative pair counts
};

/// Empirical copula of a sample: cell (i, s_i) holds mass 1/n, where s is
/// the rank position vector.
inline EmpiricalCopulaGrid empirical_copula(const BivariateSample& sample,
                                            const TiePolicy& policy = TiePolicy::error()) {
    const RankPositionVector rpv = build_rpv(sample, policy);
    const int n = rpv.n();
    std::vector<std::uint8_t> mass(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    for (int i = 1; i <= n; ++i)
        mass[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(rpv[i - 1] - 1)] = 1;
    return EmpiricalCopulaGrid(n, std::move(mass));
}

inline EmpiricalCopulaGrid empirical_copula(const RankPositionVector& rpv) {
    const int n = rpv.n();
    std::vector<std::uint8_t> mass(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    for (int i = 1; i <= n; ++i)
        mass[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(rpv[i - 1] - 1)] = 1;
    return EmpiricalCopulaGrid(n, std::move(mass));
}

/// Sample Spearman rho from the empirical copula lattice:
///   rho = 12/(n^2-1) * sum_ij [ C_n(i/n, j/n) - (i/n)(j/n) ].
/// Accumulated as exact integers (n*count - i*j), then divided once, so the
/// result agrees with the classical rank formula to rounding error.
inline double spearman_rho_hat(const EmpiricalCopulaGrid& grid) {
    const int n = grid.n();
    std::int64_t acc = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            acc += static_cast<std::int64_t>(n) * grid.count(i, j) -
                   static_cast<std::int64_t>(i) * j;
    const double nn = static_cast<double>(n);
    return 12.0 * static_cast<double>(acc) / (nn * nn * (nn * nn - 1.0));
}

} // namespace rankdep
