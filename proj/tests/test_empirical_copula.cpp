#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "rankdep/association.hpp"
#include "rankdep/empirical_copula.hpp"
#include "rankdep/rng.hpp"

using namespace rankdep;
using Catch::Approx;

namespace {

BivariateSample random_sample(int n, RngStream& rng) {
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
        x[i] = rng.normal();
        y[i] = rng.normal();
    }
    return BivariateSample(std::move(x), std::move(y));
}

} // namespace

TEST_CASE("comonotone sample attains the upper Frechet bound on the grid", "[copula_grid]") {
    const int n = 7;
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = 0.3 * i - 1.0;
    const auto grid = empirical_copula(BivariateSample(v, v));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            REQUIRE(grid.C(i, j) == Approx(std::min(i, j) / static_cast<double>(n)));
}

TEST_CASE("grid corners and mass placement", "[copula_grid]") {
    const auto grid = empirical_copula(RankPositionVector({2, 1, 3}));
    REQUIRE(grid.C(3, 3) == 1.0);
    REQUIRE(grid.C(0, 2) == 0.0);
    REQUIRE(grid.C(2, 0) == 0.0);
    REQUIRE(grid.has_mass(1, 2));
    REQUIRE(grid.has_mass(2, 1));
    REQUIRE(grid.has_mass(3, 3));
    REQUIRE_FALSE(grid.has_mass(1, 1));
    REQUIRE(grid.mass(1, 2) == Approx(1.0 / 3));
    REQUIRE(grid.mass(1, 1) == 0.0);
}

TEST_CASE("cumulative/frequency consistency holds exactly", "[copula_grid][property]") {
    RngStream rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_int(25));
        const auto grid = empirical_copula(random_sample(n, rng));

        // C(i,j) equals the lower-left block sum of cell masses.
        for (int i = 1; i <= n; ++i) {
            for (int j = 1; j <= n; ++j) {
                int block = 0;
                for (int p = 1; p <= i; ++p)
                    for (int q = 1; q <= j; ++q) block += grid.has_mass(p, q) ? 1 : 0;
                REQUIRE(grid.count(i, j) == block);
                // and the finite difference recovers the cell mass
                const int diff = grid.count(i, j) - grid.count(i - 1, j) -
                                 grid.count(i, j - 1) + grid.count(i - 1, j - 1);
                REQUIRE(diff == (grid.has_mass(i, j) ? 1 : 0));
            }
        }

        // every row and column of the mass grid sums to exactly 1/n
        for (int i = 1; i <= n; ++i) {
            int row = 0, col = 0;
            for (int j = 1; j <= n; ++j) {
                row += grid.has_mass(i, j) ? 1 : 0;
                col += grid.has_mass(j, i) ? 1 : 0;
            }
            REQUIRE(row == 1);
            REQUIRE(col == 1);
        }

        // monotone in each index and within the Frechet envelope
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                if (i > 0) REQUIRE(grid.count(i, j) >= grid.count(i - 1, j));
                if (j > 0) REQUIRE(grid.count(i, j) >= grid.count(i, j - 1));
                const double u = static_cast<double>(i) / n;
                const double v = static_cast<double>(j) / n;
                REQUIRE(grid.C(i, j) >= std::max(u + v - 1.0, 0.0) - 1e-12);
                REQUIRE(grid.C(i, j) <= std::min(u, v) + 1e-12);
            }
        }
    }
}

TEST_CASE("spearman rho hat on canonical inputs", "[association]") {
    std::vector<double> up{1, 2, 3, 4, 5};
    REQUIRE(spearman_rho_hat(empirical_copula(BivariateSample(up, up))) == Approx(1.0));
    std::vector<double> down{5, 4, 3, 2, 1};
    REQUIRE(spearman_rho_hat(empirical_copula(BivariateSample(up, down))) == Approx(-1.0));
    REQUIRE(spearman_rho_hat(empirical_copula(RankPositionVector({2, 1, 3}))) == Approx(0.5));
}

TEST_CASE("grid-path rho equals the classical rank formula", "[association][property]") {
    RngStream rng(22);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 3 + static_cast<int>(rng.uniform_int(28));
        const BivariateSample s = random_sample(n, rng);
        const double grid_rho = spearman_rho_hat(empirical_copula(s));
        const double classical = spearman_rho_classical(build_rpv(s));
        REQUIRE(grid_rho == Approx(classical).margin(1e-12));
    }
}

TEST_CASE("kendall t on canonical inputs", "[association]") {
    REQUIRE(kendall_t(RankPositionVector::identity(9)) == Approx(1.0));
    REQUIRE(kendall_t(RankPositionVector::reversal(9)) == Approx(-1.0));
    REQUIRE(kendall_t(RankPositionVector({2, 1, 3})) == Approx(1.0 / 3.0));
}

TEST_CASE("kendall t has exact null mean zero at n = 5", "[association][enumeration]") {
    const auto pmf = enumerate_null_distribution(
        5, [](const RankPositionVector& s) { return kendall_t(s); });
    REQUIRE(pmf.total == 120);
    REQUIRE(pmf.mean() == Approx(0.0).margin(1e-14));
}

TEST_CASE("gini g on canonical inputs", "[association]") {
    REQUIRE(gini_g(RankPositionVector::identity(6)) == Approx(1.0));
    REQUIRE(gini_g(RankPositionVector::reversal(6)) == Approx(-1.0));
    REQUIRE(gini_g(RankPositionVector::identity(7)) == Approx(1.0));
    REQUIRE(gini_g(RankPositionVector::reversal(7)) == Approx(-1.0));
    REQUIRE(gini_g(RankPositionVector({2, 1, 3})) == Approx(0.5));
}

TEST_CASE("rpv measures agree with the grid path", "[association][property]") {
    RngStream rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 3 + static_cast<int>(rng.uniform_int(28));
        const BivariateSample s = random_sample(n, rng);
        const RankPositionVector rpv = build_rpv(s);
        const RpvMeasures m = rpv_measures(rpv);
        REQUIRE(m.r == Approx(spearman_rho_hat(empirical_copula(s))).margin(1e-12));
        REQUIRE(m.t == Approx(kendall_t(s)).margin(1e-15));
        REQUIRE(m.g == Approx(gini_g(rpv)).margin(1e-15));
        REQUIRE(std::fabs(m.r) <= 1.0 + 1e-12);
        REQUIRE(std::fabs(m.t) <= 1.0 + 1e-12);
        REQUIRE(std::fabs(m.g) <= 1.0 + 1e-12);
    }
}

TEST_CASE("kendall and gini flip sign under y reversal", "[association][property]") {
    RngStream rng(24);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3 + static_cast<int>(rng.uniform_int(20));
        const BivariateSample s = random_sample(n, rng);
        const RankPositionVector rpv = build_rpv(s);
        std::vector<int> flipped(n);
        for (int i = 0; i < n; ++i) flipped[i] = n + 1 - rpv[i];
        const RankPositionVector rev(flipped);
        REQUIRE(kendall_t(rev) == Approx(-kendall_t(rpv)).margin(1e-15));
        REQUIRE(gini_g(rev) == Approx(-gini_g(rpv)).margin(1e-15));
        REQUIRE(spearman_rho_classical(rev) ==
                Approx(-spearman_rho_classical(rpv)).margin(1e-12));
    }
}

TEST_CASE("association measures are invariant under increasing transforms",
          "[association][property]") {
    RngStream rng(25);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + static_cast<int>(rng.uniform_int(20));
        const BivariateSample s = random_sample(n, rng);
        std::vector<double> tx(n), ty(n);
        for (int i = 0; i < n; ++i) {
            tx[i] = s.x()[i] * s.x()[i] * s.x()[i] + 2.0 * s.x()[i];
            ty[i] = std::exp(s.y()[i]);
        }
        const BivariateSample t(tx, ty);
        const RpvMeasures a = rpv_measures(build_rpv(s));
        const RpvMeasures b = rpv_measures(build_rpv(t));
        REQUIRE(a.r == b.r);
        REQUIRE(a.t == b.t);
        REQUIRE(a.g == b.g);
    }
}
