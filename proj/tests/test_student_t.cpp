#include <catch2/catch_amalgamated.hpp>

#include "rankdep/student_t.hpp"

using namespace rankdep;
using Catch::Approx;

TEST_CASE("t quantiles match reference values", "[student_t]") {
    // Reference values computed with an independent high-precision
    // implementation and frozen here.
    REQUIRE(student_t_quantile(0.975, 28) == Approx(2.048407141795244).margin(1e-9));
    REQUIRE(student_t_quantile(0.95, 28) == Approx(1.701130934265931).margin(1e-9));
    REQUIRE(student_t_quantile(0.975, 8) == Approx(2.306004135204166).margin(1e-9));
    REQUIRE(student_t_quantile(0.975, 1) == Approx(12.706204736432095).margin(1e-6));
    REQUIRE(student_t_quantile(0.99, 2) == Approx(6.964556734283269).margin(1e-8));
    REQUIRE(student_t_quantile(0.9, 100) == Approx(1.2900747613398769).margin(1e-9));
    REQUIRE(student_t_quantile(0.995, 28) == Approx(2.763262455461066).margin(1e-9));
    REQUIRE(student_t_quantile(0.975, 48) == Approx(2.010634757624232).margin(1e-9));
    REQUIRE(student_t_quantile(0.6, 5) == Approx(0.2671808657039658).margin(1e-10));
    REQUIRE(student_t_quantile(0.5, 7) == 0.0);
}

TEST_CASE("t cdf matches reference values and symmetry", "[student_t]") {
    REQUIRE(student_t_cdf(2.048407141795244, 28) == Approx(0.975).margin(1e-12));
    REQUIRE(student_t_cdf(-1.5, 10) == Approx(0.08225366322272008).margin(1e-12));
    REQUIRE(student_t_cdf(0.0, 3) == Approx(0.5).margin(1e-15));
    for (double t : {0.3, 1.0, 2.5, 6.0})
        REQUIRE(student_t_cdf(t, 12) + student_t_cdf(-t, 12) == Approx(1.0).margin(1e-12));
    REQUIRE(student_t_cdf(std::numeric_limits<double>::infinity(), 4) == 1.0);
    REQUIRE(student_t_cdf(-std::numeric_limits<double>::infinity(), 4) == 0.0);
}

TEST_CASE("cdf and quantile are inverse", "[student_t]") {
    for (double p : {0.01, 0.1, 0.3, 0.62, 0.9, 0.999})
        for (double df : {1.0, 4.0, 28.0, 120.0})
            REQUIRE(student_t_cdf(student_t_quantile(p, df), df) == Approx(p).margin(1e-10));
}

TEST_CASE("t distribution argument validation", "[student_t]") {
    REQUIRE_THROWS_AS(student_t_quantile(0.0, 5), InvalidInput);
    REQUIRE_THROWS_AS(student_t_quantile(1.0, 5), InvalidInput);
    REQUIRE_THROWS_AS(student_t_quantile(0.5, 0.0), InvalidInput);
    REQUIRE_THROWS_AS(student_t_cdf(1.0, -1.0), InvalidInput);
}
