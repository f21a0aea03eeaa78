#include "csdfd/simplex.hpp"

#include "csdfd/rng.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace csdfd;

TEST_CASE("simplex_project: worked points") {
    const SimplexWeights a = simplex_project(0.5, 0.5);
    CHECK(a[0] == doctest::Approx(0.5));
    CHECK(a[1] == doctest::Approx(0.5));

    const SimplexWeights b = simplex_project(0.7, 0.5);
    CHECK(b[0] == doctest::Approx(0.6));
    CHECK(b[1] == doctest::Approx(0.4));

    const SimplexWeights c = simplex_project(2.0, -1.0);
    CHECK(c[0] == 1.0);
    CHECK(c[1] == 0.0);
}

TEST_CASE("simplex_project rejects non-finite input") {
    CHECK_THROWS_AS(simplex_project(std::numeric_limits<double>::quiet_NaN(), 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(simplex_project(0.0, std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
}

TEST_CASE("simplex_project: feasibility and exact idempotence") {
    Rng rng(2024);
    for (int i = 0; i < 2000; ++i) {
        const double r0 = rng.uniform(-5.0, 5.0);
        const double r1 = rng.uniform(-5.0, 5.0);
        const SimplexWeights p = simplex_project(r0, r1);
        CHECK(p[0] >= 0.0);
        CHECK(p[1] >= 0.0);
        CHECK(std::fabs(p[0] + p[1] - 1.0) <= 1e-12);

        const SimplexWeights q = simplex_project(p[0], p[1]);
        CHECK(q[0] == p[0]);
        CHECK(q[1] == p[1]);
    }
}

TEST_CASE("simplex_project agrees with the sort-based oracle") {
    Rng rng(77);
    for (int i = 0; i < 1000; ++i) {
        const double r0 = rng.uniform(-4.0, 4.0);
        const double r1 = rng.uniform(-4.0, 4.0);
        const SimplexWeights p = simplex_project(r0, r1);
        const auto q = oracles::simplex_project_sort({r0, r1});
        CHECK(p[0] == doctest::Approx(q[0]).epsilon(1e-12));
        CHECK(p[1] == doctest::Approx(q[1]).epsilon(1e-12));
    }
}

TEST_CASE("simplex_project minimality against a 1e-3 grid") {
    Rng rng(31337);
    for (int i = 0; i < 1000; ++i) {
        const double r0 = rng.uniform(-3.0, 3.0);
        const double r1 = rng.uniform(-3.0, 3.0);
        const SimplexWeights p = simplex_project(r0, r1);
        const double base =
            (p[0] - r0) * (p[0] - r0) + (p[1] - r1) * (p[1] - r1);
        for (int k = 0; k <= 1000; ++k) {
            const double m1 = static_cast<double>(k) / 1000.0;
            const double d = (m1 - r0) * (m1 - r0) + (1.0 - m1 - r1) * (1.0 - m1 - r1);
            CHECK(d >= base - 1e-15);
        }
    }
}
