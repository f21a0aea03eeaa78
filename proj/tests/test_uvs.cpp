#include "csdfd/uvs.hpp"

#include "csdfd/landscape.hpp"
#include "csdfd/rng.hpp"
#include "csdfd/verify.hpp"

#include <doctest.h>

#include <cmath>

using namespace csdfd;

namespace {

double min_rate(const GradientVector& g1, const GradientVector& g2, const GradientVector& v) {
    return std::min(dot(g1, v), dot(g2, v));
}

}  // namespace

TEST_CASE("total_gradient") {
    CHECK(total_gradient({1.0, 0.0}, {0.0, 1.0}) == GradientVector{1.0, 1.0});
    const GradientVector g{0.3, -0.7, 2.0};
    const GradientVector zero = total_gradient(g, scaled(g, -1.0));
    for (double v : zero) CHECK(v == 0.0);

    Rng rng(3);
    const GradientVector a = random_gradient(rng, 17);
    const GradientVector b = random_gradient(rng, 17);
    const GradientVector s = total_gradient(a, b);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(s[i] == a[i] + b[i]);

    CHECK_THROWS_AS(total_gradient({1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("dual_objective worked values") {
    const GradientVector g1{1.0, 0.0};
    const GradientVector g2{0.0, 1.0};
    CHECK(dual_objective(SimplexWeights{{0.5, 0.5}}, g1, g2, 0.5) ==
          doctest::Approx(1.5).epsilon(1e-12));
    CHECK(dual_objective(SimplexWeights{{1.0, 0.0}}, g1, g2, 0.5) ==
          doctest::Approx(1.7071067811865475).epsilon(1e-12));
}

TEST_CASE("dual_objective is constant in mu when g1 == g2") {
    const GradientVector g{0.7, -0.2, 0.4};
    const double c = 0.5;
    const double expected = 2.0 * dot(g, g) + 2.0 * c * dot(g, g);
    for (double mu1 : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        CHECK(dual_objective(SimplexWeights{{mu1, 1.0 - mu1}}, g, g, c) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("solve_dual: orthogonal pair lands on (0.5, 0.5)") {
    const GradientVector g1{1.0, 0.0};
    const GradientVector g2{0.0, 1.0};
    UvsConfig cfg;
    const DualResult r = solve_dual(g1, g2, cfg, SimplexWeights{{0.9, 0.1}});
    CHECK(!r.zero_g0);
    CHECK(r.mu[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(r.value == doctest::Approx(1.5).epsilon(1e-9));

    const GridMuResult grid = oracle_grid_mu(g1, g2, cfg.c, 1000);
    CHECK(grid.mu1 == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(r.value <= grid.psi + 1e-9);
}

TEST_CASE("solve_dual: identical gradients keep any mu feasible and the value constant") {
    const GradientVector g{0.4, 0.6};
    UvsConfig cfg;
    const DualResult r = solve_dual(g, g, cfg, SimplexWeights{{0.3, 0.7}});
    CHECK(r.mu[0] >= 0.0);
    CHECK(r.mu[1] >= 0.0);
    CHECK(std::fabs(r.mu[0] + r.mu[1] - 1.0) <= 1e-12);
    CHECK(r.value == doctest::Approx(dual_objective(r.mu, g, g, cfg.c)).epsilon(1e-12));
}

TEST_CASE("solve_dual matches the grid argmin on an asymmetric pair") {
    const GradientVector g1{2.0, 0.0};
    const GradientVector g2{0.0, 1.0};
    UvsConfig cfg;
    const DualResult r = solve_dual(g1, g2, cfg, SimplexWeights{{0.5, 0.5}});
    const GridMuResult grid = oracle_grid_mu(g1, g2, cfg.c, 1000);
    CHECK(std::fabs(r.mu[0] - grid.mu1) <= 1e-3);
    CHECK(r.value <= grid.psi + 1e-6 * (1.0 + std::fabs(r.value)));
}

TEST_CASE("solve_dual signals a vanishing total gradient") {
    const GradientVector g1{1.0, 0.0};
    const GradientVector g2{-1.0, 0.0};
    const DualResult r = solve_dual(g1, g2, UvsConfig{}, SimplexWeights{});
    CHECK(r.zero_g0);
}

TEST_CASE("update_vector: orthogonal worked example") {
    const GradientVector g1{1.0, 0.0};
    const GradientVector g2{0.0, 1.0};
    const UvsSolution sol = update_vector(SimplexWeights{{0.5, 0.5}}, g1, g2, UvsConfig{});
    CHECK(sol.degenerate == Degenerate::None);
    CHECK(sol.v_star[0] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(sol.v_star[1] == doctest::Approx(1.5).epsilon(1e-12));
    // lambda* = |g_w| / (2 c |g0|) = (sqrt(2)/2) / sqrt(2) = 0.5
    CHECK(sol.lambda_star == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sol.lambda_star >= 0.0);
    CHECK(sol.dual_value == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("update_vector: aligned gradients give (1 + c) g0") {
    const GradientVector g1{1.0, 0.0};
    const UvsSolution sol = update_vector(SimplexWeights{{0.5, 0.5}}, g1, g1, UvsConfig{});
    CHECK(sol.v_star[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(sol.v_star[1] == doctest::Approx(0.0));
}

TEST_CASE("update_vector: antipodal gradients degenerate to a zero update") {
    const GradientVector g1{1.0, 0.0};
    const GradientVector g2{-1.0, 0.0};
    const UvsSolution sol = update_vector(SimplexWeights{{0.5, 0.5}}, g1, g2, UvsConfig{});
    CHECK(sol.degenerate == Degenerate::ZeroG0);
    CHECK(sol.v_star == GradientVector{0.0, 0.0});
}

TEST_CASE("update_vector: vanishing g_w falls back to g0") {
    // mu picks out the zero combination while g0 stays finite: g2 = -0.5 g1
    // with mu = (1/3, 2/3) gives g_w = 0 exactly.
    const GradientVector g1{3.0, 0.0};
    const GradientVector g2{-1.5, 0.0};
    const UvsSolution sol = update_vector(SimplexWeights{{1.0 / 3.0, 2.0 / 3.0}}, g1, g2, UvsConfig{});
    CHECK(sol.degenerate == Degenerate::ZeroGw);
    CHECK(sol.v_star[0] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(sol.v_star[1] == 0.0);
}

TEST_CASE("uvs_step end-to-end on the worked examples") {
    UvsConfig cfg;
    const UvsSolution ortho = uvs_step({1.0, 0.0}, {0.0, 1.0}, cfg);
    CHECK(ortho.degenerate == Degenerate::None);
    CHECK(ortho.v_star[0] == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(ortho.v_star[1] == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(ortho.mu_star[0] == doctest::Approx(0.5).epsilon(1e-3));

    const UvsSolution zero = uvs_step({0.0, 0.0}, {0.0, 0.0}, cfg);
    CHECK(zero.degenerate == Degenerate::ZeroG0);
    CHECK(zero.v_star == GradientVector{0.0, 0.0});

    const UvsSolution aligned = uvs_step({1.0, 0.0}, {1.0, 0.0}, cfg);
    CHECK(aligned.v_star[0] == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("uvs constraint feasibility and activeness over random pairs") {
    Rng rng(0xFEA5);
    UvsConfig cfg;
    const std::size_t dims[] = {2, 10, 100};
    for (int i = 0; i < 1000; ++i) {
        const std::size_t dim = dims[i % 3];
        const GradientVector g1 = random_gradient(rng, dim);
        const GradientVector g2 = random_gradient(rng, dim);
        const UvsSolution sol = uvs_step(g1, g2, cfg);
        if (sol.degenerate != Degenerate::None) continue;
        const GradientVector g0 = add(g1, g2);
        const double radius = cfg.c * norm(g0);
        const double dist = norm(sub(sol.v_star, g0));
        CHECK(dist <= radius * (1.0 + 1e-9));
        CHECK(std::fabs(dist - radius) / radius < 1e-9);
        CHECK(sol.lambda_star >= 0.0);
    }
}

TEST_CASE("uvs dual optimality against the 1001-point grid") {
    Rng rng(0xD0A2);
    UvsConfig cfg;
    const std::size_t dims[] = {2, 10, 100};
    for (int i = 0; i < 300; ++i) {
        const std::size_t dim = dims[i % 3];
        const GradientVector g1 = random_gradient(rng, dim);
        const GradientVector g2 = random_gradient(rng, dim);
        const UvsSolution sol = uvs_step(g1, g2, cfg);
        if (sol.degenerate != Degenerate::None) continue;
        const GridMuResult grid = oracle_grid_mu(g1, g2, cfg.c, 1000);
        CHECK(sol.dual_value <= grid.psi + 1e-6 * (1.0 + std::fabs(sol.dual_value)));
    }
}

TEST_CASE("uvs never does worse than stepping along g0") {
    Rng rng(0xBEEF);
    UvsConfig cfg;
    for (int i = 0; i < 1000; ++i) {
        const std::size_t dim = (i % 2 == 0) ? 2 : 10;
        const GradientVector g1 = random_gradient(rng, dim);
        const GradientVector g2 = random_gradient(rng, dim);
        const UvsSolution sol = uvs_step(g1, g2, cfg);
        if (sol.degenerate != Degenerate::None) continue;
        const GradientVector g0 = add(g1, g2);
        CHECK(min_rate(g1, g2, sol.v_star) >= min_rate(g1, g2, g0) - 1e-9);
    }
}

TEST_CASE("uvs positive homogeneity") {
    Rng rng(0x5CA1);
    UvsConfig cfg;
    for (int i = 0; i < 200; ++i) {
        const GradientVector g1 = random_gradient(rng, 6);
        const GradientVector g2 = random_gradient(rng, 6);
        const UvsSolution base = uvs_step(g1, g2, cfg);
        if (base.degenerate != Degenerate::None) continue;

        // Powers of two scale the whole computation exactly.
        for (double s : {2.0, 4.0, 0.5}) {
            const UvsSolution scaled_sol = uvs_step(scaled(g1, s), scaled(g2, s), cfg);
            CHECK(scaled_sol.mu_star[0] == base.mu_star[0]);
            CHECK(scaled_sol.mu_star[1] == base.mu_star[1]);
            for (std::size_t k = 0; k < g1.size(); ++k) {
                CHECK(scaled_sol.v_star[k] == s * base.v_star[k]);
            }
        }
        // Generic positive scale: equal up to rounding.
        const double s = 3.0;
        const UvsSolution sol3 = uvs_step(scaled(g1, s), scaled(g2, s), cfg);
        CHECK(sol3.mu_star[0] == doctest::Approx(base.mu_star[0]).epsilon(1e-12));
        for (std::size_t k = 0; k < g1.size(); ++k) {
            CHECK(sol3.v_star[k] == doctest::Approx(s * base.v_star[k]).epsilon(1e-12));
        }
    }
}

TEST_CASE("uvs max-min dominance against ball sampling in 2-D") {
    Rng rng(0xBA77);
    UvsConfig cfg;
    for (int i = 0; i < 25; ++i) {
        const GradientVector g1 = random_gradient(rng, 2);
        const GradientVector g2 = random_gradient(rng, 2);
        const UvsSolution sol = uvs_step(g1, g2, cfg);
        if (sol.degenerate != Degenerate::None) continue;
        const BallMaxMinResult ball = oracle_ball_max_min(g1, g2, cfg.c, 100000, 1000 + i);
        const GradientVector g0 = add(g1, g2);
        const double tol = 1e-3 * norm(g0) * std::max(norm(g1), norm(g2));
        CHECK(min_rate(g1, g2, sol.v_star) >= ball.best_minrate - tol);
    }
}

TEST_CASE("first-order descent realization on the toy landscapes") {
    // Wherever the max-min rate is positive, a small step along v* must
    // reduce both losses (Taylor validity of the linearized objective).
    UvsConfig cfg;
    const double alpha = 1e-4;
    for (LandscapeId id : {LandscapeId::SplitQuadratic, LandscapeId::BananaPair}) {
        const ToyLandscape ls = make_toy_landscape(id);
        Rng rng(0x70B0 + static_cast<int>(id));
        int eligible = 0;
        int decreased = 0;
        for (int i = 0; i < 1000; ++i) {
            const double t1 = rng.uniform(-2.0, 2.0);
            const double t2 = rng.uniform(-2.0, 2.0);
            const auto a1 = ls.grad1(t1, t2);
            const auto a2 = ls.grad2(t1, t2);
            const GradientVector g1{a1[0], a1[1]};
            const GradientVector g2{a2[0], a2[1]};
            const UvsSolution sol = uvs_step(g1, g2, cfg);
            if (sol.degenerate != Degenerate::None) continue;
            if (min_rate(g1, g2, sol.v_star) <= 0.0) continue;
            ++eligible;
            const double l1_before = ls.loss1(t1, t2);
            const double l2_before = ls.loss2(t1, t2);
            const double u1 = t1 - alpha * sol.v_star[0];
            const double u2 = t2 - alpha * sol.v_star[1];
            if (ls.loss1(u1, u2) < l1_before && ls.loss2(u1, u2) < l2_before) ++decreased;
        }
        CHECK(eligible > 100);
        CHECK(static_cast<double>(decreased) >= 0.99 * static_cast<double>(eligible));
    }
}

TEST_CASE("pcgrad worked examples") {
    // Orthogonal: unchanged sum.
    CHECK(pcgrad_combine({1.0, 0.0}, {0.0, 1.0}) == GradientVector{1.0, 1.0});

    // Conflicting pair from hand arithmetic.
    const GradientVector r = pcgrad_combine({1.0, 0.0}, {-1.0, 1.0});
    CHECK(r[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r[1] == doctest::Approx(1.5).epsilon(1e-12));

    // Aligned: plain doubling.
    const GradientVector g{0.3, 0.4};
    CHECK(pcgrad_combine(g, g) == GradientVector{0.6, 0.8});

    // A zero gradient skips its projection.
    const GradientVector z{0.0, 0.0};
    CHECK(pcgrad_combine(g, z) == g);
}

TEST_CASE("pcgrad projected components do not conflict") {
    Rng rng(0x9C9C);
    for (int i = 0; i < 500; ++i) {
        const GradientVector g1 = random_gradient(rng, 5);
        const GradientVector g2 = random_gradient(rng, 5);
        // Recompute the projected parts the way the combiner defines them.
        GradientVector p1 = g1;
        const double d12 = dot(g1, g2);
        if (d12 < 0.0) axpy(-d12 / dot(g2, g2), g2, p1);
        GradientVector p2 = g2;
        if (d12 < 0.0) axpy(-d12 / dot(g1, g1), g1, p2);
        CHECK(dot(p1, g2) >= -1e-12);
        CHECK(dot(p2, g1) >= -1e-12);
        CHECK(pcgrad_combine(g1, g2) == add(p1, p2));
    }
}

TEST_CASE("oracle guards") {
    CHECK_THROWS_AS(oracle_ball_max_min({1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, 0.5, 10),
                    std::invalid_argument);
    CHECK_THROWS_AS(oracle_grid_mu({1.0}, {1.0}, 0.5, 0), std::invalid_argument);
}
