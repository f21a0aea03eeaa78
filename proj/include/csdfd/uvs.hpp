#pragma once

#include "csdfd/simplex.hpp"
#include "csdfd/vec.hpp"

#include <cstdint>
#include <optional>

namespace csdfd {

struct UvsConfig {
    double c = 0.5;          // neighborhood radius multiplier
    double beta = 0.05;      // dual projected-gradient step size
    int dual_iters = 2000;   // projected-gradient steps per dual solve
    double eps_g0 = 1e-12;   // |g0| guard
    double eps_gw = 1e-12;   // |g_w| guard
    bool warm_start = true;  // reuse the previous step's mu

    bool operator==(const UvsConfig&) const = default;
};

enum class Degenerate { None, ZeroG0, ZeroGw };

struct UvsSolution {
    GradientVector v_star;
    SimplexWeights mu_star;
    double lambda_star = 0.0;
    double dual_value = 0.0;
    Degenerate degenerate = Degenerate::None;
};

// g0 = g1 + g2 (the losses are summed, so their gradients are too).
GradientVector total_gradient(const GradientVector& g1, const GradientVector& g2);

// psi(mu) = g_w . g0 + c |g0| |g_w| with g_w = mu1 g1 + mu2 g2. Minimizing
// psi over the simplex is the dual of maximizing the minimum per-subset
// descent rate over the ball |v - g0| <= c |g0|.
double dual_objective(const SimplexWeights& mu, const GradientVector& g1,
                      const GradientVector& g2, double c);

struct DualResult {
    SimplexWeights mu;
    double value = 0.0;
    bool zero_g0 = false;
};

// Projected gradient descent on psi: cfg.dual_iters steps of
// mu <- project(mu - beta * grad psi), with
// d psi / d mu_j = g_j.g0 + c |g0| (g_j.g_w) / |g_w|; the second term is
// skipped at iterates where |g_w| < eps_gw. The iteration runs on gradients
// rescaled by max(|g1|, |g2|) so the returned mu is invariant under positive
// scaling of the inputs; psi itself is minimized either way and the reported
// value is on the original scale.
DualResult solve_dual(const GradientVector& g1, const GradientVector& g2,
                      const UvsConfig& cfg, SimplexWeights mu_init);

// Closed forms at the dual optimum: v* = g0 + c |g0| g_w / |g_w| and
// lambda* = |g_w| / (2 c |g0|). Degenerate |g0| yields a zero update;
// degenerate |g_w| falls back to v* = g0.
UvsSolution update_vector(const SimplexWeights& mu_star, const GradientVector& g1,
                          const GradientVector& g2, const UvsConfig& cfg);

// solve_dual + update_vector; warm-starts mu from prev_mu when configured.
UvsSolution uvs_step(const GradientVector& g1, const GradientVector& g2,
                     const UvsConfig& cfg,
                     const std::optional<SimplexWeights>& prev_mu = std::nullopt);

// Baseline: project each gradient onto the normal plane of the other when
// they conflict, then sum.
GradientVector pcgrad_combine(const GradientVector& g1, const GradientVector& g2);

// Verification oracles, used by tests and the `verify` subcommand only.

struct GridMuResult {
    double mu1 = 0.0;
    double psi = 0.0;
};

// Exhaustive scan of psi over mu1 in {0, 1/steps, ..., 1}.
GridMuResult oracle_grid_mu(const GradientVector& g1, const GradientVector& g2,
                            double c, int steps);

struct BallMaxMinResult {
    GradientVector best_v;
    double best_minrate = 0.0;
};

// Dense sampling of the feasible ball |v - g0| <= c |g0| in dimension 2 or 3;
// returns the sampled maximizer of min_j g_j . v. Seeded and deterministic.
BallMaxMinResult oracle_ball_max_min(const GradientVector& g1, const GradientVector& g2,
                                     double c, int samples, std::uint64_t seed = 0x5eedu);

}  // namespace csdfd
