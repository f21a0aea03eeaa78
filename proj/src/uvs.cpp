#include "csdfd/uvs.hpp"

#include "csdfd/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace csdfd {

namespace {

// Pairwise dot products; everything the dual needs is a function of these.
struct Gram {
    double s11 = 0.0, s12 = 0.0, s22 = 0.0;
};

Gram make_gram(const GradientVector& g1, const GradientVector& g2) {
    Gram g;
    for (std::size_t i = 0; i < g1.size(); ++i) {
        g.s11 += g1[i] * g1[i];
        g.s12 += g1[i] * g2[i];
        g.s22 += g2[i] * g2[i];
    }
    return g;
}

double psi_from_gram(const Gram& g, double c, double mu1) {
    const double mu2 = 1.0 - mu1;
    const double s10 = g.s11 + g.s12;  // g1 . g0
    const double s20 = g.s12 + g.s22;  // g2 . g0
    const double g0_sq = g.s11 + 2.0 * g.s12 + g.s22;
    const double gw_g0 = mu1 * s10 + mu2 * s20;
    const double gw_sq = mu1 * mu1 * g.s11 + 2.0 * mu1 * mu2 * g.s12 + mu2 * mu2 * g.s22;
    return gw_g0 + c * std::sqrt(std::max(0.0, g0_sq)) * std::sqrt(std::max(0.0, gw_sq));
}

}  // namespace

GradientVector total_gradient(const GradientVector& g1, const GradientVector& g2) {
    return add(g1, g2);
}

double dual_objective(const SimplexWeights& mu, const GradientVector& g1,
                      const GradientVector& g2, double c) {
    require_same_length(g1, g2, "dual_objective");
    const GradientVector g0 = add(g1, g2);
    GradientVector gw(g1.size());
    for (std::size_t i = 0; i < g1.size(); ++i) gw[i] = mu[0] * g1[i] + mu[1] * g2[i];
    return dot(gw, g0) + c * norm(g0) * norm(gw);
}

DualResult solve_dual(const GradientVector& g1, const GradientVector& g2,
                      const UvsConfig& cfg, SimplexWeights mu_init) {
    require_same_length(g1, g2, "solve_dual");
    const Gram gram = make_gram(g1, g2);
    const double g0_norm = std::sqrt(std::max(0.0, gram.s11 + 2.0 * gram.s12 + gram.s22));

    DualResult out;
    out.mu = simplex_project(mu_init[0], mu_init[1]);
    if (g0_norm <= cfg.eps_g0) {
        out.zero_g0 = true;
        return out;
    }

    // Rescaled Gram: invariant under positive scaling of (g1, g2) and keeps
    // the fixed step size meaningful across gradient magnitudes.
    const double scale = std::max(gram.s11, gram.s22);
    Gram h = gram;
    h.s11 /= scale;
    h.s12 /= scale;
    h.s22 /= scale;
    const double h10 = h.s11 + h.s12;
    const double h20 = h.s12 + h.s22;
    const double h0_norm = std::sqrt(std::max(0.0, h.s11 + 2.0 * h.s12 + h.s22));
    const double scale_root = std::sqrt(scale);

    SimplexWeights mu = out.mu;
    for (int it = 0; it < cfg.dual_iters; ++it) {
        const double mu1 = mu[0];
        const double mu2 = mu[1];
        const double gw_sq = mu1 * mu1 * h.s11 + 2.0 * mu1 * mu2 * h.s12 + mu2 * mu2 * h.s22;
        const double gw_norm = std::sqrt(std::max(0.0, gw_sq));
        double grad1 = h10;
        double grad2 = h20;
        if (scale_root * gw_norm >= cfg.eps_gw) {
            const double g1gw = mu1 * h.s11 + mu2 * h.s12;
            const double g2gw = mu1 * h.s12 + mu2 * h.s22;
            grad1 += cfg.c * h0_norm * g1gw / gw_norm;
            grad2 += cfg.c * h0_norm * g2gw / gw_norm;
        }
        mu = simplex_project(mu1 - cfg.beta * grad1, mu2 - cfg.beta * grad2);
    }

    out.mu = mu;
    out.value = psi_from_gram(gram, cfg.c, mu[0]);
    return out;
}

UvsSolution update_vector(const SimplexWeights& mu_star, const GradientVector& g1,
                          const GradientVector& g2, const UvsConfig& cfg) {
    require_same_length(g1, g2, "update_vector");

    UvsSolution sol;
    sol.mu_star = mu_star;

    const GradientVector g0 = add(g1, g2);
    const double g0_norm = norm(g0);
    if (g0_norm <= cfg.eps_g0) {
        sol.v_star.assign(g1.size(), 0.0);
        sol.degenerate = Degenerate::ZeroG0;
        return sol;
    }

    GradientVector gw(g1.size());
    for (std::size_t i = 0; i < g1.size(); ++i) gw[i] = mu_star[0] * g1[i] + mu_star[1] * g2[i];
    const double gw_norm = norm(gw);
    sol.dual_value = dot(gw, g0) + cfg.c * g0_norm * gw_norm;

    if (gw_norm <= cfg.eps_gw) {
        sol.v_star = g0;
        sol.degenerate = Degenerate::ZeroGw;
        return sol;
    }

    sol.lambda_star = gw_norm / (2.0 * cfg.c * g0_norm);
    // v* = g0 + g_w / (2 lambda*), written in the division-free form.
    const double step = cfg.c * g0_norm / gw_norm;
    sol.v_star = g0;
    axpy(step, gw, sol.v_star);
    return sol;
}

UvsSolution uvs_step(const GradientVector& g1, const GradientVector& g2,
                     const UvsConfig& cfg, const std::optional<SimplexWeights>& prev_mu) {
    const SimplexWeights mu0 =
        (cfg.warm_start && prev_mu.has_value()) ? *prev_mu : SimplexWeights{{0.5, 0.5}};
    const DualResult dual = solve_dual(g1, g2, cfg, mu0);
    if (dual.zero_g0) {
        UvsSolution sol;
        sol.mu_star = dual.mu;
        sol.v_star.assign(g1.size(), 0.0);
        sol.degenerate = Degenerate::ZeroG0;
        return sol;
    }
    return update_vector(dual.mu, g1, g2, cfg);
}

GradientVector pcgrad_combine(const GradientVector& g1, const GradientVector& g2) {
    require_same_length(g1, g2, "pcgrad_combine");

    auto project_away = [](const GradientVector& g, const GradientVector& other) {
        GradientVector out = g;
        const double other_sq = dot(other, other);
        if (other_sq <= 0.0) return out;  // zero counterpart: nothing to project against
        const double inner = dot(g, other);
        if (inner < 0.0) axpy(-inner / other_sq, other, out);
        return out;
    };

    return add(project_away(g1, g2), project_away(g2, g1));
}

GridMuResult oracle_grid_mu(const GradientVector& g1, const GradientVector& g2,
                            double c, int steps) {
    if (steps < 1) throw std::invalid_argument("oracle_grid_mu: steps must be >= 1");
    require_same_length(g1, g2, "oracle_grid_mu");
    const Gram gram = make_gram(g1, g2);

    GridMuResult best;
    best.mu1 = 0.0;
    best.psi = psi_from_gram(gram, c, 0.0);
    for (int k = 1; k <= steps; ++k) {
        const double mu1 = static_cast<double>(k) / static_cast<double>(steps);
        const double psi = psi_from_gram(gram, c, mu1);
        if (psi < best.psi) {
            best.psi = psi;
            best.mu1 = mu1;
        }
    }
    return best;
}

BallMaxMinResult oracle_ball_max_min(const GradientVector& g1, const GradientVector& g2,
                                     double c, int samples, std::uint64_t seed) {
    require_same_length(g1, g2, "oracle_ball_max_min");
    const std::size_t dim = g1.size();
    if (dim != 2 && dim != 3) {
        throw std::invalid_argument("oracle_ball_max_min: dimension must be 2 or 3");
    }

    const GradientVector g0 = add(g1, g2);
    const double radius = c * norm(g0);

    auto minrate = [&](const GradientVector& v) {
        return std::min(dot(g1, v), dot(g2, v));
    };

    BallMaxMinResult best;
    best.best_v = g0;  // the ball center is always feasible
    best.best_minrate = minrate(g0);

    Rng rng(seed);
    GradientVector u(dim), v(dim);
    for (int s = 0; s < samples; ++s) {
        double sq;
        do {
            sq = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                u[i] = rng.uniform(-1.0, 1.0);
                sq += u[i] * u[i];
            }
        } while (sq > 1.0);
        for (std::size_t i = 0; i < dim; ++i) v[i] = g0[i] + radius * u[i];
        const double rate = minrate(v);
        if (rate > best.best_minrate) {
            best.best_minrate = rate;
            best.best_v = v;
        }
    }
    return best;
}

}  // namespace csdfd
