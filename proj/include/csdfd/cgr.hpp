#pragma once

#include "csdfd/vec.hpp"

#include <functional>
#include <utility>

namespace csdfd {

struct CgrConfig {
    double tau = 0.01;       // scale of the diagonal Hessian surrogate
    double eps_norm = 1e-12;

    bool operator==(const CgrConfig&) const = default;
};

struct ConflictReport {
    double cosine = 0.0;
    double l_phi = 0.0;  // conflict descent loss, exactly -cosine
    double norm_g1 = 0.0;
    double norm_g2 = 0.0;
};

// Conflict intensity of two gradients: the cosine of their angle, and the
// conflict descent loss l_phi = -cosine. Throws std::invalid_argument
// ("degenerate gradient for conflict measure") when either norm is <= eps_norm.
ConflictReport conflict_cosine(const GradientVector& g1, const GradientVector& g2,
                               double eps_norm);

// Diagonal of the gradient outer product, scaled: tau * (g (*) g).
GradientVector hessian_diag_approx(const GradientVector& g, double tau);

struct CgrResult {
    GradientVector grad;
    bool degenerate = false;  // correction skipped; grad is g1p + g2p
};

// Projection-layer gradient including the conflict descent term:
//   g1p + g2p - gamma * (g1p(*)g1p(*)g2p + g2p(*)g2p(*)g1p),
//   gamma = tau / (|g1p| |g2p|).
// When |g1p||g2p| < eps_norm^2 the correction diverges and is skipped
// (flagged), leaving the plain sum.
CgrResult cgr_gradient(const GradientVector& g1p, const GradientVector& g2p,
                       const CgrConfig& cfg);

// Maps projection parameters to the two per-subset gradients computed there.
using LossPairGradFn =
    std::function<std::pair<GradientVector, GradientVector>(const DenseVector&)>;

// Central finite differences of l_phi(theta_p) = -cos(g1(theta_p), g2(theta_p))
// through the gradient computation. Test-scale oracle; theta_p must have at
// most 200 coordinates.
GradientVector exact_conflict_grad_fd(const LossPairGradFn& loss_pair_fn,
                                      const DenseVector& theta_p, double h);

}  // namespace csdfd
