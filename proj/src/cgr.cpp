#include "csdfd/cgr.hpp"

#include <cmath>
#include <stdexcept>

namespace csdfd {

ConflictReport conflict_cosine(const GradientVector& g1, const GradientVector& g2,
                               double eps_norm) {
    require_same_length(g1, g2, "conflict_cosine");

    ConflictReport report;
    report.norm_g1 = norm(g1);
    report.norm_g2 = norm(g2);
    if (report.norm_g1 <= eps_norm || report.norm_g2 <= eps_norm) {
        throw std::invalid_argument("degenerate gradient for conflict measure");
    }
    double c = dot(g1, g2) / (report.norm_g1 * report.norm_g2);
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    report.cosine = c;
    report.l_phi = -c;
    return report;
}

GradientVector hessian_diag_approx(const GradientVector& g, double tau) {
    GradientVector out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = tau * g[i] * g[i];
    return out;
}

CgrResult cgr_gradient(const GradientVector& g1p, const GradientVector& g2p,
                       const CgrConfig& cfg) {
    require_same_length(g1p, g2p, "cgr_gradient");

    CgrResult out;
    out.grad = add(g1p, g2p);

    const double n1 = norm(g1p);
    const double n2 = norm(g2p);
    if (n1 * n2 < cfg.eps_norm * cfg.eps_norm) {
        out.degenerate = true;
        return out;
    }

    const double gamma = cfg.tau / (n1 * n2);
    for (std::size_t i = 0; i < g1p.size(); ++i) {
        const double a = g1p[i];
        const double b = g2p[i];
        out.grad[i] -= gamma * (a * a * b + b * b * a);
    }
    return out;
}

GradientVector exact_conflict_grad_fd(const LossPairGradFn& loss_pair_fn,
                                      const DenseVector& theta_p, double h) {
    if (theta_p.size() > 200) {
        throw std::invalid_argument("exact_conflict_grad_fd: theta_p too large for the oracle");
    }
    if (!(h > 0.0)) throw std::invalid_argument("exact_conflict_grad_fd: h must be positive");

    auto l_phi_at = [&](const DenseVector& theta) {
        auto [g1, g2] = loss_pair_fn(theta);
        return conflict_cosine(g1, g2, 0.0).l_phi;
    };

    GradientVector grad(theta_p.size());
    DenseVector probe = theta_p;
    for (std::size_t i = 0; i < theta_p.size(); ++i) {
        const double saved = probe[i];
        probe[i] = saved + h;
        const double plus = l_phi_at(probe);
        probe[i] = saved - h;
        const double minus = l_phi_at(probe);
        probe[i] = saved;
        grad[i] = (plus - minus) / (2.0 * h);
    }
    return grad;
}

}  // namespace csdfd
