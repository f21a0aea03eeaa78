#include "csdfd/verify.hpp"

#include "csdfd/bench.hpp"
#include "csdfd/cgr.hpp"
#include "csdfd/loss.hpp"
#include "csdfd/mlp.hpp"
#include "csdfd/simplex.hpp"
#include "csdfd/uvs.hpp"

#include <algorithm>
#include <cmath>

namespace csdfd {

DenseVector random_gradient(Rng& rng, std::size_t dim) {
    DenseVector g(dim);
    for (double& v : g) v = rng.normal();
    return g;
}

namespace {

CheckResult check_dual_grid(int pairs) {
    CheckResult res{"uvs-dual-grid-optimality", true, 0.0, ""};
    Rng rng(0xD0A1u);
    const UvsConfig cfg;
    const std::size_t dims[] = {2, 10, 100};
    for (int i = 0; i < pairs; ++i) {
        const std::size_t dim = dims[i % 3];
        const GradientVector g1 = random_gradient(rng, dim);
        const GradientVector g2 = random_gradient(rng, dim);
        const UvsSolution sol = uvs_step(g1, g2, cfg);
        if (sol.degenerate != Degenerate::None) continue;
        const GridMuResult grid = oracle_grid_mu(g1, g2, cfg.c, 1000);
        const double gap = sol.dual_value - grid.psi;
        const double tol = 1e-6 * (1.0 + std::fabs(sol.dual_value));
        res.worst = std::max(res.worst, gap / (1.0 + std::fabs(sol.dual_value)));
        if (gap > tol) {
            res.pass = false;
            res.detail = "dual value exceeds grid minimum at pair " + std::to_string(i);
        }
    }
    if (res.detail.empty()) res.detail = std::to_string(pairs) + " random pairs, dims {2,10,100}";
    return res;
}

CheckResult check_constraint_active(int pairs) {
    CheckResult res{"uvs-constraint-activeness", true, 0.0, ""};
    Rng rng(0xC0FEu);
    const UvsConfig cfg;
    const std::size_t dims[] = {2, 10, 100};
    for (int i = 0; i < pairs; ++i) {
        const std::size_t dim = dims[i % 3];
        const GradientVector g1 = random_gradient(rng, dim);
        const GradientVector g2 = random_gradient(rng, dim);
        const UvsSolution sol = uvs_step(g1, g2, cfg);
        if (sol.degenerate != Degenerate::None) continue;
        const GradientVector g0 = add(g1, g2);
        const double radius = cfg.c * norm(g0);
        const double dev = std::fabs(norm(sub(sol.v_star, g0)) - radius) / radius;
        res.worst = std::max(res.worst, dev);
        if (dev > 1e-9) {
            res.pass = false;
            res.detail = "constraint not active at pair " + std::to_string(i);
        }
    }
    if (res.detail.empty()) res.detail = std::to_string(pairs) + " random pairs, dims {2,10,100}";
    return res;
}

CheckResult check_ball_dominance(int pairs, int samples) {
    CheckResult res{"uvs-ball-max-min-dominance", true, 0.0, ""};
    Rng rng(0xBA11u);
    const UvsConfig cfg;
    for (int i = 0; i < pairs; ++i) {
        const GradientVector g1 = random_gradient(rng, 2);
        const GradientVector g2 = random_gradient(rng, 2);
        const UvsSolution sol = uvs_step(g1, g2, cfg);
        if (sol.degenerate != Degenerate::None) continue;
        const BallMaxMinResult ball =
            oracle_ball_max_min(g1, g2, cfg.c, samples, 0xBA11u + static_cast<std::uint64_t>(i));
        const double v_rate = std::min(dot(g1, sol.v_star), dot(g2, sol.v_star));
        const GradientVector g0 = add(g1, g2);
        const double tol = 1e-3 * norm(g0) * std::max(norm(g1), norm(g2));
        const double shortfall = ball.best_minrate - v_rate;
        res.worst = std::max(res.worst, shortfall);
        if (shortfall > tol) {
            res.pass = false;
            res.detail = "sampled point beats v* at pair " + std::to_string(i);
        }
    }
    if (res.detail.empty()) {
        res.detail = std::to_string(pairs) + " pairs x " + std::to_string(samples) + " ball samples";
    }
    return res;
}

CheckResult check_backprop_fd(int models) {
    CheckResult res{"mlp-finite-difference-gradient", true, 0.0, ""};
    Rng rng(0xFD00u);
    for (int m = 0; m < models; ++m) {
        const std::size_t d = 3 + rng.next_below(4);
        const std::size_t h1 = 3 + rng.next_below(5);
        const std::size_t h2 = 3 + rng.next_below(5);
        MlpModel model({
            {d, h1, Activation::Tanh, Part::Backbone},
            {h1, h2, Activation::Tanh, Part::Projection},
            {h2, 1, Activation::None, Part::Classifier},
        });
        model.init_params(rng);

        Batch batch;
        const std::size_t n = 2 + rng.next_below(4);
        batch.inputs = Matrix(n, d);
        for (double& v : batch.inputs.data) v = rng.normal();
        batch.labels.resize(n);
        for (double& y : batch.labels) y = static_cast<double>(rng.next_below(2));

        const ForwardResult fwd = mlp_forward(model, batch);
        const BceResult bce = bce_loss_and_grad(fwd.logits, batch.labels);
        const GradientVector grad = mlp_backward(model, fwd.cache, bce.dloss_dlogits);

        auto loss_at = [&](const DenseVector& params) {
            MlpModel probe = model;
            probe.set_params(params);
            const ForwardResult f = mlp_forward(probe, batch);
            return bce_loss_and_grad(f.logits, batch.labels).loss;
        };

        const double h = 1e-5;
        DenseVector params = model.params();
        for (std::size_t i = 0; i < params.size(); ++i) {
            if (std::fabs(grad[i]) <= 1e-8) continue;
            const double saved = params[i];
            params[i] = saved + h;
            const double up = loss_at(params);
            params[i] = saved - h;
            const double down = loss_at(params);
            params[i] = saved;
            const double fd = (up - down) / (2.0 * h);
            const double rel = std::fabs(fd - grad[i]) / std::fabs(grad[i]);
            res.worst = std::max(res.worst, rel);
            if (rel > 1e-4) {
                res.pass = false;
                res.detail = "model " + std::to_string(m) + " coordinate " + std::to_string(i);
            }
        }
    }
    if (res.detail.empty()) res.detail = std::to_string(models) + " random (model, batch) pairs";
    return res;
}

CheckResult check_simplex(int points) {
    CheckResult res{"simplex-projection-minimality", true, 0.0, ""};
    Rng rng(0x51ABu);
    for (int i = 0; i < points; ++i) {
        const double raw0 = rng.uniform(-3.0, 3.0);
        const double raw1 = rng.uniform(-3.0, 3.0);
        const SimplexWeights p = simplex_project(raw0, raw1);
        const SimplexWeights q = simplex_project(p[0], p[1]);
        if (p[0] != q[0] || p[1] != q[1]) {
            res.pass = false;
            res.detail = "projection not idempotent";
        }
        const double base = (p[0] - raw0) * (p[0] - raw0) + (p[1] - raw1) * (p[1] - raw1);
        for (int k = 0; k <= 1000; ++k) {
            const double m1 = static_cast<double>(k) / 1000.0;
            const double d = (m1 - raw0) * (m1 - raw0) + (1.0 - m1 - raw1) * (1.0 - m1 - raw1);
            if (d < base) {
                res.worst = std::max(res.worst, base - d);
                res.pass = false;
                res.detail = "grid point strictly closer than projection";
            }
        }
    }
    if (res.detail.empty()) res.detail = std::to_string(points) + " random points, grid step 1e-3";
    return res;
}

CheckResult check_auc_counting(int sets) {
    CheckResult res{"auc-pairwise-counting", true, 0.0, ""};
    Rng rng(0xA0CDu);
    for (int i = 0; i < sets; ++i) {
        const std::size_t n = 4 + rng.next_below(40);
        DenseVector scores(n), labels(n);
        bool has0 = false, has1 = false;
        for (std::size_t k = 0; k < n; ++k) {
            scores[k] = rng.uniform(0.0, 1.0);
            labels[k] = static_cast<double>(rng.next_below(2));
            has0 |= labels[k] == 0.0;
            has1 |= labels[k] == 1.0;
        }
        if (!has0) labels[0] = 0.0;
        if (!has1) labels[n - 1] = 1.0;

        // O(n^2) pairwise count, ties at 1/2.
        double wins = 0.0;
        std::size_t pairs = 0;
        for (std::size_t a = 0; a < n; ++a) {
            if (labels[a] != 1.0) continue;
            for (std::size_t b = 0; b < n; ++b) {
                if (labels[b] != 0.0) continue;
                ++pairs;
                if (scores[a] > scores[b]) wins += 1.0;
                else if (scores[a] == scores[b]) wins += 0.5;
            }
        }
        const double expected = wins / static_cast<double>(pairs);
        const double got = auc(scores, labels);
        const double err = std::fabs(expected - got);
        res.worst = std::max(res.worst, err);
        if (err > 1e-12) {
            res.pass = false;
            res.detail = "rank AUC disagrees with pairwise counting at set " + std::to_string(i);
        }
    }
    if (res.detail.empty()) res.detail = std::to_string(sets) + " random score/label sets";
    return res;
}

}  // namespace

std::vector<CheckResult> run_verification(bool full) {
    std::vector<CheckResult> out;
    out.push_back(check_dual_grid(full ? 1000 : 150));
    out.push_back(check_constraint_active(full ? 1000 : 150));
    out.push_back(check_ball_dominance(full ? 100 : 20, full ? 100000 : 20000));
    out.push_back(check_backprop_fd(full ? 100 : 15));
    out.push_back(check_simplex(full ? 1000 : 200));
    out.push_back(check_auc_counting(full ? 200 : 50));
    return out;
}

}  // namespace csdfd
