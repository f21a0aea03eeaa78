#include "csdfd/trainer.hpp"

#include "csdfd/loss.hpp"
#include "csdfd/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace csdfd {

namespace {

// Seed salts for the independent draw streams inside train().
constexpr std::uint64_t kSaltBatchX = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kSaltBatchXp = 0xC2B2AE3D27D4EB4Full;

Batch draw_batch(const Batch& pool, std::size_t batch_size, Rng& rng) {
    Batch b;
    b.tag = pool.tag;
    b.inputs = Matrix(batch_size, pool.inputs.cols);
    b.labels.resize(batch_size);
    for (std::size_t r = 0; r < batch_size; ++r) {
        const std::size_t idx = rng.next_below(pool.inputs.rows);
        for (std::size_t c = 0; c < pool.inputs.cols; ++c) {
            b.inputs.at(r, c) = pool.inputs.at(idx, c);
        }
        b.labels[r] = pool.labels[idx];
    }
    return b;
}

struct LossGrad {
    double loss = 0.0;
    GradientVector grad;
};

LossGrad loss_and_grad(const MlpModel& model, const Batch& batch) {
    const ForwardResult fwd = mlp_forward(model, batch);
    const BceResult bce = bce_loss_and_grad(fwd.logits, batch.labels);
    return {bce.loss, mlp_backward(model, fwd.cache, bce.dloss_dlogits)};
}

double windowed_std(const std::vector<StepRow>& rows, int window, bool second) {
    if (rows.empty()) return 0.0;
    const std::size_t w = std::min<std::size_t>(rows.size(), static_cast<std::size_t>(std::max(window, 1)));
    const std::size_t begin = rows.size() - w;
    double mean = 0.0;
    for (std::size_t i = begin; i < rows.size(); ++i) mean += second ? rows[i].loss2 : rows[i].loss1;
    mean /= static_cast<double>(w);
    if (w < 2) return 0.0;
    double acc = 0.0;
    for (std::size_t i = begin; i < rows.size(); ++i) {
        const double v = (second ? rows[i].loss2 : rows[i].loss1) - mean;
        acc += v * v;
    }
    return std::sqrt(acc / static_cast<double>(w - 1));
}

}  // namespace

std::string_view strategy_name(Strategy s) {
    switch (s) {
        case Strategy::OriginalOnly: return "original-only";
        case Strategy::SynthOnly: return "synth-only";
        case Strategy::NaiveJoint: return "naive";
        case Strategy::PcGrad: return "pcgrad";
        case Strategy::UvsOnly: return "uvs";
        case Strategy::CgrOnly: return "cgr";
        case Strategy::CsDfd: return "cs-dfd";
    }
    return "unknown";
}

Strategy parse_strategy(std::string_view name) {
    for (Strategy s : kAllStrategies) {
        if (strategy_name(s) == name) return s;
    }
    throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

TrainDivergedError::TrainDivergedError(int step, double loss1, double loss2)
    : std::runtime_error("training diverged at step " + std::to_string(step) +
                         " (loss1=" + std::to_string(loss1) +
                         ", loss2=" + std::to_string(loss2) + ")"),
      step_(step),
      loss1_(loss1),
      loss2_(loss2) {}

UpdateDecision compute_update(const ParamPartition& partition, const GradientVector& g1,
                              const GradientVector& g2, Strategy strategy,
                              const UvsConfig& uvs_cfg, const CgrConfig& cgr_cfg,
                              const std::optional<SimplexWeights>& warm_mu) {
    require_same_length(g1, g2, "compute_update");
    UpdateDecision dec;

    switch (strategy) {
        case Strategy::OriginalOnly:
            dec.update = g1;
            return dec;
        case Strategy::SynthOnly:
            dec.update = g2;
            return dec;
        case Strategy::NaiveJoint:
            dec.update = add(g1, g2);
            return dec;
        case Strategy::PcGrad:
            dec.update = pcgrad_combine(g1, g2);
            return dec;
        case Strategy::UvsOnly: {
            const UvsSolution sol = uvs_step(g1, g2, uvs_cfg, warm_mu);
            dec.update = sol.v_star;
            dec.mu = sol.mu_star;
            dec.used_uvs = true;
            if (sol.degenerate == Degenerate::ZeroG0) dec.degenerate |= kDegenerateZeroG0;
            if (sol.degenerate == Degenerate::ZeroGw) dec.degenerate |= kDegenerateZeroGw;
            return dec;
        }
        case Strategy::CgrOnly: {
            dec.update = add(g1, g2);
            const std::vector<Range> proj = {partition.projection};
            const CgrResult cgr = cgr_gradient(gather(g1, proj), gather(g2, proj), cgr_cfg);
            scatter(cgr.grad, proj, dec.update);
            if (cgr.degenerate) dec.degenerate |= kDegenerateCgrSkip;
            return dec;
        }
        case Strategy::CsDfd: {
            dec.update.assign(g1.size(), 0.0);
            // UVS on the backbone + classifier slice only; the projection
            // parameters are driven exclusively by the CGR gradient.
            const std::vector<Range> main = {partition.backbone, partition.classifier};
            const UvsSolution sol =
                uvs_step(gather(g1, main), gather(g2, main), uvs_cfg, warm_mu);
            scatter(sol.v_star, main, dec.update);
            dec.mu = sol.mu_star;
            dec.used_uvs = true;
            if (sol.degenerate == Degenerate::ZeroG0) dec.degenerate |= kDegenerateZeroG0;
            if (sol.degenerate == Degenerate::ZeroGw) dec.degenerate |= kDegenerateZeroGw;

            const std::vector<Range> proj = {partition.projection};
            const CgrResult cgr = cgr_gradient(gather(g1, proj), gather(g2, proj), cgr_cfg);
            scatter(cgr.grad, proj, dec.update);
            if (cgr.degenerate) dec.degenerate |= kDegenerateCgrSkip;
            return dec;
        }
    }
    throw std::invalid_argument("compute_update: unknown strategy");
}

TrainResult train(const TrainConfig& cfg, const BenchDatasets& data, Strategy strategy) {
    if (cfg.alpha <= 0.0) throw std::invalid_argument("train: alpha must be > 0");
    if (cfg.steps < 1) throw std::invalid_argument("train: steps must be >= 1");
    if (data.subset_x.size() == 0) throw std::invalid_argument("train: subset_x is empty");

    Rng rng_model(cfg.seed);
    Rng rng_x(cfg.seed ^ kSaltBatchX);
    Rng rng_xp(cfg.seed ^ kSaltBatchXp);

    MlpModel model = make_default_model(data.subset_x.inputs.cols);
    model.init_params(rng_model);

    RunReport report;
    report.config = cfg;
    report.strategy = strategy;
    report.rows.reserve(static_cast<std::size_t>(cfg.steps));

    const bool has_xp = data.subset_xp.size() > 0;
    std::optional<SimplexWeights> warm_mu;

    for (int step = 0; step < cfg.steps; ++step) {
        const Batch bx = draw_batch(data.subset_x, cfg.batch_size, rng_x);
        const LossGrad lg1 = loss_and_grad(model, bx);

        LossGrad lg2;
        lg2.grad.assign(model.param_count(), 0.0);
        if (has_xp) {
            const Batch bxp = draw_batch(data.subset_xp, cfg.batch_size, rng_xp);
            lg2 = loss_and_grad(model, bxp);
        }

        if (!std::isfinite(lg1.loss) || !std::isfinite(lg2.loss)) {
            throw TrainDivergedError(step, lg1.loss, lg2.loss);
        }

        const UpdateDecision dec = compute_update(model.partition(), lg1.grad, lg2.grad,
                                                  strategy, cfg.uvs, cfg.cgr, warm_mu);
        if (dec.used_uvs && cfg.uvs.warm_start) warm_mu = dec.mu;

        StepRow row;
        row.step = step;
        row.loss1 = lg1.loss;
        row.loss2 = lg2.loss;
        row.cosine = safe_cosine(lg1.grad, lg2.grad);
        row.norm_g1 = norm(lg1.grad);
        row.norm_g2 = norm(lg2.grad);
        row.mu1 = dec.mu[0];
        row.degenerate = dec.degenerate;
        report.rows.push_back(row);

        axpy(-cfg.alpha, dec.update, model.params_mut());

        if (cfg.eval_every > 0 && (step + 1) % cfg.eval_every == 0) {
            const EvalResult src = evaluate(model, data.source_test);
            const EvalResult tgt = evaluate(model, data.target_test);
            report.evals.push_back({step, src.auc, tgt.auc});
        }
    }

    const EvalResult src = evaluate(model, data.source_test);
    const EvalResult tgt = evaluate(model, data.target_test);
    report.auc_source = src.auc;
    report.auc_target = tgt.auc;
    report.mean_loss_source = src.mean_loss;
    report.mean_loss_target = tgt.mean_loss;
    report.oscillation_l1 = windowed_std(report.rows, cfg.log_window, false);
    report.oscillation_l2 = windowed_std(report.rows, cfg.log_window, true);

    return {std::move(model), std::move(report)};
}

EvalResult evaluate(const MlpModel& model, const Batch& test) {
    if (test.size() == 0) throw std::invalid_argument("evaluate: empty test set");
    const ForwardResult fwd = mlp_forward(model, test);
    const BceResult bce = bce_loss_and_grad(fwd.logits, test.labels);

    DenseVector scores(fwd.logits.size());
    for (std::size_t i = 0; i < scores.size(); ++i) scores[i] = sigmoid(fwd.logits[i]);
    return {auc(scores, test.labels), bce.loss};
}

std::vector<std::pair<Strategy, RunReport>> run_ablation_suite(const TrainConfig& base_cfg,
                                                               const BenchDatasets& data) {
    std::vector<std::pair<Strategy, RunReport>> out;
    out.reserve(kAllStrategies.size());
    for (Strategy s : kAllStrategies) {
        out.emplace_back(s, train(base_cfg, data, s).report);
    }
    return out;
}

ToyTrajectory run_toy_descent(const ToyLandscape& landscape, Strategy strategy, int steps,
                              double alpha, std::array<double, 2> theta0,
                              const UvsConfig& uvs_cfg, const CgrConfig& cgr_cfg) {
    ToyTrajectory traj;
    traj.rows.reserve(static_cast<std::size_t>(steps));

    double t1 = theta0[0];
    double t2 = theta0[1];
    std::optional<SimplexWeights> warm_mu;

    for (int step = 0; step < steps; ++step) {
        const auto a1 = landscape.grad1(t1, t2);
        const auto a2 = landscape.grad2(t1, t2);
        const GradientVector g1{a1[0], a1[1]};
        const GradientVector g2{a2[0], a2[1]};

        ToyRow row;
        row.step = step;
        row.theta1 = t1;
        row.theta2 = t2;
        row.loss1 = landscape.loss1(t1, t2);
        row.loss2 = landscape.loss2(t1, t2);
        row.cosine = safe_cosine(g1, g2);
        traj.rows.push_back(row);

        GradientVector update;
        switch (strategy) {
            case Strategy::OriginalOnly:
                update = g1;
                break;
            case Strategy::SynthOnly:
                update = g2;
                break;
            case Strategy::NaiveJoint:
                update = add(g1, g2);
                break;
            case Strategy::PcGrad:
                update = pcgrad_combine(g1, g2);
                break;
            case Strategy::UvsOnly: {
                const UvsSolution sol = uvs_step(g1, g2, uvs_cfg, warm_mu);
                if (uvs_cfg.warm_start) warm_mu = sol.mu_star;
                update = sol.v_star;
                break;
            }
            case Strategy::CgrOnly:
                update = cgr_gradient(g1, g2, cgr_cfg).grad;
                break;
            case Strategy::CsDfd: {
                // UVS replaces the summed gradient; the CGR correction term
                // (cgr gradient minus the plain sum) rides on top.
                const UvsSolution sol = uvs_step(g1, g2, uvs_cfg, warm_mu);
                if (uvs_cfg.warm_start) warm_mu = sol.mu_star;
                update = sol.v_star;
                const CgrResult cgr = cgr_gradient(g1, g2, cgr_cfg);
                axpy(1.0, sub(cgr.grad, add(g1, g2)), update);
                break;
            }
        }

        t1 -= alpha * update[0];
        t2 -= alpha * update[1];
    }

    traj.theta_final = {t1, t2};
    return traj;
}

}  // namespace csdfd
