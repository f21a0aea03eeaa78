#include "csdfd/report_io.hpp"

#include "csdfd/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace csdfd {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string run_report_csv(const RunReport& report) {
    std::string out = "step,loss1,loss2,cosine,norm_g1,norm_g2,mu1,degenerate\n";
    for (const StepRow& r : report.rows) {
        out += std::to_string(r.step);
        out += ',';
        out += format_double(r.loss1);
        out += ',';
        out += format_double(r.loss2);
        out += ',';
        out += format_double(r.cosine);
        out += ',';
        out += format_double(r.norm_g1);
        out += ',';
        out += format_double(r.norm_g2);
        out += ',';
        out += format_double(r.mu1);
        out += ',';
        out += std::to_string(r.degenerate);
        out += '\n';
    }
    return out;
}

std::string trajectory_csv(const ToyTrajectory& traj) {
    std::string out = "step,theta1,theta2,loss1,loss2,cosine\n";
    for (const ToyRow& r : traj.rows) {
        out += std::to_string(r.step);
        out += ',';
        out += format_double(r.theta1);
        out += ',';
        out += format_double(r.theta2);
        out += ',';
        out += format_double(r.loss1);
        out += ',';
        out += format_double(r.loss2);
        out += ',';
        out += format_double(r.cosine);
        out += '\n';
    }
    return out;
}

double mean_cosine_window(const RunReport& report, int window) {
    if (report.rows.empty()) return 0.0;
    const std::size_t w =
        std::min<std::size_t>(report.rows.size(), static_cast<std::size_t>(std::max(window, 1)));
    double acc = 0.0;
    for (std::size_t i = report.rows.size() - w; i < report.rows.size(); ++i) {
        acc += report.rows[i].cosine;
    }
    return acc / static_cast<double>(w);
}

std::string summary_csv(const std::vector<std::pair<Strategy, RunReport>>& results) {
    std::string out =
        "strategy,auc_source,auc_target,mean_loss_source,mean_loss_target,"
        "final_loss1,final_loss2,mean_cosine_window,std_l1_window,std_l2_window\n";
    for (const auto& [strategy, report] : results) {
        out += strategy_name(strategy);
        out += ',';
        out += format_double(report.auc_source);
        out += ',';
        out += format_double(report.auc_target);
        out += ',';
        out += format_double(report.mean_loss_source);
        out += ',';
        out += format_double(report.mean_loss_target);
        out += ',';
        out += format_double(report.rows.empty() ? 0.0 : report.rows.back().loss1);
        out += ',';
        out += format_double(report.rows.empty() ? 0.0 : report.rows.back().loss2);
        out += ',';
        out += format_double(mean_cosine_window(report, report.config.log_window));
        out += ',';
        out += format_double(report.oscillation_l1);
        out += ',';
        out += format_double(report.oscillation_l2);
        out += '\n';
    }
    return out;
}

std::string metrics_json(const ExperimentConfig& cfg,
                         const std::vector<std::pair<Strategy, RunReport>>& results) {
    nlohmann::json j;
    j["version"] = CSDFD_VERSION;
    j["prng_algorithm"] = std::string(Rng::kAlgorithmId);
    j["config"] = {
        {"bench",
         {{"dim", cfg.bench.dim},
          {"n_per_class", cfg.bench.n_per_class},
          {"kappa", cfg.bench.conflict_strength},
          {"noise_sigma", cfg.bench.noise_sigma},
          {"seed", cfg.bench.seed},
          {"target_shift", cfg.bench.target_shift}}},
        {"train",
         {{"alpha", cfg.train.alpha},
          {"steps", cfg.train.steps},
          {"batch_size", cfg.train.batch_size},
          {"seed", cfg.train.seed},
          {"eval_every", cfg.train.eval_every},
          {"log_window", cfg.train.log_window}}},
        {"uvs",
         {{"c", cfg.train.uvs.c},
          {"beta", cfg.train.uvs.beta},
          {"dual_iters", cfg.train.uvs.dual_iters},
          {"warm_start", cfg.train.uvs.warm_start}}},
        {"cgr", {{"tau", cfg.train.cgr.tau}}},
    };
    nlohmann::json per_strategy;
    for (const auto& [strategy, report] : results) {
        per_strategy[std::string(strategy_name(strategy))] = {
            {"auc_source", report.auc_source},
            {"auc_target", report.auc_target},
            {"mean_loss_source", report.mean_loss_source},
            {"mean_loss_target", report.mean_loss_target},
            {"mean_cosine_window", mean_cosine_window(report, report.config.log_window)},
            {"std_l1_window", report.oscillation_l1},
            {"std_l2_window", report.oscillation_l2},
        };
    }
    j["strategies"] = per_strategy;
    return j.dump(2) + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

ToyTrajectory trajectory_dump(const ToyLandscape& landscape, Strategy strategy, int steps,
                              double alpha, std::array<double, 2> theta0,
                              const UvsConfig& uvs_cfg, const CgrConfig& cgr_cfg,
                              const std::filesystem::path& out) {
    ToyTrajectory traj = run_toy_descent(landscape, strategy, steps, alpha, theta0, uvs_cfg, cgr_cfg);
    write_file(out, trajectory_csv(traj));
    return traj;
}

}  // namespace csdfd
