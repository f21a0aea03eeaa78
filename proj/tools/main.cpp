// csdfd: dual-stream training with gradient-conflict suppression.
//
// Subcommands:
//   bench   generate the synthetic benchmark and run the strategy matrix
//   toy     run one strategy on a closed-form 2-D landscape
//   verify  run the numerical oracle suites
//   ablate  run all seven strategies and emit the comparison table
//
// Exit codes: 0 success, 1 check/run failure, 2 usage or config error.

#include "csdfd/bench.hpp"
#include "csdfd/config.hpp"
#include "csdfd/report_io.hpp"
#include "csdfd/trainer.hpp"
#include "csdfd/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace csdfd;

namespace {

ExperimentConfig load_config(const std::string& config_path, std::optional<std::uint64_t> seed,
                             const std::string& strategy) {
    ExperimentConfig cfg;
    if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) throw ConfigError(config_path, "cannot open config file '" + config_path + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        cfg = parse_experiment_config(ss.str(), /*require_explicit_physics=*/true);
    }
    if (seed.has_value()) {
        cfg.bench.seed = *seed;
        cfg.train.seed = *seed;
    }
    if (!strategy.empty()) {
        cfg.strategies = {parse_strategy(strategy)};
    }
    return cfg;
}

std::vector<std::pair<Strategy, RunReport>> run_matrix(const ExperimentConfig& cfg,
                                                       const BenchDatasets& data) {
    std::vector<std::pair<Strategy, RunReport>> results;
    for (Strategy s : cfg.strategies) {
        std::cerr << "running " << strategy_name(s) << " (" << cfg.train.steps << " steps)\n";
        results.emplace_back(s, train(cfg.train, data, s).report);
    }
    return results;
}

void write_run_logs(const fs::path& out_dir,
                    const std::vector<std::pair<Strategy, RunReport>>& results) {
    for (const auto& [strategy, report] : results) {
        const fs::path dir = out_dir / "runs" / std::string(strategy_name(strategy));
        fs::create_directories(dir);
        write_file(dir / "log.csv", run_report_csv(report));
    }
}

void print_summary(const std::vector<std::pair<Strategy, RunReport>>& results) {
    std::printf("%-14s %11s %11s %14s %10s %10s\n", "strategy", "auc_source", "auc_target",
                "cosine_window", "std_l1", "std_l2");
    for (const auto& [strategy, report] : results) {
        std::printf("%-14s %11.4f %11.4f %14.4f %10.5f %10.5f\n",
                    std::string(strategy_name(strategy)).c_str(), report.auc_source,
                    report.auc_target, mean_cosine_window(report, report.config.log_window),
                    report.oscillation_l1, report.oscillation_l2);
    }
}

int cmd_bench(const ExperimentConfig& cfg, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    const BenchDatasets data = gen_synth_bench(cfg.bench);
    if (cfg.emit_data) save_datasets(data, cfg.bench, out_dir / "bench_data");

    const auto results = run_matrix(cfg, data);
    write_run_logs(out_dir, results);
    write_file(out_dir / "summary.csv", summary_csv(results));
    write_file(out_dir / "metrics.json", metrics_json(cfg, results));
    print_summary(results);
    return 0;
}

int cmd_toy(const std::string& landscape_arg, const std::string& strategy_arg,
            const ExperimentConfig& cfg, const fs::path& out_dir) {
    const LandscapeId id = parse_landscape(landscape_arg);
    const Strategy strategy = parse_strategy(strategy_arg);
    fs::create_directories(out_dir);

    // Step size is small enough that 500 steps do not fully collapse into the
    // shared minimum; the final window then still separates the strategies.
    constexpr int kToySteps = 500;
    constexpr double kToyAlpha = 0.001;
    constexpr std::array<double, 2> kToyStart{0.5, 0.5};

    const ToyLandscape landscape = make_toy_landscape(id);
    const ToyTrajectory traj =
        trajectory_dump(landscape, strategy, kToySteps, kToyAlpha, kToyStart, cfg.train.uvs,
                        cfg.train.cgr, out_dir / "trajectory.csv");

    const ToyRow& last = traj.rows.back();
    std::printf("%s %s: theta=(%.6f, %.6f) loss1=%.6f loss2=%.6f cosine=%.4f\n",
                std::string(landscape_name(id)).c_str(),
                std::string(strategy_name(strategy)).c_str(), traj.theta_final[0],
                traj.theta_final[1], last.loss1, last.loss2, last.cosine);
    return 0;
}

int cmd_verify(const std::string& level) {
    const bool full = level == "full";
    const auto checks = run_verification(full);
    bool all_pass = true;
    for (const CheckResult& c : checks) {
        std::printf("%s  %-32s worst=%.3e  %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                    c.worst, c.detail.c_str());
        all_pass = all_pass && c.pass;
    }
    return all_pass ? 0 : 1;
}

int cmd_ablate(ExperimentConfig cfg, const fs::path& out_dir) {
    cfg.strategies.assign(kAllStrategies.begin(), kAllStrategies.end());
    fs::create_directories(out_dir);
    const BenchDatasets data = gen_synth_bench(cfg.bench);

    const auto results = run_matrix(cfg, data);
    write_run_logs(out_dir, results);
    write_file(out_dir / "ablation.csv", summary_csv(results));
    write_file(out_dir / "metrics.json", metrics_json(cfg, results));
    print_summary(results);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gradient-conflict-suppressed dual-stream training harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::string strategy;
    std::optional<std::uint64_t> seed;

    auto add_common = [&](CLI::App* sub, bool with_strategy) {
        sub->add_option("--config", config_path, "experiment config file");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "override the config seeds");
        if (with_strategy) sub->add_option("--strategy", strategy, "restrict to one strategy");
    };

    CLI::App* bench = app.add_subcommand("bench", "run the synthetic benchmark strategy matrix");
    add_common(bench, true);

    std::string toy_landscape;
    std::string toy_strategy;
    CLI::App* toy = app.add_subcommand("toy", "run one strategy on a 2-D toy landscape");
    toy->add_option("landscape", toy_landscape, "SplitQuadratic or BananaPair")->required();
    toy->add_option("strategy", toy_strategy, "update strategy")->required();
    add_common(toy, false);

    std::string verify_level = "fast";
    CLI::App* verify = app.add_subcommand("verify", "run the numerical oracle suites");
    verify->add_option("level", verify_level, "fast or full")
        ->check(CLI::IsMember({"fast", "full"}));

    CLI::App* ablate = app.add_subcommand("ablate", "run all seven strategies and compare");
    add_common(ablate, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (bench->parsed()) return cmd_bench(load_config(config_path, seed, strategy), out_dir);
        if (toy->parsed()) {
            return cmd_toy(toy_landscape, toy_strategy, load_config(config_path, seed, ""), out_dir);
        }
        if (verify->parsed()) return cmd_verify(verify_level);
        if (ablate->parsed()) return cmd_ablate(load_config(config_path, seed, ""), out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
