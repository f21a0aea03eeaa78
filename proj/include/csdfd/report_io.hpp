#pragma once

#include "csdfd/config.hpp"
#include "csdfd/trainer.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace csdfd {

// 17-significant-digit formatting ('%.17g'): round-trips any double exactly
// and is locale-independent ('.' decimal separator). Every float written to a
// CSV goes through this.
std::string format_double(double v);

// log.csv: step,loss1,loss2,cosine,norm_g1,norm_g2,mu1,degenerate
std::string run_report_csv(const RunReport& report);

// trajectory.csv: step,theta1,theta2,loss1,loss2,cosine
std::string trajectory_csv(const ToyTrajectory& traj);

// summary.csv / ablation.csv: one row per strategy.
std::string summary_csv(const std::vector<std::pair<Strategy, RunReport>>& results);

// metrics.json: config echo, PRNG algorithm id, library version, per-strategy
// final metrics. Deterministic content for identical inputs.
std::string metrics_json(const ExperimentConfig& cfg,
                         const std::vector<std::pair<Strategy, RunReport>>& results);

// Binary-mode write ('\n' line endings preserved verbatim).
void write_file(const std::filesystem::path& path, const std::string& contents);

// Runs a toy descent and writes trajectory.csv rows to `out`.
ToyTrajectory trajectory_dump(const ToyLandscape& landscape, Strategy strategy, int steps,
                              double alpha, std::array<double, 2> theta0,
                              const UvsConfig& uvs_cfg, const CgrConfig& cgr_cfg,
                              const std::filesystem::path& out);

// Mean of StepRow.cosine over the final `window` rows.
double mean_cosine_window(const RunReport& report, int window);

}  // namespace csdfd
