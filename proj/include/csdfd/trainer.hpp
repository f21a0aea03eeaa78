#pragma once

#include "csdfd/bench.hpp"
#include "csdfd/cgr.hpp"
#include "csdfd/landscape.hpp"
#include "csdfd/mlp.hpp"
#include "csdfd/uvs.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace csdfd {

enum class Strategy {
    OriginalOnly,
    SynthOnly,
    NaiveJoint,
    PcGrad,
    UvsOnly,
    CgrOnly,
    CsDfd,
};

inline constexpr std::array<Strategy, 7> kAllStrategies = {
    Strategy::OriginalOnly, Strategy::SynthOnly, Strategy::NaiveJoint, Strategy::PcGrad,
    Strategy::UvsOnly,      Strategy::CgrOnly,   Strategy::CsDfd,
};

std::string_view strategy_name(Strategy s);
// Throws std::invalid_argument on an unknown name.
Strategy parse_strategy(std::string_view name);

struct TrainConfig {
    double alpha = 0.01;
    int steps = 2000;
    std::size_t batch_size = 32;  // per subset per step
    UvsConfig uvs;
    CgrConfig cgr;
    std::uint64_t seed = 42;
    int eval_every = 0;  // 0 disables periodic evaluation
    int log_window = 100;

    bool operator==(const TrainConfig&) const = default;
};

// StepRow.degenerate bit flags.
inline constexpr unsigned kDegenerateZeroG0 = 1u;
inline constexpr unsigned kDegenerateZeroGw = 2u;
inline constexpr unsigned kDegenerateCgrSkip = 4u;

struct StepRow {
    int step = 0;
    double loss1 = 0.0;
    double loss2 = 0.0;
    double cosine = 0.0;  // cos(g1, g2) over the full flat gradients
    double norm_g1 = 0.0;
    double norm_g2 = 0.0;
    double mu1 = 0.5;  // 0.5 for strategies that do not run the dual solve
    unsigned degenerate = 0;
};

struct EvalPoint {
    int step = 0;
    double auc_source = 0.0;
    double auc_target = 0.0;
};

struct RunReport {
    std::vector<StepRow> rows;
    double auc_source = 0.0;
    double auc_target = 0.0;
    double mean_loss_source = 0.0;
    double mean_loss_target = 0.0;
    // Sample standard deviation of the per-step losses over the final
    // min(log_window, steps) rows.
    double oscillation_l1 = 0.0;
    double oscillation_l2 = 0.0;
    std::vector<EvalPoint> evals;
    TrainConfig config;
    Strategy strategy = Strategy::NaiveJoint;
};

// Thrown when a step produces a non-finite loss.
class TrainDivergedError : public std::runtime_error {
public:
    TrainDivergedError(int step, double loss1, double loss2);
    int step() const { return step_; }
    double loss1() const { return loss1_; }
    double loss2() const { return loss2_; }

private:
    int step_;
    double loss1_;
    double loss2_;
};

// One strategy application: per-subset flat gradients in, applied update out.
// Exposed so tests can check the per-partition update rules in isolation.
struct UpdateDecision {
    GradientVector update;
    SimplexWeights mu{{0.5, 0.5}};
    unsigned degenerate = 0;
    bool used_uvs = false;
};

UpdateDecision compute_update(const ParamPartition& partition, const GradientVector& g1,
                              const GradientVector& g2, Strategy strategy,
                              const UvsConfig& uvs_cfg, const CgrConfig& cgr_cfg,
                              const std::optional<SimplexWeights>& warm_mu);

struct TrainResult {
    MlpModel model;
    RunReport report;
};

// Dual-stream training loop: each step draws one batch from each subset,
// computes both losses and flat gradients, applies the strategy's update with
// plain gradient descent, and logs one row. Batch sampling for the two
// subsets uses independent seeded streams so dropping one subset does not
// perturb the other's draws.
TrainResult train(const TrainConfig& cfg, const BenchDatasets& data, Strategy strategy);

struct EvalResult {
    double auc = 0.0;
    double mean_loss = 0.0;
};

// Sigmoid scores + AUC + mean loss on a held-out batch. Throws on a
// single-class test set.
EvalResult evaluate(const MlpModel& model, const Batch& test);

// All seven strategies from identical seeds.
std::vector<std::pair<Strategy, RunReport>> run_ablation_suite(const TrainConfig& base_cfg,
                                                               const BenchDatasets& data);

// --- Toy-landscape descent -------------------------------------------------

struct ToyRow {
    int step = 0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double loss1 = 0.0;
    double loss2 = 0.0;
    double cosine = 0.0;
};

struct ToyTrajectory {
    std::vector<ToyRow> rows;
    std::array<double, 2> theta_final{0.0, 0.0};
};

// Same strategy matrix on a 2-D closed-form landscape. The whole 2-D state
// plays the projection partition for CGR, and CsDfd composes the UVS update
// vector with the CGR correction term on it.
ToyTrajectory run_toy_descent(const ToyLandscape& landscape, Strategy strategy, int steps,
                              double alpha, std::array<double, 2> theta0,
                              const UvsConfig& uvs_cfg, const CgrConfig& cgr_cfg);

}  // namespace csdfd
