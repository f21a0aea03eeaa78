#pragma once

#include "csdfd/bench.hpp"
#include "csdfd/trainer.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace csdfd {

// Full description of one experiment: dataset, training loop, strategy
// matrix, emit flags. Round-trips losslessly through the config file format.
struct ExperimentConfig {
    SynthBenchConfig bench;
    TrainConfig train;
    std::vector<Strategy> strategies{kAllStrategies.begin(), kAllStrategies.end()};
    bool emit_data = false;

    bool operator==(const ExperimentConfig&) const = default;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(message), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

// Strict key-value-with-sections parser: unknown sections or keys are
// rejected (naming the offender), as are unparsable values. When
// `require_explicit_physics` is set, the result-bearing values uvs.c,
// cgr.tau, train.alpha and bench.kappa must appear explicitly in the file;
// that is the contract for committed experiment configs, while built-in
// defaults exist only for ad-hoc CLI runs.
ExperimentConfig parse_experiment_config(const std::string& text,
                                         bool require_explicit_physics = true);

// Emits every field explicitly; parse(serialize(cfg)) == cfg.
std::string serialize_experiment_config(const ExperimentConfig& cfg);

}  // namespace csdfd
