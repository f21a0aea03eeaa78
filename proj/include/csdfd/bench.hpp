#pragma once

#include "csdfd/mlp.hpp"
#include "csdfd/vec.hpp"

#include <cstdint>
#include <filesystem>

namespace csdfd {

// Planted artifact amplitudes. Feature 0 is the shared cue carrying opposite
// label correlation across the two training subsets; that single dimension is
// what manufactures the gradient conflict.
inline constexpr double kMethodOffset = 0.3;  // features 1..4, original-style fakes
inline constexpr double kBlendOffset = 0.3;   // features 5..8, synthesized-style fakes
inline constexpr double kNovelOffset = 0.3;   // features 9..12, target-domain fakes

struct SynthBenchConfig {
    std::size_t dim = 16;
    std::size_t n_per_class = 512;
    double conflict_strength = 1.0;  // kappa in [0,1]: cue amplitude
    double noise_sigma = 0.25;
    std::uint64_t seed = 42;
    // Attenuation of the blending artifact in the target domain: target fakes
    // carry kBlendOffset * (1 - target_shift) on features 5..8, novel offsets
    // on 9..12, and no feature-0 cue.
    double target_shift = 0.5;

    void validate() const;  // throws std::invalid_argument
    bool operator==(const SynthBenchConfig&) const = default;
};

struct BenchDatasets {
    Batch subset_x;    // [real, original-style fakes]; the real rows are
    Batch subset_xp;   // shared verbatim with subset_xp
    Batch source_test;
    Batch target_test;
};

// Deterministic generation: identical config (including seed) yields
// byte-identical datasets.
BenchDatasets gen_synth_bench(const SynthBenchConfig& cfg);

// Mann-Whitney AUC with ties counting 1/2. Throws std::invalid_argument when
// labels contain fewer than two classes or lengths mismatch.
double auc(const DenseVector& scores, const DenseVector& labels);

// Column-major float64 binary dump with a JSON sidecar describing shapes,
// byte offsets, seed and generator. Writes <stem>.bin and <stem>.json.
void save_datasets(const BenchDatasets& data, const SynthBenchConfig& cfg,
                   const std::filesystem::path& stem);
BenchDatasets load_datasets(const std::filesystem::path& stem);

}  // namespace csdfd
