#pragma once

#include "csdfd/rng.hpp"
#include "csdfd/vec.hpp"

#include <cstdint>
#include <vector>

namespace csdfd {

enum class Activation { None, Tanh };
enum class Part { Backbone, Projection, Classifier };
enum class SubsetTag { XOriginal, XSynth };

struct Batch {
    Matrix inputs;       // n x d
    DenseVector labels;  // n entries, each exactly 0 or 1
    SubsetTag tag = SubsetTag::XOriginal;

    std::size_t size() const { return inputs.rows; }
};

struct LayerSpec {
    std::size_t in = 0;
    std::size_t out = 0;
    Activation act = Activation::None;
    Part part = Part::Backbone;
};

struct Range {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - begin; }
    bool contains(std::size_t i) const { return i >= begin && i < end; }
    bool operator==(const Range&) const = default;
};

struct ParamPartition {
    Range backbone;
    Range projection;
    Range classifier;
};

// Feed-forward affine stack over one flat parameter vector.
//
// Flat layout (frozen; gradient surgery and the serialized model depend on
// it): layers in declaration order; within a layer the weight matrix W
// (out x in, row-major) followed by the bias (out). Layers must be grouped
// Backbone, then Projection, then Classifier so each group is one
// contiguous slice of the flat vector.
class MlpModel {
public:
    explicit MlpModel(std::vector<LayerSpec> layers);

    std::size_t param_count() const { return params_.size(); }
    std::size_t input_dim() const { return layers_.front().in; }
    std::size_t layer_count() const { return layers_.size(); }
    const std::vector<LayerSpec>& layers() const { return layers_; }
    const ParamPartition& partition() const { return partition_; }

    const DenseVector& params() const { return params_; }
    DenseVector& params_mut();           // bumps revision
    void set_params(DenseVector p);      // bumps revision
    std::uint64_t revision() const { return revision_; }

    std::size_t weight_offset(std::size_t layer) const;
    std::size_t bias_offset(std::size_t layer) const;

    // Weights uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)], biases zero.
    // Draw order: layer by layer, weight rows in row-major order; biases
    // consume no draws.
    void init_params(Rng& rng);

private:
    std::vector<LayerSpec> layers_;
    std::vector<std::size_t> offsets_;  // flat offset of each layer's block
    ParamPartition partition_;
    DenseVector params_;
    std::uint64_t revision_ = 0;
};

struct ForwardCache {
    // activations[0] is the batch input; activations[l + 1] is layer l's
    // output after its activation.
    std::vector<Matrix> activations;
    std::uint64_t model_revision = 0;
    std::size_t batch_size = 0;
};

struct ForwardResult {
    DenseVector logits;  // one per batch row
    ForwardCache cache;
};

// Throws std::invalid_argument when the batch width does not match the model.
ForwardResult mlp_forward(const MlpModel& model, const Batch& batch);

// Flat gradient aligned with the model's parameter layout. Throws
// std::invalid_argument on a stale cache (model mutated since the forward
// pass) or a gradient length mismatch.
GradientVector mlp_backward(const MlpModel& model, const ForwardCache& cache,
                            const DenseVector& dloss_dlogits);

// Default architecture: backbone input->32->32 (tanh), projection 32->32->16
// (tanh), classifier 16->1 (linear logit).
MlpModel make_default_model(std::size_t input_dim = 16);

// Gather the components of `flat` covered by `ranges`, in range order.
DenseVector gather(const DenseVector& flat, const std::vector<Range>& ranges);
// Inverse of gather: write `packed` back into `flat` over `ranges`.
void scatter(const DenseVector& packed, const std::vector<Range>& ranges, DenseVector& flat);

}  // namespace csdfd
