#include "csdfd/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace csdfd {

namespace {

std::size_t layer_param_count(const LayerSpec& spec) {
    return spec.in * spec.out + spec.out;
}

int part_rank(Part p) {
    switch (p) {
        case Part::Backbone: return 0;
        case Part::Projection: return 1;
        case Part::Classifier: return 2;
    }
    return 3;
}

}  // namespace

MlpModel::MlpModel(std::vector<LayerSpec> layers) : layers_(std::move(layers)) {
    if (layers_.empty()) throw std::invalid_argument("MlpModel: no layers");
    if (layers_.back().out != 1) throw std::invalid_argument("MlpModel: final layer must emit one logit");

    std::size_t offset = 0;
    int rank = 0;
    Range sections[3];
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const LayerSpec& spec = layers_[l];
        if (spec.in == 0 || spec.out == 0) throw std::invalid_argument("MlpModel: empty layer");
        if (l > 0 && layers_[l - 1].out != spec.in) {
            throw std::invalid_argument("MlpModel: layer width mismatch");
        }
        const int r = part_rank(spec.part);
        if (r < rank) throw std::invalid_argument("MlpModel: parts must be ordered backbone, projection, classifier");
        if (r > rank) {
            for (int k = rank + 1; k <= r; ++k) sections[k].begin = sections[k].end = offset;
            rank = r;
        }
        offsets_.push_back(offset);
        offset += layer_param_count(spec);
        sections[r].end = offset;
    }
    for (int k = rank + 1; k < 3; ++k) sections[k].begin = sections[k].end = offset;

    partition_.backbone = sections[0];
    partition_.projection = sections[1];
    partition_.classifier = sections[2];
    params_.assign(offset, 0.0);
}

DenseVector& MlpModel::params_mut() {
    ++revision_;
    return params_;
}

void MlpModel::set_params(DenseVector p) {
    if (p.size() != params_.size()) throw std::invalid_argument("set_params: size mismatch");
    params_ = std::move(p);
    ++revision_;
}

std::size_t MlpModel::weight_offset(std::size_t layer) const { return offsets_.at(layer); }

std::size_t MlpModel::bias_offset(std::size_t layer) const {
    const LayerSpec& spec = layers_.at(layer);
    return offsets_.at(layer) + spec.in * spec.out;
}

void MlpModel::init_params(Rng& rng) {
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const LayerSpec& spec = layers_[l];
        const double bound = 1.0 / std::sqrt(static_cast<double>(spec.in));
        double* w = params_.data() + weight_offset(l);
        for (std::size_t i = 0; i < spec.in * spec.out; ++i) w[i] = rng.uniform(-bound, bound);
        double* b = params_.data() + bias_offset(l);
        for (std::size_t i = 0; i < spec.out; ++i) b[i] = 0.0;
    }
    ++revision_;
}

ForwardResult mlp_forward(const MlpModel& model, const Batch& batch) {
    if (batch.inputs.cols != model.input_dim()) {
        throw std::invalid_argument("mlp_forward: batch width does not match model input");
    }
    const std::size_t n = batch.inputs.rows;

    ForwardResult out;
    out.cache.activations.reserve(model.layer_count() + 1);
    out.cache.activations.push_back(batch.inputs);
    out.cache.model_revision = model.revision();
    out.cache.batch_size = n;

    const DenseVector& p = model.params();
    for (std::size_t l = 0; l < model.layer_count(); ++l) {
        const LayerSpec& spec = model.layers()[l];
        const Matrix& a_prev = out.cache.activations.back();
        const double* w = p.data() + model.weight_offset(l);
        const double* b = p.data() + model.bias_offset(l);

        Matrix a(n, spec.out);
        for (std::size_t r = 0; r < n; ++r) {
            const double* x = a_prev.data.data() + r * spec.in;
            double* y = a.data.data() + r * spec.out;
            for (std::size_t o = 0; o < spec.out; ++o) {
                const double* wrow = w + o * spec.in;
                double z = b[o];
                for (std::size_t i = 0; i < spec.in; ++i) z += wrow[i] * x[i];
                y[o] = (spec.act == Activation::Tanh) ? std::tanh(z) : z;
            }
        }
        out.cache.activations.push_back(std::move(a));
    }

    const Matrix& last = out.cache.activations.back();
    out.logits.resize(n);
    for (std::size_t r = 0; r < n; ++r) out.logits[r] = last.at(r, 0);
    return out;
}

GradientVector mlp_backward(const MlpModel& model, const ForwardCache& cache,
                            const DenseVector& dloss_dlogits) {
    if (cache.model_revision != model.revision()) {
        throw std::invalid_argument("mlp_backward: stale cache");
    }
    if (dloss_dlogits.size() != cache.batch_size) {
        throw std::invalid_argument("mlp_backward: upstream gradient length mismatch");
    }
    const std::size_t n = cache.batch_size;

    GradientVector grad(model.param_count(), 0.0);
    const DenseVector& p = model.params();

    // delta = dL/d(activation of current layer), starting from the logits.
    Matrix delta(n, 1);
    for (std::size_t r = 0; r < n; ++r) delta.at(r, 0) = dloss_dlogits[r];

    for (std::size_t l = model.layer_count(); l-- > 0;) {
        const LayerSpec& spec = model.layers()[l];
        const Matrix& a_out = cache.activations[l + 1];
        const Matrix& a_prev = cache.activations[l];

        // Through the activation: tanh'(z) = 1 - tanh(z)^2 = 1 - a^2.
        if (spec.act == Activation::Tanh) {
            for (std::size_t r = 0; r < n; ++r) {
                for (std::size_t o = 0; o < spec.out; ++o) {
                    const double a = a_out.at(r, o);
                    delta.at(r, o) *= 1.0 - a * a;
                }
            }
        }

        double* dw = grad.data() + model.weight_offset(l);
        double* db = grad.data() + model.bias_offset(l);
        for (std::size_t r = 0; r < n; ++r) {
            const double* x = a_prev.data.data() + r * spec.in;
            const double* d = delta.data.data() + r * spec.out;
            for (std::size_t o = 0; o < spec.out; ++o) {
                double* dwrow = dw + o * spec.in;
                const double dz = d[o];
                for (std::size_t i = 0; i < spec.in; ++i) dwrow[i] += dz * x[i];
                db[o] += dz;
            }
        }

        if (l == 0) break;
        const double* w = p.data() + model.weight_offset(l);
        Matrix delta_prev(n, spec.in, 0.0);
        for (std::size_t r = 0; r < n; ++r) {
            const double* d = delta.data.data() + r * spec.out;
            double* dp = delta_prev.data.data() + r * spec.in;
            for (std::size_t o = 0; o < spec.out; ++o) {
                const double* wrow = w + o * spec.in;
                const double dz = d[o];
                for (std::size_t i = 0; i < spec.in; ++i) dp[i] += dz * wrow[i];
            }
        }
        delta = std::move(delta_prev);
    }
    return grad;
}

MlpModel make_default_model(std::size_t input_dim) {
    return MlpModel({
        {input_dim, 32, Activation::Tanh, Part::Backbone},
        {32, 32, Activation::Tanh, Part::Backbone},
        {32, 32, Activation::Tanh, Part::Projection},
        {32, 16, Activation::Tanh, Part::Projection},
        {16, 1, Activation::None, Part::Classifier},
    });
}

DenseVector gather(const DenseVector& flat, const std::vector<Range>& ranges) {
    std::size_t total = 0;
    for (const Range& r : ranges) total += r.size();
    DenseVector out;
    out.reserve(total);
    for (const Range& r : ranges) {
        out.insert(out.end(), flat.begin() + static_cast<std::ptrdiff_t>(r.begin),
                   flat.begin() + static_cast<std::ptrdiff_t>(r.end));
    }
    return out;
}

void scatter(const DenseVector& packed, const std::vector<Range>& ranges, DenseVector& flat) {
    std::size_t pos = 0;
    for (const Range& r : ranges) {
        for (std::size_t i = r.begin; i < r.end; ++i) flat[i] = packed[pos++];
    }
    if (pos != packed.size()) throw std::invalid_argument("scatter: size mismatch");
}

}  // namespace csdfd
