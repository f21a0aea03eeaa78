#include "csdfd/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace csdfd {

double sigmoid(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

BceResult bce_loss_and_grad(const DenseVector& logits, const DenseVector& labels) {
    if (logits.empty()) throw std::invalid_argument("empty batch");
    require_same_length(logits, labels, "bce_loss_and_grad");

    const double n = static_cast<double>(logits.size());
    BceResult out;
    out.dloss_dlogits.resize(logits.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        const double y = labels[i];
        if (y != 0.0 && y != 1.0) {
            throw std::invalid_argument("bce_loss_and_grad: label not in {0,1}");
        }
        const double p = sigmoid(logits[i]);
        const double pc = std::clamp(p, kProbClamp, 1.0 - kProbClamp);
        acc -= y * std::log(pc) + (1.0 - y) * std::log(1.0 - pc);
        out.dloss_dlogits[i] = (p - y) / n;
    }
    out.loss = acc / n;
    return out;
}

}  // namespace csdfd
