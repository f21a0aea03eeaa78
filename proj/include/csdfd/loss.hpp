#pragma once

#include "csdfd/vec.hpp"

namespace csdfd {

// Probabilities entering the log are clamped to [kProbClamp, 1 - kProbClamp]
// so the loss stays finite at saturated logits.
inline constexpr double kProbClamp = 1e-7;

double sigmoid(double x);

struct BceResult {
    double loss = 0.0;
    DenseVector dloss_dlogits;
};

// Mean binary cross-entropy of logits against {0,1} labels. The gradient is
// the analytic derivative (p - y) / n of the unclamped mean log-likelihood;
// the clamp is a numerical guard on the loss value only.
// Throws std::invalid_argument on an empty batch, a length mismatch, or a
// label outside {0,1}.
BceResult bce_loss_and_grad(const DenseVector& logits, const DenseVector& labels);

}  // namespace csdfd
