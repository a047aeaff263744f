#pragma once

#include <vector>

#include "disc/tensor.hpp"

namespace disc {

// SGD with classic momentum. Weight decay is folded into the gradient
// (v <- m*v - lr*(g + wd*p); p <- p + v), never applied as a separate
// decoupled step.
struct OptimizerState {
  std::vector<Tensor> velocity;
  double learning_rate = 0.0;
  double momentum = 0.9;
  double weight_decay = 0.0;

  static OptimizerState create(const std::vector<Tensor>& params, double lr,
                               double momentum, double weight_decay);
};

void sgd_momentum_step(std::vector<Tensor>& params,
                       const std::vector<Tensor>& grads, OptimizerState& state);

}  // namespace disc
