#include "disc/optimizer.hpp"

#include <cmath>

#include "disc/check.hpp"

namespace disc {

OptimizerState OptimizerState::create(const std::vector<Tensor>& params,
                                      double lr, double momentum,
                                      double weight_decay) {
  DISC_CHECK(lr >= 0.0, "learning rate must be non-negative");
  DISC_CHECK(momentum >= 0.0 && momentum < 1.0, "momentum must be in [0,1)");
  DISC_CHECK(weight_decay >= 0.0, "weight decay must be non-negative");
  OptimizerState s;
  s.learning_rate = lr;
  s.momentum = momentum;
  s.weight_decay = weight_decay;
  s.velocity.reserve(params.size());
  for (const Tensor& p : params) s.velocity.emplace_back(p.shape);
  return s;
}

void sgd_momentum_step(std::vector<Tensor>& params,
                       const std::vector<Tensor>& grads,
                       OptimizerState& state) {
  DISC_CHECK(params.size() == grads.size() &&
                 params.size() == state.velocity.size(),
             "sgd_momentum_step: parameter/gradient count mismatch");
  for (std::size_t t = 0; t < params.size(); ++t) {
    Tensor& p = params[t];
    const Tensor& g = grads[t];
    Tensor& v = state.velocity[t];
    DISC_CHECK(p.same_shape(g) && p.same_shape(v),
               "sgd_momentum_step: shape mismatch at tensor " << t);
    for (std::size_t i = 0; i < p.size(); ++i) {
      DISC_CHECK(std::isfinite(g[i]),
                 "sgd_momentum_step: non-finite gradient in tensor " << t);
      v[i] = state.momentum * v[i] -
             state.learning_rate * (g[i] + state.weight_decay * p[i]);
      p[i] += v[i];
    }
  }
}

}  // namespace disc
