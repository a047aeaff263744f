#pragma once

#include <cstddef>
#include <vector>

#include "disc/tensor.hpp"

namespace disc {

// Spatial size of a convolution/pooling output along one axis.
std::size_t conv_out_size(std::size_t in, std::size_t kernel, std::size_t stride,
                          std::size_t pad);

// Cross-correlation of a C x H x W input with K filters of shape C x kh x kw,
// zero padding, plus a per-output-channel bias. Output is K x H' x W'.
Tensor conv2d_forward(const Tensor& input, const Tensor& weights,
                      const Tensor& bias, int stride, int pad);

// Exact adjoint of conv2d_forward. param_grads = {weight_grad, bias_grad}.
LayerGrads conv2d_backward(const Tensor& input, const Tensor& weights,
                           int stride, int pad, const Tensor& output_grad);

Tensor relu_forward(const Tensor& x);
// Masks the incoming gradient where x <= 0 (subgradient 0 at the kink).
Tensor relu_backward(const Tensor& x, const Tensor& output_grad);

struct MaxPoolResult {
  Tensor output;
  // Flat index into the input tensor of each output's argmax, lowest flat
  // index on ties so repeated runs pick identical positions.
  std::vector<std::size_t> argmax;
};

MaxPoolResult maxpool_forward(const Tensor& x, int kernel, int stride);
Tensor maxpool_backward(const std::vector<std::size_t>& argmax,
                        const Tensor& output_grad,
                        const std::vector<std::size_t>& input_shape);

// Cross-channel response normalization:
//   y_c = x_c / (k + alpha * sum_{c' in window(c,n)} x_{c'}^2)^beta
struct LrnParams {
  int n = 5;
  double k = 2.0;
  double alpha = 1e-4;
  double beta = 0.75;
};

Tensor lrn_forward(const Tensor& x, const LrnParams& p);
Tensor lrn_backward(const Tensor& x, const LrnParams& p,
                    const Tensor& output_grad);

// y = W x + b with W of shape M x D, x flattened to length D.
Tensor fully_connected_forward(const Tensor& x, const Tensor& weights,
                               const Tensor& bias);
LayerGrads fully_connected_backward(const Tensor& x, const Tensor& weights,
                                    const Tensor& output_grad);

// Bilinear resampling of a C x H x W (or H x W) tensor, align-corners-false.
Tensor bilinear_resize(const Tensor& x, std::size_t out_h, std::size_t out_w);

}  // namespace disc
