#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace disc {

// Dense N-dimensional array of doubles, flat row-major storage.
// Convention for feature maps is C x H x W; 2-D maps are H x W.
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> s);
  Tensor(std::vector<std::size_t> s, std::vector<double> d);

  static std::size_t numel(const std::vector<std::size_t>& s);

  std::size_t size() const { return data.size(); }
  std::size_t dim(std::size_t i) const { return shape[i]; }
  std::size_t rank() const { return shape.size(); }

  double& operator[](std::size_t i) { return data[i]; }
  double operator[](std::size_t i) const { return data[i]; }

  // c,h,w access for rank-3 tensors; h,w for rank-2.
  double& at(std::size_t c, std::size_t y, std::size_t x) {
    return data[(c * shape[1] + y) * shape[2] + x];
  }
  double at(std::size_t c, std::size_t y, std::size_t x) const {
    return data[(c * shape[1] + y) * shape[2] + x];
  }
  double& at(std::size_t y, std::size_t x) { return data[y * shape[1] + x]; }
  double at(std::size_t y, std::size_t x) const { return data[y * shape[1] + x]; }

  bool same_shape(const Tensor& other) const { return shape == other.shape; }

  void fill(double v);
  bool all_finite() const;
};

Tensor zeros_like(const Tensor& t);

// Throws disc::Error if any entry is NaN/Inf; `what` names the producing op.
void check_finite(const Tensor& t, const char* what);

// Gradients a layer hands back: one tensor for the input, one per parameter
// tensor in the layer's parameter order.
struct LayerGrads {
  Tensor input_grad;
  std::vector<Tensor> param_grads;
};

}  // namespace disc
