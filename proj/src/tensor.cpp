#include "disc/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "disc/check.hpp"

namespace disc {

std::size_t Tensor::numel(const std::vector<std::size_t>& s) {
  std::size_t n = 1;
  for (std::size_t d : s) {
    DISC_CHECK(d > 0, "tensor dimensions must be positive");
    n *= d;
  }
  return n;
}

Tensor::Tensor(std::vector<std::size_t> s)
    : shape(std::move(s)), data(numel(shape), 0.0) {}

Tensor::Tensor(std::vector<std::size_t> s, std::vector<double> d)
    : shape(std::move(s)), data(std::move(d)) {
  DISC_CHECK(numel(shape) == data.size(),
             "tensor data length " << data.size()
                                   << " does not match shape product "
                                   << numel(shape));
}

void Tensor::fill(double v) { std::fill(data.begin(), data.end(), v); }

bool Tensor::all_finite() const {
  for (double v : data) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

Tensor zeros_like(const Tensor& t) { return Tensor(t.shape); }

void check_finite(const Tensor& t, const char* what) {
  DISC_CHECK(t.all_finite(), what << " produced a non-finite value");
}

}  // namespace disc
