#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace disc {

struct GradCheckReport {
  double max_rel_error = 0.0;
  std::size_t worst_index = 0;
  double analytic_at_worst = 0.0;
  double numeric_at_worst = 0.0;
  bool passed = false;
};

// Central-difference check of an analytic gradient against a scalar-valued
// function f. Relative error per coordinate is |a - n| / max(|a|, |n|, 1e-8).
GradCheckReport grad_check(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x, const std::vector<double>& analytic_grad,
    double epsilon, double tolerance);

}  // namespace disc
