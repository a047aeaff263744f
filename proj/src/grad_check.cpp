#include "disc/grad_check.hpp"

#include <algorithm>
#include <cmath>

#include "disc/check.hpp"

namespace disc {

GradCheckReport grad_check(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x, const std::vector<double>& analytic_grad,
    double epsilon, double tolerance) {
  DISC_CHECK(x.size() == analytic_grad.size(),
             "grad_check: gradient length mismatch");
  DISC_CHECK(epsilon > 0.0, "grad_check: epsilon must be positive");

  GradCheckReport report;
  std::vector<double> probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + epsilon;
    const double f_plus = f(probe);
    probe[i] = x[i] - epsilon;
    const double f_minus = f(probe);
    probe[i] = x[i];

    const double numeric = (f_plus - f_minus) / (2.0 * epsilon);
    const double analytic = analytic_grad[i];
    const double rel = std::abs(analytic - numeric) /
                       std::max({std::abs(analytic), std::abs(numeric), 1e-8});
    if (rel > report.max_rel_error) {
      report.max_rel_error = rel;
      report.worst_index = i;
      report.analytic_at_worst = analytic;
      report.numeric_at_worst = numeric;
    }
  }
  report.passed = report.max_rel_error < tolerance;
  return report;
}

}  // namespace disc
