#pragma once

#include <functional>
#include <vector>

namespace specpert {

/// Upper regularized incomplete gamma Q(a, x).
double gamma_q(double a, double x);

/// Survival function of the chi-square distribution with k degrees of freedom.
double chi2_sf(double x, int dof);

/// Least-squares slope/intercept of y against x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Runs fn(i) for i in [0, n) on `threads` workers; any index order, so fn
/// must only touch its own slot.
void parallel_for_index(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace specpert
