#pragma once

// Derivative-free minimization on R^n.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace diskineq {

struct NelderMeadOptions {
  double initial_step = 0.25;
  double f_tol = 1e-10;       // stop when the simplex values spread less than this
  double x_tol = 1e-8;        // ... and the simplex diameter is below this
  std::size_t max_evaluations = 4000;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Standard coefficients (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2). Non-finite objective values are treated as +inf.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, const NelderMeadOptions& opts = {});

}  // namespace diskineq
