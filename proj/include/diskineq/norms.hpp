#pragma once

// Hardy-space and Bergman-space norms with a-posteriori error estimates.

#include <cstddef>

#include "diskineq/quad.hpp"
#include "diskineq/repr.hpp"

namespace diskineq {

enum class Space { hardy, bergman };

struct NormResult {
  double value = 0.0;
  double p = 0.0;
  Space space = Space::hardy;
  double err_est = 0.0;
  std::size_t n = 0;
  std::size_t m = 0;
};

/// (x^2)^{p/2} for x^2 >= 0, with exact fast paths for integer and
/// half-integer p/2.
double pow_of_square(double square, double p);

/// Integral of |f|^p over the circle (normalized), evaluated at r = 1.
Estimate hardy_integral(const HarmonicFunction& f, double p, double tol = kDefaultTol);
/// Integral of |f|^p over the disk (normalized area measure).
Estimate bergman_integral(const HarmonicFunction& f, double p, double tol = kDefaultTol);

/// ||f||_{h^p}: boundary p-mean at r = 1 (the sup over r for this class).
NormResult hardy_norm(const HarmonicFunction& f, double p, double tol = kDefaultTol);
/// ||f||_{b^p} with respect to the normalized area measure.
NormResult bergman_norm(const HarmonicFunction& f, double p, double tol = kDefaultTol);

/// Error of I^{1/p} given the error of I.
double root_error(double integral, double integral_err, double p);

/// Starting sizes for |f|^p: exact from the first level when p is even and
/// f is a polynomial.
AdaptiveOptions norm_options(const HarmonicFunction& f, double p, double tol);

}  // namespace diskineq
