#include "diskineq/norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "diskineq/errors.hpp"

namespace diskineq {

namespace {

void require_positive_exponent(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw OutOfRange("norm exponent must be > 0, got " + std::to_string(p));
}

double int_pow(double x, long k) {
  double result = 1.0;
  while (k != 0) {
    if (k & 1L) result *= x;
    x *= x;
    k >>= 1L;
  }
  return result;
}

}  // namespace

double pow_of_square(double square, double p) {
  const double half = 0.5 * p;
  const double whole = std::floor(half);
  const double frac = half - whole;
  if (whole > 64.0) return std::pow(square, half);
  const double base = int_pow(square, static_cast<long>(whole));
  if (frac == 0.0) return base;
  if (frac == 0.5) return base * std::sqrt(square);
  if (frac == 0.25) return base * std::sqrt(std::sqrt(square));
  if (frac == 0.75) {
    const double root = std::sqrt(square);
    return base * root * std::sqrt(root);
  }
  return std::pow(square, half);
}

AdaptiveOptions norm_options(const HarmonicFunction& f, double p, double tol) {
  AdaptiveOptions opts;
  opts.tol = tol;
  const long degree = f.polynomial_degree();
  if (degree >= 0) {
    const double integrand_degree = std::ceil(p) * static_cast<double>(degree);
    opts.n_start = pow2_at_least(static_cast<std::size_t>(integrand_degree) + 1, 16);
    opts.m_start = pow2_at_least(static_cast<std::size_t>(integrand_degree / 2.0) + 2, 8);
  } else if (const auto* fa = std::get_if<FaFamily>(&f.variant())) {
    // Resolve the boundary peak of width ~ (1 - a) from the start.
    const double width = 1.0 - fa->a;
    opts.n_start = pow2_at_least(static_cast<std::size_t>(std::min(4.0 / width, 4096.0)), 16);
    opts.m_start = pow2_at_least(static_cast<std::size_t>(std::min(1.0 / std::sqrt(width), 256.0)), 8);
  }
  opts.n_start = std::min(opts.n_start, opts.n_cap / 2);
  opts.m_start = std::min(opts.m_start, opts.m_cap / 2);
  return opts;
}

namespace {

bool use_piecewise(const HarmonicFunction& f, double p) {
  const double half = 0.5 * p;
  return half != std::floor(half) && f.polynomial_degree() >= 0 && is_real(f);
}

RealRingFunction real_values(const HarmonicFunction& f) {
  return [&f](double r, double theta) { return eval(f, std::polar(r, theta)).real(); };
}

}  // namespace

Estimate hardy_integral(const HarmonicFunction& f, double p, double tol) {
  require_positive_exponent(p);
  // A real f changes sign on the circle, where |f|^p is only finitely smooth.
  if (use_piecewise(f, p)) {
    return abs_power_ring_mean(real_values(f), 1.0, p, static_cast<std::size_t>(f.polynomial_degree()), tol);
  }
  std::vector<cplx> samples;
  CircleIntegrand integrand = [&](std::span<const cplx> nodes, std::span<double> values) {
    samples.resize(nodes.size());
    sample_ring(f, 1.0, nodes, samples);
    for (std::size_t k = 0; k < nodes.size(); ++k) values[k] = pow_of_square(std::norm(samples[k]), p);
  };
  try {
    return adaptive_circle(integrand, norm_options(f, p, tol));
  } catch (const NoConvergence&) {
    // Typically a boundary zero of a complex f; split at the minima of |f|.
    if (f.polynomial_degree() < 0) throw;
    const RealRingFunction modulus = [&f](double r, double theta) { return std::abs(eval(f, std::polar(r, theta))); };
    return abs_power_ring_mean(modulus, 1.0, p, static_cast<std::size_t>(f.polynomial_degree()), tol, true);
  }
}

Estimate bergman_integral(const HarmonicFunction& f, double p, double tol) {
  require_positive_exponent(p);
  if (use_piecewise(f, p)) {
    return abs_power_disk_mean(real_values(f), p, static_cast<std::size_t>(f.polynomial_degree()),
                               norm_options(f, p, tol));
  }
  std::vector<cplx> samples;
  RingIntegrand integrand = [&](double r, std::span<const cplx> nodes, std::span<double> values) {
    samples.resize(nodes.size());
    sample_ring(f, r, nodes, samples);
    for (std::size_t k = 0; k < nodes.size(); ++k) values[k] = pow_of_square(std::norm(samples[k]), p);
  };
  return adaptive_disk(integrand, norm_options(f, p, tol));
}

double root_error(double integral, double integral_err, double p) {
  if (integral > 0.0) return std::pow(integral, 1.0 / p) * integral_err / (p * integral);
  return std::pow(integral_err, 1.0 / p);
}

NormResult hardy_norm(const HarmonicFunction& f, double p, double tol) {
  const Estimate e = hardy_integral(f, p, tol);
  return NormResult{std::pow(e.value, 1.0 / p), p, Space::hardy, root_error(e.value, e.err_est, p), e.n, 0};
}

NormResult bergman_norm(const HarmonicFunction& f, double p, double tol) {
  const Estimate e = bergman_integral(f, p, tol);
  return NormResult{std::pow(e.value, 1.0 / p), p, Space::bergman, root_error(e.value, e.err_est, p), e.n,
                    e.m};
}

}  // namespace diskineq
