#include "diskineq/quad.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "diskineq/errors.hpp"

namespace diskineq {

namespace {

std::shared_ptr<const std::vector<cplx>> unit_roots(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const std::vector<cplx>>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    auto nodes = std::make_shared<std::vector<cplx>>(n);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) (*nodes)[k] = std::polar(1.0, step * static_cast<double>(k));
    slot = std::move(nodes);
  }
  return slot;
}

struct RadialRule {
  std::shared_ptr<const std::vector<double>> radii;
  std::shared_ptr<const std::vector<double>> weights;
};

RadialRule radial_rule(std::size_t m) {
  static std::mutex mutex;
  static std::map<std::size_t, RadialRule> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  const GaussLegendre& gl = gauss_legendre(m);
  auto radii = std::make_shared<std::vector<double>>(m);
  auto weights = std::make_shared<std::vector<double>>(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double r = 0.5 * (gl.nodes[j] + 1.0);
    (*radii)[j] = r;
    (*weights)[j] = 0.5 * gl.weights[j] * 2.0 * r;
  }
  std::lock_guard lock(mutex);
  return cache.emplace(m, RadialRule{std::move(radii), std::move(weights)}).first->second;
}

void require_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw NonFiniteSample("integrand produced a non-finite sample");
  }
}

double sum(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

bool converged(double prev, double next, double tol) {
  return std::abs(next - prev) <= tol * (1.0 + std::abs(next));
}

void check_options(const AdaptiveOptions& opts) {
  if (!(opts.tol > 0.0)) throw OutOfRange("adaptive quadrature requires tol > 0");
}

}  // namespace

std::size_t pow2_at_least(std::size_t n, std::size_t floor) {
  return std::bit_ceil(std::max(n, floor));
}

CircleRule::CircleRule(std::size_t n) {
  if (n < 16 || !std::has_single_bit(n)) {
    throw OutOfRange("circle rule size must be a power of two >= 16, got " + std::to_string(n));
  }
  nodes_ = unit_roots(n);
}

DiskRule::DiskRule(std::size_t m, std::size_t n) : circle_(n) {
  if (m == 0) throw OutOfRange("disk rule needs at least one radial node");
  RadialRule rr = radial_rule(m);
  radii_ = std::move(rr.radii);
  weights_ = std::move(rr.weights);
}

const GaussLegendre& gauss_legendre(std::size_t m) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<GaussLegendre>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[m];
  if (slot) return *slot;

  auto rule = std::make_unique<GaussLegendre>();
  rule->nodes.resize(m);
  rule->weights.resize(m);
  const double md = static_cast<double>(m);
  for (std::size_t i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (md + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= m; ++k) {
        const double kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = p2;
      }
      dp = md * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= m; ++k) {
      const double kd = static_cast<double>(k);
      const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
      p0 = p1;
      p1 = p2;
    }
    dp = md * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule->nodes[i] = -x;
    rule->nodes[m - 1 - i] = x;
    rule->weights[i] = w;
    rule->weights[m - 1 - i] = w;
  }
  if (m % 2 == 1) rule->nodes[m / 2] = 0.0;
  slot = std::move(rule);
  return *slot;
}

double circle_integral(const CircleIntegrand& phi, const CircleRule& rule) {
  std::vector<double> values(rule.size());
  phi(rule.nodes(), values);
  require_finite(values);
  return sum(values) * rule.weight();
}

double circle_integral(const std::function<double(double theta)>& phi, const CircleRule& rule) {
  return circle_integral(
      CircleIntegrand([&phi](std::span<const cplx> nodes, std::span<double> values) {
        for (std::size_t k = 0; k < nodes.size(); ++k) values[k] = phi(std::arg(nodes[k]));
      }),
      rule);
}

double disk_integral(const RingIntegrand& phi, const DiskRule& rule) {
  const auto nodes = rule.circle().nodes();
  const auto radii = rule.radii();
  const auto weights = rule.radial_weights();
  std::vector<double> values(nodes.size());
  double total = 0.0;
  for (std::size_t j = 0; j < radii.size(); ++j) {
    phi(radii[j], nodes, values);
    require_finite(values);
    total += weights[j] * sum(values) * rule.circle().weight();
  }
  return total;
}

double disk_integral(const std::function<double(double r, double theta)>& phi, const DiskRule& rule) {
  return disk_integral(
      RingIntegrand([&phi](double r, std::span<const cplx> nodes, std::span<double> values) {
        for (std::size_t k = 0; k < nodes.size(); ++k) values[k] = phi(r, std::arg(nodes[k]));
      }),
      rule);
}

Estimate adaptive_circle(const CircleIntegrand& phi, const AdaptiveOptions& opts) {
  check_options(opts);
  std::size_t n = pow2_at_least(std::min(opts.n_start, opts.n_cap), 16);
  CircleRule rule(n);
  std::vector<double> values(n);
  phi(rule.nodes(), values);
  require_finite(values);
  double running_sum = sum(values);
  double current = running_sum / static_cast<double>(n);

  while (true) {
    if (2 * n > opts.n_cap) {
      throw NoConvergence("circle quadrature did not converge within " + std::to_string(opts.n_cap) +
                              " nodes",
                          current, std::numeric_limits<double>::infinity());
    }
    // The 2N rule reuses the N existing samples; only odd nodes are new.
    CircleRule finer(2 * n);
    std::vector<cplx> odd(n);
    for (std::size_t k = 0; k < n; ++k) odd[k] = finer.nodes()[2 * k + 1];
    phi(odd, values);
    require_finite(values);
    running_sum += sum(values);
    n *= 2;
    values.resize(n);
    const double next = running_sum / static_cast<double>(n);
    const double increment = std::abs(next - current);
    if (converged(current, next, opts.tol)) return Estimate{next, increment, n, 0};
    if (2 * n > opts.n_cap) {
      throw NoConvergence("circle quadrature did not converge within " + std::to_string(opts.n_cap) +
                              " nodes",
                          next, increment);
    }
    current = next;
  }
}

Estimate adaptive_disk(const RingIntegrand& phi, const AdaptiveOptions& opts) {
  check_options(opts);
  std::size_t m = std::max<std::size_t>(1, std::min(opts.m_start, opts.m_cap));
  std::size_t n = pow2_at_least(std::min(opts.n_start, opts.n_cap), 16);
  double current = disk_integral(phi, DiskRule(m, n));
  while (true) {
    const std::size_t m2 = std::min(2 * m, opts.m_cap);
    const std::size_t n2 = std::min(2 * n, opts.n_cap);
    if (m2 == m && n2 == n) {
      throw NoConvergence("disk quadrature did not converge within the node caps", current,
                          std::numeric_limits<double>::infinity());
    }
    const double next = disk_integral(phi, DiskRule(m2, n2));
    const double increment = std::abs(next - current);
    m = m2;
    n = n2;
    if (converged(current, next, opts.tol)) return Estimate{next, increment, n, m};
    if (std::min(2 * m, opts.m_cap) == m && std::min(2 * n, opts.n_cap) == n) {
      throw NoConvergence("disk quadrature did not converge within the node caps", next, increment);
    }
    current = next;
  }
}

namespace {

double abs_pow(double u, double p) { return std::pow(std::abs(u), p); }

// Integral over [a, b] of |u|^p, with t = a + (b - a) w(s), w(s) = s^3 (10 - 15 s + 6 s^2).
double graded_piece(const std::function<double(double)>& u, double a, double b, double p, std::size_t n) {
  const GaussLegendre& gl = gauss_legendre(n);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = 0.5 * (gl.nodes[k] + 1.0);
    const double w = s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
    const double dw = 30.0 * s * s * (1.0 - s) * (1.0 - s);
    total += 0.5 * gl.weights[k] * abs_pow(u(a + (b - a) * w), p) * dw;
  }
  return (b - a) * total;
}

}  // namespace

Estimate abs_power_ring_mean(const RealRingFunction& u, double r, double p, std::size_t degree, double tol,
                             bool cut_at_minima) {
  if (!(p > 0.0)) throw OutOfRange("abs_power_ring_mean requires p > 0");
  const double two_pi = 2.0 * std::numbers::pi;
  const std::function<double(double)> at = [&](double theta) { return u(r, theta); };

  const std::size_t k_samples = pow2_at_least(16 * std::max<std::size_t>(degree, 1), 64);
  const double step = two_pi / static_cast<double>(k_samples);
  std::vector<double> samples(k_samples);
  for (std::size_t k = 0; k < k_samples; ++k) samples[k] = at(step * static_cast<double>(k));
  require_finite(samples);

  // Cuts: sign changes of u, located to near machine precision, plus the
  // interior minima of |u| (which also expose zero pairs between samples).
  std::vector<double> cuts;
  bool has_zero = false;
  auto root = [&](double a, double b, double ua, double ub) {
    has_zero = true;
    std::uintmax_t iters = 64;
    const auto bracket =
        boost::math::tools::toms748_solve(at, a, b, ua, ub, boost::math::tools::eps_tolerance<double>(52), iters);
    cuts.push_back(0.5 * (bracket.first + bracket.second));
  };
  for (std::size_t k = 0; k < k_samples; ++k) {
    const double ua = samples[k];
    const double ub = samples[(k + 1) % k_samples];
    const double a = step * static_cast<double>(k);
    if (ua == 0.0) {
      has_zero = true;
      cuts.push_back(a);
      continue;
    }
    if (ub != 0.0 && (ua < 0.0) != (ub < 0.0)) {
      root(a, a + step, ua, ub);
      continue;
    }
    const double prev = samples[(k + k_samples - 1) % k_samples];
    if ((prev < 0.0) != (ua < 0.0) || std::abs(ua) > std::abs(prev) || std::abs(ua) > std::abs(ub)) continue;
    const double sign = ua < 0.0 ? -1.0 : 1.0;
    const auto [t_min, v_min] = boost::math::tools::brent_find_minima(
        [&](double t) { return sign * at(t); }, a - step, a + step, 52);
    if (v_min < 0.0) {
      const double u_min = sign * v_min;
      root(a - step, t_min, prev, u_min);
      root(t_min, a + step, u_min, ub);
    } else {
      cuts.push_back(t_min);
      has_zero = has_zero || cut_at_minima;
    }
  }
  for (double& c : cuts) c = std::fmod(c + two_pi, two_pi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double x, double y) { return y - x < 1e-14; }), cuts.end());
  if (!has_zero) {
    AdaptiveOptions opts;
    opts.tol = tol;
    opts.n_start = k_samples;
    return adaptive_circle(
        [&](std::span<const cplx> nodes, std::span<double> values) {
          for (std::size_t k = 0; k < nodes.size(); ++k) values[k] = abs_pow(at(std::arg(nodes[k])), p);
        },
        opts);
  }

  auto level = [&](std::size_t n) {
    double total = 0.0;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      const double a = cuts[i];
      const double b = i + 1 < cuts.size() ? cuts[i + 1] : cuts.front() + two_pi;
      total += graded_piece(at, a, b, p, n);
    }
    return total / two_pi;
  };
  std::size_t n = 16;
  double current = level(n);
  while (2 * n <= kPieceNodeCap) {
    const double next = level(2 * n);
    const double increment = std::abs(next - current);
    n *= 2;
    if (converged(current, next, tol)) return Estimate{next, increment, n * cuts.size(), 0};
    current = next;
  }
  throw NoConvergence("piecewise ring quadrature did not converge within " + std::to_string(kPieceNodeCap) +
                          " nodes per piece",
                      current, std::numeric_limits<double>::infinity());
}

Estimate abs_power_disk_mean(const RealRingFunction& u, double p, std::size_t degree, const AdaptiveOptions& opts) {
  check_options(opts);
  std::size_t max_ring_nodes = 0;
  // Ring means are resolved well below the radial tolerance so that the
  // radial increment dominates the error.
  const double ring_tol = 0.01 * opts.tol;
  auto level = [&](std::size_t m, double& ring_err) {
    const DiskRule rule(m, 16);
    double total = 0.0;
    ring_err = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const Estimate ring = abs_power_ring_mean(u, rule.radii()[j], p, degree, ring_tol);
      max_ring_nodes = std::max(max_ring_nodes, ring.n);
      total += rule.radial_weights()[j] * ring.value;
      ring_err += rule.radial_weights()[j] * ring.err_est;
    }
    return total;
  };
  std::size_t m = std::max<std::size_t>(1, std::min(opts.m_start, opts.m_cap));
  double err = 0.0;
  double current = level(m, err);
  while (2 * m <= opts.m_cap) {
    double next_err = 0.0;
    const double next = level(2 * m, next_err);
    const double increment = std::abs(next - current);
    m *= 2;
    if (converged(current, next, opts.tol)) return Estimate{next, increment + next_err, max_ring_nodes, m};
    current = next;
  }
  throw NoConvergence("radial quadrature did not converge within " + std::to_string(opts.m_cap) + " nodes",
                      current, std::numeric_limits<double>::infinity());
}

}  // namespace diskineq
