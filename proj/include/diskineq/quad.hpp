#pragma once

// Quadrature on the unit circle (normalized arc measure dt/2pi) and on the
// unit disk (normalized area measure dx dy / pi).

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace diskineq {

using cplx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;
inline constexpr std::size_t kCircleNodeCap = std::size_t{1} << 16;
inline constexpr std::size_t kRadialNodeCap = std::size_t{1} << 12;

/// Equispaced trapezoid rule: nodes e^{2 pi i k / N}, weights 1/N.
class CircleRule {
 public:
  /// N must be a power of two >= 16.
  explicit CircleRule(std::size_t n);

  std::size_t size() const noexcept { return nodes_->size(); }
  std::span<const cplx> nodes() const noexcept { return *nodes_; }
  double weight() const noexcept { return 1.0 / static_cast<double>(size()); }

 private:
  std::shared_ptr<const std::vector<cplx>> nodes_;
};

/// Tensor rule: M Gauss-Legendre radii on [0,1] (weight 2r folded in) times
/// an N-point circle rule on each ring. Total weight is 1.
class DiskRule {
 public:
  DiskRule(std::size_t m, std::size_t n);

  std::size_t radial_size() const noexcept { return radii_->size(); }
  std::size_t angular_size() const noexcept { return circle_.size(); }
  std::span<const double> radii() const noexcept { return *radii_; }
  /// Gauss-Legendre weight times 2 r_j; sums to 1.
  std::span<const double> radial_weights() const noexcept { return *weights_; }
  const CircleRule& circle() const noexcept { return circle_; }

 private:
  std::shared_ptr<const std::vector<double>> radii_;
  std::shared_ptr<const std::vector<double>> weights_;
  CircleRule circle_;
};

/// Gauss-Legendre nodes and weights on [-1, 1] (cached, thread-safe).
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(std::size_t m);

/// Batch integrand on a circle: values[k] = phi at unit node k.
using CircleIntegrand = std::function<void(std::span<const cplx> nodes, std::span<double> values)>;
/// Batch integrand on a ring of radius r: values[k] = Phi(r * nodes[k]).
using RingIntegrand =
    std::function<void(double r, std::span<const cplx> nodes, std::span<double> values)>;

double circle_integral(const CircleIntegrand& phi, const CircleRule& rule);
double circle_integral(const std::function<double(double theta)>& phi, const CircleRule& rule);

double disk_integral(const RingIntegrand& phi, const DiskRule& rule);
double disk_integral(const std::function<double(double r, double theta)>& phi, const DiskRule& rule);

struct Estimate {
  double value = 0.0;
  double err_est = 0.0;
  std::size_t n = 0;  // angular nodes of the returned value
  std::size_t m = 0;  // radial nodes, 0 for circle integrals
};

struct AdaptiveOptions {
  double tol = kDefaultTol;
  std::size_t n_start = 16;
  std::size_t m_start = 8;
  std::size_t n_cap = kCircleNodeCap;
  std::size_t m_cap = kRadialNodeCap;
};

/// Doubles N until |I_2N - I_N| <= tol (1 + |I_2N|). Returns I_2N with the
/// last increment as err_est. Throws NoConvergence at the cap.
Estimate adaptive_circle(const CircleIntegrand& phi, const AdaptiveOptions& opts = {});
/// Same, doubling both M and N (M saturates at its cap first).
Estimate adaptive_disk(const RingIntegrand& phi, const AdaptiveOptions& opts = {});

/// Real trigonometric polynomial of the given degree on a ring: theta -> u.
using RealRingFunction = std::function<double(double r, double theta)>;

inline constexpr std::size_t kPieceNodeCap = 512;

/// Mean over [0, 2 pi) of |u(r, theta)|^p at fixed r. The circle is cut at the
/// sign changes of u and every piece is integrated by Gauss-Legendre after a
/// quintic smoothstep substitution, which absorbs the |t - t0|^p behaviour at
/// the cuts. Without sign changes this is the adaptive trapezoid rule. The
/// returned n is the total node count.
///
/// With cut_at_minima the local minima of |u| also force the piecewise rule;
/// this handles nonnegative u = |f| touching zero at isolated points.
Estimate abs_power_ring_mean(const RealRingFunction& u, double r, double p, std::size_t degree, double tol,
                             bool cut_at_minima = false);

/// Disk mean of |u|^p with abs_power_ring_mean on each ring and Gauss-Legendre
/// doubling in r (from opts.m_start, up to opts.m_cap).
Estimate abs_power_disk_mean(const RealRingFunction& u, double p, std::size_t degree, const AdaptiveOptions& opts);

/// Smallest power of two >= max(floor, n).
std::size_t pow2_at_least(std::size_t n, std::size_t floor);

}  // namespace diskineq
