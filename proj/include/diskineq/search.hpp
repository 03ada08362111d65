#pragma once

// Sharpness probing: ratio sweeps along f_a and Nelder-Mead maximization of
// inequality ratios over trigonometric polynomial families.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diskineq/inequal.hpp"
#include "diskineq/repr.hpp"

namespace diskineq {

struct FaPoint {
  double a = 0.0;
  double ratio = 0.0;  // NaN when the quadrature failed
  double err_est = 0.0;
  std::string error;
};

struct FaSweep {
  double p = 2.0;
  std::vector<FaPoint> points;
  /// Polynomial extrapolation of ratio to 1 - a = 0 through every finite point.
  double extrapolate = 0.0;
};

/// ||f_a||_{b^{2p}} / ||f_a||_{h^p} over the grid of a-values.
FaSweep sweep_fa(double p, const std::vector<double>& grid, double tol = 1e-8);

/// Value at x = 0 of the interpolating polynomial through (xs, ys) (Neville).
double extrapolate_to_zero(const std::vector<double>& xs, const std::vector<double>& ys);

enum class FamilyKind { fa_sweep, trig_poly };
enum class Target { cp, c4, riesz_upper, riesz_lower, newt };

std::optional<Target> parse_target(std::string_view name);
std::string_view target_name(Target t);

inline constexpr int kMaxSearchDegree = 32;

struct FamilySpec {
  FamilyKind kind = FamilyKind::trig_poly;
  int degree = 4;
  double p = 2.0;
  Target target = Target::cp;
};

/// Number of real parameters of a trig_poly family.
std::size_t parameter_count(const FamilySpec& spec);

/// The function encoded by a parameter vector:
///   cp                 Re sum_{n=0}^{D} c_n z^n
///   c4                 g + conj(h), deg g = deg h = D, h(0) = 0
///   riesz_*, newt      F = sum_{n=1}^{D} c_n z^n
HarmonicFunction family_member(const FamilySpec& spec, std::span<const double> params);

struct RatioValue {
  double ratio = 0.0;
  double err_est = 0.0;
};

/// The target's ratio; it never exceeds target_constant when the theorem holds.
RatioValue target_ratio(const FamilySpec& spec, const HarmonicFunction& f, double tol);
double target_constant(const FamilySpec& spec);

struct SearchResult {
  double best_ratio = 0.0;
  std::vector<double> best_params;
  std::size_t evaluations = 0;
  std::uint64_t seed = 0;
  int restarts = 0;
  int failed_restarts = 0;
  int best_restart = -1;
  double constant = 0.0;
  double err_est = 0.0;
  bool counterexample = false;
  HarmonicFunction best_function = HarmonicFunction::monomial(0);
};

struct SearchOptions {
  double tol = 1e-9;
  std::size_t max_evaluations = 4000;  // per restart
};

/// Best ratio over `restarts` Nelder-Mead runs from seeded random starts.
/// Deterministic given (spec, seed, restarts).
SearchResult extremal_search(const FamilySpec& spec, std::uint64_t seed, int restarts = 20,
                             const SearchOptions& opts = {});

}  // namespace diskineq
