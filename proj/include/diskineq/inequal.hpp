#pragma once

// Checkers for the Riesz/Carleman-type inequalities and the pointwise
// identities behind them. Every checker returns a signed-margin report.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "diskineq/quad.hpp"
#include "diskineq/repr.hpp"

namespace diskineq {

enum class Verdict { pass, fail, not_applicable };

struct QuadratureInfo {
  std::size_t n = 0;
  std::size_t m = 0;
  double err_est = 0.0;
};

/// One comparison lhs <= rhs; passes when margin = rhs - lhs >= -err_est.
struct MarginPart {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  double margin = 0.0;
  double err_est = 0.0;

  bool pass() const noexcept { return margin >= -err_est; }
};

/// Outcome of a single check.
///
/// Reports with several comparisons (two-sided bounds) list them in `parts`;
/// the top-level lhs/rhs/margin then mirror the tightest part. A failed
/// hypothesis makes the verdict not-applicable regardless of the margins.
struct InequalityReport {
  std::string name;
  std::map<std::string, double> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  double margin = 0.0;
  bool hypothesis_ok = true;
  bool trivial = false;
  std::string note;
  QuadratureInfo quadrature;
  std::vector<MarginPart> parts;

  bool pass() const noexcept;
  Verdict verdict() const noexcept;
};

/// Relative roundoff allowance added to every quadrature-based err_est.
inline constexpr double kRoundoffAllowance = 1e-13;

/// Holomorphic f: ||f||_{b^2}^2 <= ||f||_{h^1}^2.
InequalityReport check_isoperimetric(const HarmonicFunction& f, double tol = kDefaultTol);

/// Real harmonic u: integral_U e^{2u} <= (integral_T e^u)^2 (normalized measures).
InequalityReport check_carleman_exp(const HarmonicFunction& u, double tol = kDefaultTol);

/// Real harmonic u, p > 1: ||u||_{b^{2p}} <= C_p ||u||_{h^p}.
InequalityReport check_thm_cp(const HarmonicFunction& u, double p, double tol = kDefaultTol);

/// Complex harmonic f: ||f||_{b^8} <= ||f||_{h^4} / (2 sin(pi/16)).
InequalityReport check_thm_c4(const HarmonicFunction& f, double tol = kDefaultTol);

/// Holomorphic F, p > 1: L_p ||Re F||_{h^p} <= ||F||_{h^p} <= R_p ||Re F||_{h^p}.
/// Applicable when F(0) = 0 or |arg F(0) - pi/2| >= pi/(2 pbar).
InequalityReport check_riesz(const HarmonicFunction& F, double p, double tol = kDefaultTol);

/// Holomorphic F, p > 2: the same two-sided bounds in b^p for Re F and Im F.
/// Applicable when F(0) = 0 or |arg F(0) - pi/2| >= pi/(2p).
InequalityReport check_bergman_riesz(const HarmonicFunction& F, double p, double tol = kDefaultTol);

/// Holomorphic F with F(0) = 0, p >= 2: ||F||_{H^p} compared with
/// (p/(p-1))^{1/p} (||u||^p + ||v||^p)^{1/p}; <= on [2,4], >= on [4, inf).
InequalityReport check_newt(const HarmonicFunction& F, double p, double tol = kDefaultTol);

/// Laplacian of log(|a|^2 + |b|^2) at z (4 times the z zbar derivative).
double log_laplacian(const TaylorSeries& a, const TaylorSeries& b, cplx z);

/// integral_U (|a|^2+|b|^2)^{2p} <= (integral_T (|a|^2+|b|^2)^p)^2.
InequalityReport check_ipl(const TaylorSeries& a, const TaylorSeries& b, double p,
                           double tol = kDefaultTol);

struct AbxTrace {
  double A = 0.0;
  double B = 0.0;
  double X = 0.0;
  std::vector<InequalityReport> reports;
};

/// Boundary quantities A, B, X for f = g + conj(h) and the four inequalities
/// linking them (A^2 >= B^2, X >= (A - B/sqrt2)^2, X >= k^2 B^2, X >= k^2 A^2
/// with k = (2 - sqrt2)/2).
AbxTrace abx_trace(const TaylorSeries& g, const TaylorSeries& h, double tol = kDefaultTol);

/// Regularization parameters: eps > 0, p > 1, q = p/(p-1).
struct EpsFamily {
  double eps;
  double p;
  double q;

  static EpsFamily make(double eps, double p);
};

struct EpsLaplacians {
  double dF;  // Laplacian of (q eps + |F|^2)^{p/2}
  double dU;  // Laplacian of (eps + u^2)^{p/2}, u = Re F
  double dV;  // Laplacian of (eps + v^2)^{p/2}, v = Im F
};

EpsLaplacians eps_laplacians(const TaylorSeries& F, const EpsFamily& fam, cplx z);

/// Values (q eps + |F|^2)^{p/2}, (eps + u^2)^{p/2}, (eps + v^2)^{p/2} at z.
EpsLaplacians eps_values(const TaylorSeries& F, const EpsFamily& fam, cplx z);

/// p/(p-1) * (Delta U + Delta V) / Delta F at |f| = r, arg f = s.
double q_value(double s, double r, double eps, double p);

/// Closed forms of q_value at s = 0 and s = pi/4 in terms of t = eps / r^2.
double q_at_zero_closed_form(double t, double p);
double q_at_quarter_pi_closed_form(double t, double p);

inline constexpr std::size_t kQGridSize = 720;
inline constexpr double kQTolerance = 1e-9;

/// Q >= 1 on the grid when p <= 4, Q <= 1 when p >= 4, and the grid extrema
/// sit within one grid step of some multiple of pi/4.
InequalityReport q_report(double r, double eps, double p);

/// Pointwise Delta(U + V) against ((p-1)/p) Delta F, oriented by p.
InequalityReport check_lemma_new(const TaylorSeries& F, double p, double eps, cplx z);

/// A twice-differentiable field on the closed disk. An empty laplacian is
/// replaced by a five-point finite difference (step 1e-4).
struct SmoothField {
  std::function<double(cplx)> value;
  std::function<double(cplx)> laplacian;
};

/// (q eps + |F|^2)^{p/2} with its closed-form Laplacian.
SmoothField eps_field(const TaylorSeries& F, const EpsFamily& fam);

inline constexpr double kGreenTolerance = 1e-6;
inline constexpr double kGreenStep = 1e-5;
inline constexpr double kLaplacianStep = 1e-4;

/// r * integral_0^{2pi} dG/dr dt against integral_{|z|<=r} Delta G dx dy.
/// Equality check: passes when |lhs - rhs| <= 1e-6 (1 + |lhs|).
InequalityReport green_check(const SmoothField& G, double r, double tol = kDefaultTol);

/// Five-point Laplacian with step h.
double fd_laplacian(const std::function<double(cplx)>& fn, cplx z, double h = kLaplacianStep);

}  // namespace diskineq
