#include "diskineq/search.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "diskineq/constants.hpp"
#include "diskineq/errors.hpp"
#include "diskineq/nelder_mead.hpp"
#include "diskineq/norms.hpp"
#include "diskineq/suite.hpp"

namespace diskineq {

namespace {

constexpr std::pair<Target, std::string_view> kTargets[] = {
    {Target::cp, "cp"},
    {Target::c4, "c4"},
    {Target::riesz_upper, "riesz_upper"},
    {Target::riesz_lower, "riesz_lower"},
    {Target::newt, "newt"},
};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// (A / B)^{1/k} with its propagated error.
RatioValue root_ratio(const Estimate& a, const Estimate& b, double k) {
  if (!(a.value > 0.0) || !(b.value > 0.0)) return {kNaN, kNaN};
  const double ratio = std::pow(a.value / b.value, 1.0 / k);
  const double rel = (a.err_est / a.value + b.err_est / b.value) / k;
  return {ratio, ratio * (rel + kRoundoffAllowance)};
}

RatioValue norm_ratio(const NormResult& top, const NormResult& bottom) {
  if (!(top.value > 0.0) || !(bottom.value > 0.0)) return {kNaN, kNaN};
  const double ratio = top.value / bottom.value;
  const double rel = top.err_est / top.value + bottom.err_est / bottom.value;
  return {ratio, ratio * (rel + kRoundoffAllowance)};
}

Estimate sum_estimates(const Estimate& a, const Estimate& b) {
  return {a.value + b.value, a.err_est + b.err_est, std::max(a.n, b.n), std::max(a.m, b.m)};
}

void validate(const FamilySpec& spec) {
  if (spec.degree < 0 || spec.degree > kMaxSearchDegree) {
    throw OutOfRange("search degree must lie in [0, " + std::to_string(kMaxSearchDegree) + "]");
  }
  if (!(spec.p > 1.0) || !std::isfinite(spec.p)) throw OutOfRange("search exponent must be > 1");
  if (spec.target == Target::newt && spec.p < 2.0) throw OutOfRange("newt target requires p >= 2");
  if (spec.kind == FamilyKind::fa_sweep && spec.target != Target::cp) {
    throw OutOfRange("the f_a family only probes the cp target");
  }
}

FaSweep default_fa_grid_sweep(double p, double tol) {
  std::vector<double> grid{0.0};
  for (int k = 1; k <= 12; ++k) grid.push_back(1.0 - std::pow(10.0, -0.25 * k));
  return sweep_fa(p, grid, tol);
}

}  // namespace

double extrapolate_to_zero(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.empty()) throw PreconditionFailed("extrapolation needs matching, non-empty data");
  std::vector<double> t(ys);
  const std::size_t n = xs.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      const double xi = xs[i];
      const double xj = xs[i + level];
      t[i] = (xj * t[i] - xi * t[i + 1]) / (xj - xi);
    }
  }
  return t[0];
}

FaSweep sweep_fa(double p, const std::vector<double>& grid, double tol) {
  if (!(p > 1.0)) throw OutOfRange("sweep_fa requires p > 1");
  for (double a : grid) {
    if (!(a >= 0.0 && a < 1.0)) throw OutOfRange("sweep_fa grid values must lie in [0, 1)");
  }
  FaSweep sweep;
  sweep.p = p;
  std::vector<double> xs;
  std::vector<double> ys;
  for (double a : grid) {
    FaPoint point;
    point.a = a;
    try {
      const HarmonicFunction f = HarmonicFunction::fa(a);
      const RatioValue r = norm_ratio(bergman_norm(f, 2.0 * p, tol), hardy_norm(f, p, tol));
      point.ratio = r.ratio;
      point.err_est = r.err_est;
      xs.push_back(1.0 - a);
      ys.push_back(r.ratio);
    } catch (const NoConvergence& e) {
      point.ratio = kNaN;
      point.err_est = std::abs(e.last_increment());
      point.error = e.what();
    }
    sweep.points.push_back(std::move(point));
  }
  sweep.extrapolate = xs.empty() ? kNaN : extrapolate_to_zero(xs, ys);
  return sweep;
}

std::optional<Target> parse_target(std::string_view name) {
  for (const auto& [t, text] : kTargets) {
    if (text == name) return t;
  }
  return std::nullopt;
}

std::string_view target_name(Target t) {
  for (const auto& [target, text] : kTargets) {
    if (target == t) return text;
  }
  return "unknown";
}

std::size_t parameter_count(const FamilySpec& spec) {
  if (spec.kind == FamilyKind::fa_sweep) return 1;
  const auto d = static_cast<std::size_t>(spec.degree);
  switch (spec.target) {
    case Target::cp:
      return 2 * (d + 1);
    case Target::c4:
      return 2 * (d + 1) + 2 * d;
    case Target::riesz_upper:
    case Target::riesz_lower:
    case Target::newt:
      return 2 * d;
  }
  return 0;
}

HarmonicFunction family_member(const FamilySpec& spec, std::span<const double> params) {
  if (params.size() != parameter_count(spec)) throw PreconditionFailed("parameter vector has the wrong length");
  if (spec.kind == FamilyKind::fa_sweep) return HarmonicFunction::fa(params[0]);
  const auto d = static_cast<std::size_t>(spec.degree);
  auto coeff = [&](std::size_t slot) { return cplx{params[2 * slot], params[2 * slot + 1]}; };
  switch (spec.target) {
    case Target::cp: {
      std::vector<cplx> c(d + 1);
      for (std::size_t n = 0; n <= d; ++n) c[n] = coeff(n);
      return HarmonicFunction::real_part(TaylorSeries(std::move(c)));
    }
    case Target::c4: {
      std::vector<cplx> g(d + 1);
      std::vector<cplx> h(d + 1);
      for (std::size_t n = 0; n <= d; ++n) g[n] = coeff(n);
      for (std::size_t n = 1; n <= d; ++n) h[n] = coeff(d + n);
      return HarmonicFunction::taylor_pair(TaylorSeries(std::move(g)), TaylorSeries(std::move(h)));
    }
    case Target::riesz_upper:
    case Target::riesz_lower:
    case Target::newt: {
      std::vector<cplx> c(d + 1);
      for (std::size_t n = 1; n <= d; ++n) c[n] = coeff(n - 1);
      return HarmonicFunction::holomorphic(TaylorSeries(std::move(c)));
    }
  }
  throw PreconditionFailed("unknown search target");
}

double target_constant(const FamilySpec& spec) {
  const double p = spec.p;
  switch (spec.target) {
    case Target::cp:
      return constants::carleman_C(p);
    case Target::c4:
      return constants::c4_constant();
    case Target::riesz_upper:
      return constants::riesz_R(p);
    case Target::riesz_lower:
      return 1.0 / constants::riesz_L(p);
    case Target::newt:
      return p <= 4.0 ? constants::newt_constant(p) : 1.0 / constants::newt_constant(p);
  }
  return kNaN;
}

RatioValue target_ratio(const FamilySpec& spec, const HarmonicFunction& f, double tol) {
  const double p = spec.p;
  switch (spec.target) {
    case Target::cp:
      return norm_ratio(bergman_norm(f, 2.0 * p, tol), hardy_norm(f, p, tol));
    case Target::c4:
      return norm_ratio(bergman_norm(f, 8.0, tol), hardy_norm(f, 4.0, tol));
    case Target::riesz_upper:
    case Target::riesz_lower:
    case Target::newt: {
      const TaylorSeries F = f.as_holomorphic();
      const Estimate whole = hardy_integral(f, p, tol);
      const Estimate re = hardy_integral(HarmonicFunction::real_part(F), p, tol);
      if (spec.target == Target::riesz_upper) return root_ratio(whole, re, p);
      if (spec.target == Target::riesz_lower) return root_ratio(re, whole, p);
      const Estimate parts = sum_estimates(re, hardy_integral(HarmonicFunction::imag_part(F), p, tol));
      return p <= 4.0 ? root_ratio(whole, parts, p) : root_ratio(parts, whole, p);
    }
  }
  throw PreconditionFailed("unknown search target");
}

SearchResult extremal_search(const FamilySpec& spec, std::uint64_t seed, int restarts, const SearchOptions& opts) {
  validate(spec);
  if (restarts < 1) throw OutOfRange("extremal_search needs at least one restart");
  const std::size_t dim = parameter_count(spec);
  if (dim == 0) throw OutOfRange("the family is empty at degree 0 for this target");

  SearchResult result;
  result.seed = seed;
  result.restarts = restarts;
  result.constant = target_constant(spec);

  if (spec.kind == FamilyKind::fa_sweep) {
    const FaSweep sweep = default_fa_grid_sweep(spec.p, opts.tol);
    result.restarts = 1;
    for (const FaPoint& pt : sweep.points) {
      ++result.evaluations;
      if (!std::isfinite(pt.ratio)) {
        ++result.failed_restarts;
        continue;
      }
      if (result.best_restart < 0 || pt.ratio > result.best_ratio) {
        result.best_ratio = pt.ratio;
        result.err_est = pt.err_est;
        result.best_params = {pt.a};
        result.best_restart = 0;
      }
    }
    if (result.best_restart >= 0) result.best_function = HarmonicFunction::fa(result.best_params[0]);
    result.counterexample = result.best_restart >= 0 && result.best_ratio > result.constant + result.err_est;
    return result;
  }

  auto objective = [&](std::span<const double> x) {
    try {
      return -target_ratio(spec, family_member(spec, x), opts.tol).ratio;
    } catch (const Error&) {
      return kNaN;
    }
  };

  struct RestartOutcome {
    NelderMeadResult nm;
    bool ok = false;
  };
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));
  parallel_for(outcomes.size(), [&](std::size_t i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> start(dim);
    for (double& x : start) x = normal(rng);
    try {
      const double scale = hardy_norm(family_member(spec, start), spec.p, opts.tol).value;
      if (scale > 0.0) {
        for (double& x : start) x /= scale;
      }
    } catch (const Error&) {
    }
    NelderMeadOptions nm_opts;
    nm_opts.max_evaluations = opts.max_evaluations;
    outcomes[i].nm = nelder_mead(objective, std::move(start), nm_opts);
    outcomes[i].ok = std::isfinite(outcomes[i].nm.value);
  });

  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const RestartOutcome& o = outcomes[i];
    result.evaluations += o.nm.evaluations;
    if (!o.ok) {
      ++result.failed_restarts;
      continue;
    }
    const double ratio = -o.nm.value;
    if (result.best_restart < 0 || ratio > result.best_ratio) {
      result.best_ratio = ratio;
      result.best_params = o.nm.x;
      result.best_restart = static_cast<int>(i);
    }
  }
  if (result.best_restart < 0) {
    result.best_ratio = kNaN;
    result.err_est = kNaN;
    return result;
  }

  // Re-evaluate the optimum at the default tolerance for the reported error.
  result.best_function = family_member(spec, result.best_params);
  const RatioValue final_value = target_ratio(spec, result.best_function, std::min(opts.tol, kDefaultTol));
  result.err_est = final_value.err_est + std::abs(final_value.ratio - result.best_ratio);
  result.best_ratio = final_value.ratio;
  result.counterexample = result.best_ratio > result.constant + result.err_est;
  return result;
}

}  // namespace diskineq
