#include "diskineq/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "diskineq/errors.hpp"

namespace diskineq {

namespace {

constexpr std::pair<Theorem, std::string_view> kNames[] = {
    {Theorem::isoper, "isoper"}, {Theorem::carleman_exp, "carleman-exp"},
    {Theorem::cp, "cp"},         {Theorem::c4, "c4"},
    {Theorem::riesz, "riesz"},   {Theorem::hed, "hed"},
    {Theorem::newt, "newt"},     {Theorem::ipl, "ipl"},
    {Theorem::lemma_new, "lemma-new"}, {Theorem::green, "green"},
    {Theorem::abx, "abx"},
};

cplx complex_normal(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

TaylorSeries random_series(std::size_t degree, bool vanish_at_origin, std::mt19937_64& rng) {
  std::vector<cplx> coeffs(degree + 1);
  for (cplx& c : coeffs) c = complex_normal(rng);
  if (vanish_at_origin) coeffs[0] = 0.0;
  return TaylorSeries(std::move(coeffs));
}

/// The g and h of a TaylorPair, or (F, 0) for holomorphic representations.
std::pair<TaylorSeries, TaylorSeries> pair_parts(const HarmonicFunction& f) {
  if (const auto* tp = std::get_if<TaylorPair>(&f.variant())) return {tp->g, tp->h};
  return {f.as_holomorphic(), TaylorSeries()};
}

cplx random_disk_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = 0.95 * std::sqrt(unit(rng));
  const double theta = 2.0 * std::numbers::pi * unit(rng);
  return std::polar(r, theta);
}

}  // namespace

std::optional<Theorem> parse_theorem(std::string_view name) {
  for (const auto& [thm, text] : kNames) {
    if (text == name) return thm;
  }
  return std::nullopt;
}

std::string_view theorem_name(Theorem thm) {
  for (const auto& [t, text] : kNames) {
    if (t == thm) return text;
  }
  return "unknown";
}

FunctionClass suite_class(Theorem thm) {
  switch (thm) {
    case Theorem::isoper:
      return FunctionClass::holomorphic;
    case Theorem::carleman_exp:
    case Theorem::cp:
      return FunctionClass::real_harmonic;
    case Theorem::c4:
    case Theorem::abx:
      return FunctionClass::complex_harmonic;
    case Theorem::riesz:
    case Theorem::hed:
    case Theorem::newt:
      return FunctionClass::holomorphic_vanishing;
    case Theorem::ipl:
      return FunctionClass::holomorphic_pair;
    case Theorem::lemma_new:
    case Theorem::green:
      return FunctionClass::holomorphic;
  }
  return FunctionClass::holomorphic;
}

HarmonicFunction random_function(FunctionClass cls, int max_degree, std::mt19937_64& rng) {
  if (max_degree < 0 || static_cast<std::size_t>(max_degree) > kMaxDegree) {
    throw OutOfRange("random function degree out of range");
  }
  std::uniform_int_distribution<int> pick(std::min(1, max_degree), max_degree);
  const auto degree = static_cast<std::size_t>(pick(rng));
  switch (cls) {
    case FunctionClass::holomorphic:
      return HarmonicFunction::holomorphic(random_series(degree, false, rng));
    case FunctionClass::holomorphic_vanishing:
      return HarmonicFunction::holomorphic(random_series(degree, true, rng));
    case FunctionClass::real_harmonic: {
      std::vector<cplx> g(degree + 1);
      for (cplx& c : g) c = complex_normal(rng);
      g[0] = g[0].real();
      std::vector<cplx> h(g);
      h[0] = 0.0;
      return HarmonicFunction::taylor_pair(TaylorSeries(std::move(g)), TaylorSeries(std::move(h)));
    }
    case FunctionClass::complex_harmonic: {
      TaylorSeries g = random_series(degree, false, rng);
      TaylorSeries h = random_series(degree, true, rng);
      return HarmonicFunction::taylor_pair(std::move(g), std::move(h));
    }
    case FunctionClass::holomorphic_pair: {
      TaylorSeries a = random_series(degree, false, rng);
      TaylorSeries b = random_series(degree, false, rng);
      return HarmonicFunction::taylor_pair(std::move(a), std::move(b));
    }
  }
  throw PreconditionFailed("unknown function class");
}

std::vector<InequalityReport> verify(Theorem thm, const HarmonicFunction& f, const VerifyOptions& opts) {
  switch (thm) {
    case Theorem::isoper:
      return {check_isoperimetric(f, opts.tol)};
    case Theorem::carleman_exp:
      return {check_carleman_exp(f, opts.tol)};
    case Theorem::cp:
      return {check_thm_cp(f, opts.p, opts.tol)};
    case Theorem::c4:
      return {check_thm_c4(f, opts.tol)};
    case Theorem::riesz:
      return {check_riesz(f, opts.p, opts.tol)};
    case Theorem::hed:
      return {check_bergman_riesz(f, opts.p, opts.tol)};
    case Theorem::newt:
      return {check_newt(f, opts.p, opts.tol)};
    case Theorem::ipl: {
      const auto [a, b] = pair_parts(f);
      return {check_ipl(a, b, opts.p, opts.tol)};
    }
    case Theorem::abx: {
      const auto [g, h] = pair_parts(f);
      return abx_trace(g, h, opts.tol).reports;
    }
    case Theorem::lemma_new: {
      const TaylorSeries F = f.as_holomorphic();
      std::mt19937_64 rng(opts.seed);
      std::optional<InequalityReport> worst;
      for (int i = 0; i < std::max(1, opts.points); ++i) {
        InequalityReport r = check_lemma_new(F, opts.p, opts.eps, random_disk_point(rng));
        if (!worst || r.margin + r.quadrature.err_est < worst->margin + worst->quadrature.err_est) {
          worst = std::move(r);
        }
      }
      worst->params["points"] = std::max(1, opts.points);
      return {*worst};
    }
    case Theorem::green: {
      const TaylorSeries F = f.as_holomorphic();
      InequalityReport r = green_check(eps_field(F, EpsFamily::make(opts.eps, opts.p)), opts.r, opts.tol);
      r.params["p"] = opts.p;
      r.params["eps"] = opts.eps;
      return {r};
    }
  }
  throw PreconditionFailed("unknown theorem");
}

unsigned worker_count() {
  unsigned workers = std::max(1U, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("DISK_INEQ_THREADS")) {
    const long value = std::strtol(cap, nullptr, 10);
    if (value > 0) workers = std::min(workers, static_cast<unsigned>(value));
  }
  return workers;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<SuiteCase> run_suite(Theorem thm, const VerifyOptions& opts, std::size_t count, int max_degree) {
  std::vector<SuiteCase> cases(count);
  const FunctionClass cls = suite_class(thm);
  parallel_for(count, [&](std::size_t i) {
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(thm)};
    std::mt19937_64 rng(seq);
    SuiteCase& c = cases[i];
    c.index = i;
    c.function = random_function(cls, max_degree, rng);
    VerifyOptions local = opts;
    local.seed = rng();
    try {
      c.reports = verify(thm, c.function, local);
    } catch (const Error& e) {
      c.error = e.what();
    }
  });
  return cases;
}

}  // namespace diskineq
