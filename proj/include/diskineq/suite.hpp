#pragma once

// Seeded randomized verification suites over the checkers.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "diskineq/inequal.hpp"
#include "diskineq/repr.hpp"

namespace diskineq {

enum class Theorem { isoper, carleman_exp, cp, c4, riesz, hed, newt, ipl, lemma_new, green, abx };

std::optional<Theorem> parse_theorem(std::string_view name);
std::string_view theorem_name(Theorem thm);

enum class FunctionClass {
  holomorphic,            // F, random F(0)
  holomorphic_vanishing,  // F with F(0) = 0
  real_harmonic,          // u = c + 2 Re sum g_n z^n
  complex_harmonic,       // g + conj(h), h(0) = 0
  holomorphic_pair,       // (a, b) stored as TaylorPair g = a, h = b
};

/// The random class each theorem is exercised on.
FunctionClass suite_class(Theorem thm);

/// Degree uniform in [1, max_degree], coefficients with standard normal real
/// and imaginary parts.
HarmonicFunction random_function(FunctionClass cls, int max_degree, std::mt19937_64& rng);

struct VerifyOptions {
  double p = 2.0;
  double eps = 0.01;
  double r = 0.8;
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  int points = 20;  // sample points for pointwise checks
};

/// Runs one theorem's checker(s) on a single function. For ipl and abx the
/// TaylorPair's g and h play the roles of the two analytic functions; the
/// pointwise lemma is reduced to its worst point over `points` seeded samples.
std::vector<InequalityReport> verify(Theorem thm, const HarmonicFunction& f, const VerifyOptions& opts);

struct SuiteCase {
  std::size_t index = 0;
  HarmonicFunction function = HarmonicFunction::monomial(0);
  std::vector<InequalityReport> reports;
  std::string error;
};

/// Random suite; case i draws from a generator seeded with (seed, i), so
/// results do not depend on thread scheduling.
std::vector<SuiteCase> run_suite(Theorem thm, const VerifyOptions& opts, std::size_t count, int max_degree);

/// Worker count: DISK_INEQ_THREADS if set, else hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, count) over worker_count() threads.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace diskineq
