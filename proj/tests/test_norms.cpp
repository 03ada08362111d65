#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "diskineq/errors.hpp"
#include "diskineq/norms.hpp"
#include "oracles.hpp"

using namespace diskineq;
using doctest::Approx;

namespace {

HarmonicFunction pair(const std::vector<cplx>& g, const std::vector<cplx>& h) {
  return HarmonicFunction::taylor_pair(TaylorSeries(g), TaylorSeries(h));
}

HarmonicFunction rotate(const HarmonicFunction& f, double alpha) {
  const auto& tp = std::get<TaylorPair>(f.variant());
  return HarmonicFunction::taylor_pair(tp.g.rotated(alpha), tp.h.rotated(alpha));
}

HarmonicFunction scale(const HarmonicFunction& f, cplx c) {
  const auto& tp = std::get<TaylorPair>(f.variant());
  return HarmonicFunction::taylor_pair(tp.g.scaled(c), tp.h.scaled(std::conj(c)));
}

HarmonicFunction random_real(std::mt19937_64& rng, std::size_t degree) {
  auto g = oracle::random_coeffs(degree, rng);
  g[0] = g[0].real();
  auto h = g;
  h[0] = 0.0;
  return pair(g, h);
}

}  // namespace

TEST_SUITE("norms") {
  TEST_CASE("hardy norm examples") {
    for (unsigned n : {0u, 1u, 5u}) {
      for (double p : {1.0, 2.0, 3.0}) CHECK(hardy_norm(HarmonicFunction::monomial(n), p).value == Approx(1.0));
    }
    const auto re_z = pair({0.0, 0.5}, {0.0, 0.5});
    CHECK(hardy_norm(re_z, 2.0).value == Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(hardy_norm(re_z, 4.0).value == Approx(std::pow(3.0 / 8.0, 0.25)).epsilon(1e-12));
  }

  TEST_CASE("bergman norm of monomials") {
    for (unsigned n = 0; n <= 16; ++n) {
      for (double q : {2.0, 4.0, 8.0}) {
        const double expected = std::pow(2.0 / (n * q + 2.0), 1.0 / q);
        CHECK(bergman_norm(HarmonicFunction::monomial(n), q).value == Approx(expected).epsilon(1e-12));
      }
    }
    CHECK(bergman_norm(HarmonicFunction::monomial(1), 4.0).value == Approx(0.7598356857).epsilon(1e-10));
    CHECK(bergman_norm(HarmonicFunction::holomorphic(TaylorSeries::constant({3.0, 4.0})), 3.0).value ==
          Approx(5.0).epsilon(1e-12));
  }

  TEST_CASE("even exponents match exact Laurent moments") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
      const auto g = oracle::random_coeffs(6, rng);
      const auto h = oracle::random_coeffs(4, rng);
      const auto f = pair(g, h);
      const auto laurent = oracle::boundary_laurent(g, h);
      for (int k : {1, 2, 4}) {
        const double exact = oracle::mean_abs_pow_even(laurent, k);
        CHECK(hardy_integral(f, 2.0 * k).value == Approx(exact).epsilon(1e-12));
      }
      const auto F = HarmonicFunction::holomorphic(TaylorSeries(g));
      for (int k : {1, 2, 4}) {
        CHECK(bergman_integral(F, 2.0 * k).value ==
              Approx(oracle::bergman_mean_holomorphic_even(g, k)).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("non-even exponents against a Simpson oracle") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 4; ++trial) {
      const auto u = random_real(rng, 6);
      for (double p : {1.0, 1.5, 3.0}) {
        const double ref = oracle::simpson_circle_mean(
            [&](double t) { return std::pow(std::abs(eval(u, std::polar(1.0, t)).real()), p); }, 200000);
        CHECK(hardy_integral(u, p).value == Approx(ref).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("bergman norm does not exceed hardy norm") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = pair(oracle::random_coeffs(4, rng), oracle::random_coeffs(4, rng));
      for (double p : {1.0, 1.5, 2.0, 3.0, 4.0}) {
        const NormResult b = bergman_norm(f, p, 1e-8);
        const NormResult h = hardy_norm(f, p, 1e-8);
        CHECK(h.value - b.value >= -(h.err_est + b.err_est));
      }
    }
  }

  TEST_CASE("homogeneity and rotation invariance") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> unit(-2.0, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
      const auto f = pair(oracle::random_coeffs(5, rng), oracle::random_coeffs(5, rng));
      const cplx c{unit(rng), unit(rng)};
      const double alpha = 3.0 * unit(rng);
      // Tight tolerance so the non-even exponent is also resolved to 1e-12.
      const double tol = 1e-13;
      for (double p : {2.0, 3.0, 4.0}) {
        const double h = hardy_norm(f, p, tol).value;
        const double b = bergman_norm(f, p, tol).value;
        CHECK(hardy_norm(scale(f, c), p, tol).value == Approx(std::abs(c) * h).epsilon(1e-12));
        CHECK(bergman_norm(scale(f, c), p, tol).value == Approx(std::abs(c) * b).epsilon(1e-12));
        CHECK(hardy_norm(rotate(f, alpha), p, tol).value == Approx(h).epsilon(1e-12));
        CHECK(bergman_norm(rotate(f, alpha), p, tol).value == Approx(b).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("pow_of_square fast paths agree with pow") {
    for (double p : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 6.0, 8.0, 1.3, 2.7}) {
      for (double s : {0.0, 1e-8, 0.3, 1.0, 7.5}) {
        CHECK(pow_of_square(s, p) == Approx(std::pow(s, p / 2.0)).epsilon(1e-14));
      }
    }
  }

  TEST_CASE("invalid exponents") {
    CHECK_THROWS_AS(hardy_norm(HarmonicFunction::monomial(1), 0.0), OutOfRange);
    CHECK_THROWS_AS(bergman_norm(HarmonicFunction::monomial(1), -1.0), OutOfRange);
  }

  TEST_CASE("f_a family norms converge") {
    const auto f = HarmonicFunction::fa(0.9);
    // ||Re F||_{h^2}^2 = (1/2) sum a^{2(n-1)} for F = z/(1-az).
    CHECK(hardy_norm(f, 2.0).value == Approx(std::sqrt(0.5 / (1.0 - 0.81))).epsilon(1e-10));
  }
}
