#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "diskineq/constants.hpp"
#include "diskineq/errors.hpp"
#include "diskineq/inequal.hpp"
#include "diskineq/norms.hpp"
#include "oracles.hpp"

using namespace diskineq;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

TaylorSeries series(std::vector<cplx> c) { return TaylorSeries(std::move(c)); }

HarmonicFunction holo(std::vector<cplx> c) { return HarmonicFunction::holomorphic(series(std::move(c))); }

HarmonicFunction pair(std::vector<cplx> g, std::vector<cplx> h) {
  return HarmonicFunction::taylor_pair(series(std::move(g)), series(std::move(h)));
}

const HarmonicFunction kReZ = pair({0.0, 0.5}, {0.0, 0.5});

cplx random_point(std::mt19937_64& rng, double radius = 0.95) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return std::polar(radius * std::sqrt(unit(rng)), 2.0 * pi * unit(rng));
}

bool passes(const InequalityReport& r) { return r.verdict() == Verdict::pass; }

}  // namespace

TEST_SUITE("inequal") {
  TEST_CASE("isoperimetric") {
    const auto c = check_isoperimetric(holo({{2.0, -1.0}}));
    CHECK(passes(c));
    CHECK(std::abs(c.margin) < 1e-13);

    const auto z = check_isoperimetric(HarmonicFunction::monomial(1));
    CHECK(z.lhs == Approx(0.5).epsilon(1e-14));
    CHECK(z.rhs == Approx(1.0).epsilon(1e-14));
    CHECK(passes(z));

    const auto one_plus_z = check_isoperimetric(holo({1.0, 1.0}));
    CHECK(one_plus_z.lhs == Approx(1.5).epsilon(1e-14));
    CHECK(one_plus_z.rhs == Approx(16.0 / (pi * pi)).epsilon(1e-9));
    CHECK(passes(one_plus_z));

    CHECK_THROWS_AS(check_isoperimetric(kReZ), PreconditionFailed);
  }

  TEST_CASE("Carleman exponential") {
    const auto zero = check_carleman_exp(pair({0.0}, {0.0}));
    CHECK(zero.lhs == Approx(1.0).epsilon(1e-14));
    CHECK(zero.rhs == Approx(1.0).epsilon(1e-14));
    CHECK(passes(zero));

    const auto log2 = check_carleman_exp(pair({std::log(2.0)}, {0.0}));
    CHECK(log2.lhs == Approx(4.0).epsilon(1e-14));
    CHECK(log2.rhs == Approx(4.0).epsilon(1e-14));
    CHECK(passes(log2));

    // u = Re z: disk mean of e^{2x} is I_1(2), circle mean of e^{cos t} is I_0(1).
    const auto re = check_carleman_exp(kReZ);
    CHECK(re.lhs == Approx(std::cyl_bessel_i(1.0, 2.0)).epsilon(1e-10));
    CHECK(re.rhs == Approx(std::pow(std::cyl_bessel_i(0.0, 1.0), 2)).epsilon(1e-10));
    const double mc = oracle::monte_carlo_disk_mean([](cplx z) { return std::exp(2.0 * z.real()); }, 1000000, 17);
    CHECK(std::abs(mc - re.lhs) < 0.01);
    CHECK(re.margin > 0.0);
    CHECK(passes(re));

    CHECK_THROWS_AS(check_carleman_exp(HarmonicFunction::monomial(1)), NotRealValued);
  }

  TEST_CASE("cp theorem") {
    for (double p : {1.5, 2.0, 3.0}) {
      const auto one = check_thm_cp(pair({1.0}, {0.0}), p);
      CHECK(one.lhs == Approx(1.0).epsilon(1e-12));
      CHECK(one.rhs == Approx(constants::carleman_C(p)).epsilon(1e-12));
      CHECK(passes(one));
    }
    // Disk mean of x^4 is (1/3)(3/8) = 1/8.
    const auto re = check_thm_cp(kReZ, 2.0);
    CHECK(re.lhs == Approx(std::pow(1.0 / 8.0, 0.25)).epsilon(1e-12));
    CHECK(re.rhs == Approx(constants::carleman_C(2.0) * std::sqrt(0.5)).epsilon(1e-12));
    CHECK(passes(re));

    const auto fa = check_thm_cp(HarmonicFunction::fa(0.99), 2.0);
    CHECK(passes(fa));
    CHECK(fa.params.at("ratio") >= 1.2);
    CHECK(fa.params.at("ratio") <= constants::carleman_C(2.0));

    CHECK_THROWS_AS(check_thm_cp(HarmonicFunction::monomial(1), 2.0), NotRealValued);
    CHECK_THROWS_AS(check_thm_cp(kReZ, 1.0), OutOfRange);
  }

  TEST_CASE("c4 theorem") {
    CHECK(passes(check_thm_c4(pair({0.0, 1.0}, {0.0, 0.0, 1.0}))));
    const auto zero = check_thm_c4(pair({0.0}, {0.0}));
    CHECK(zero.trivial);
    CHECK(passes(zero));
    const auto z = check_thm_c4(HarmonicFunction::monomial(1));
    CHECK(z.lhs == Approx(std::pow(0.2, 0.125)).epsilon(1e-12));
    CHECK(z.rhs == Approx(2.56291545).epsilon(1e-8));
    CHECK(passes(z));
  }

  TEST_CASE("Riesz") {
    const auto z = check_riesz(HarmonicFunction::monomial(1), 2.0);
    CHECK(std::abs(z.params.at("upper_ratio") - std::sqrt(2.0)) <= 1e-10);
    CHECK(passes(z));

    const auto i = check_riesz(holo({{0.0, 1.0}}), 3.0);
    CHECK_FALSE(i.hypothesis_ok);
    CHECK(i.verdict() == Verdict::not_applicable);
    CHECK(i.params.at("hypothesis_angle") == Approx(pi / 6.0));

    const auto z2 = check_riesz(HarmonicFunction::monomial(2), 4.0);
    const double re_norm = std::pow(3.0 / 8.0, 0.25);
    CHECK(z2.parts[0].lhs == Approx(constants::riesz_L(4.0) * re_norm).epsilon(1e-12));
    CHECK(z2.parts[0].rhs == Approx(1.0).epsilon(1e-12));
    CHECK(z2.parts[1].rhs == Approx(constants::riesz_R(4.0) * re_norm).epsilon(1e-12));
    CHECK(passes(z2));

    // The hypothesis admits F = 1, yet L_3 ||Re F|| = L_3 > 1 = ||F||.
    const auto one = check_riesz(holo({1.0}), 3.0);
    CHECK(one.hypothesis_ok);
    CHECK(one.verdict() == Verdict::fail);

    const auto zero = check_riesz(holo({0.0}), 3.0);
    CHECK(zero.trivial);
    CHECK(passes(zero));
  }

  TEST_CASE("Bergman Riesz") {
    const auto z4 = check_bergman_riesz(HarmonicFunction::monomial(1), 4.0);
    REQUIRE(z4.parts.size() == 4);
    CHECK(z4.parts[1].lhs == Approx(std::pow(1.0 / 3.0, 0.25)).epsilon(1e-12));
    CHECK(z4.parts[1].rhs == Approx(constants::riesz_R(4.0) * std::pow(1.0 / 8.0, 0.25)).epsilon(1e-10));
    CHECK(passes(z4));
    CHECK(passes(check_bergman_riesz(HarmonicFunction::monomial(1), 3.0)));
    const auto zero = check_bergman_riesz(holo({0.0}), 3.0);
    CHECK(zero.trivial);
    CHECK(passes(zero));
    CHECK_THROWS_AS(check_bergman_riesz(HarmonicFunction::monomial(1), 2.0), OutOfRange);
  }

  TEST_CASE("newt") {
    const auto z = check_newt(HarmonicFunction::monomial(1), 4.0);
    CHECK(std::abs(z.margin) <= 1e-9);
    CHECK(passes(z));

    // F = z + z^2: exact boundary moments from Laurent algebra.
    const std::vector<cplx> c{0.0, 1.0, 1.0};
    const oracle::Laurent F = oracle::boundary_laurent(c, {});
    const oracle::Laurent u = oracle::boundary_laurent({0.0, 0.5, 0.5}, {0.0, 0.5, 0.5});
    const oracle::Laurent v = oracle::boundary_laurent({0.0, {0.0, -0.5}, {0.0, -0.5}}, {0.0, {0.0, -0.5}, {0.0, -0.5}});
    const double f4 = oracle::mean_abs_pow_even(F, 2);
    const double s4 = oracle::mean_abs_pow_even(u, 2) + oracle::mean_abs_pow_even(v, 2);
    CHECK(f4 == Approx(6.0));
    CHECK(s4 == Approx(4.5));
    const auto zz = check_newt(holo(c), 4.0);
    CHECK(zz.params.at("power_ratio") == Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(std::abs(zz.margin) <= 1e-9);
    CHECK(passes(zz));

    const auto p2 = check_newt(HarmonicFunction::monomial(1), 2.0);
    CHECK(p2.lhs == Approx(1.0).epsilon(1e-14));
    CHECK(p2.rhs == Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(p2.margin == Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));

    CHECK_THROWS_AS(check_newt(holo({1.0, 1.0}), 3.0), PreconditionFailed);
    CHECK_THROWS_AS(check_newt(HarmonicFunction::monomial(1), 1.5), OutOfRange);
    CHECK(passes(check_newt(holo({0.0}), 3.0)));
  }

  TEST_CASE("p = 4 norm identity on random functions") {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 30; ++trial) {
      const auto c = oracle::random_coeffs(1 + trial % 8, rng, true);
      const TaylorSeries F = series(c);
      const double whole = hardy_integral(HarmonicFunction::holomorphic(F), 4.0).value;
      const double parts = hardy_integral(HarmonicFunction::real_part(F), 4.0).value +
                           hardy_integral(HarmonicFunction::imag_part(F), 4.0).value;
      CHECK(whole == Approx(4.0 / 3.0 * parts).epsilon(1e-9));
      CHECK(whole == Approx(oracle::mean_abs_pow_even(oracle::boundary_laurent(c, {}), 2)).epsilon(1e-12));
    }
  }

  TEST_CASE("log-Laplacian") {
    CHECK(log_laplacian(series({0.0, 1.0}), series({1.0}), 0.0) == Approx(4.0).epsilon(1e-15));
    CHECK(log_laplacian(series({{2.0, 1.0}}), series({0.0}), {0.3, 0.1}) == Approx(0.0).scale(1.0));
    CHECK_THROWS_AS(log_laplacian(series({0.0, 1.0}), series({0.0, 2.0}), 0.0), DegenerateZero);

    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = oracle::random_coeffs(5, rng);
      const auto b = oracle::random_coeffs(5, rng);
      auto logsum = [&](double x, double y) {
        const cplx z{x, y};
        return std::log(std::norm(oracle::horner(a, z)) + std::norm(oracle::horner(b, z)));
      };
      for (int k = 0; k < 20; ++k) {
        const cplx z = random_point(rng, 0.9);
        const double value = log_laplacian(series(a), series(b), z);
        const double fd = oracle::richardson_laplacian(logsum, z.real(), z.imag());
        CHECK(value == Approx(fd).epsilon(1e-5).scale(std::abs(value)));
        CHECK(value >= -1e-12 * (1.0 + std::abs(value)));
      }
    }
  }

  TEST_CASE("ipl") {
    const auto one = check_ipl(series({1.0}), series({0.0}), 1.5);
    CHECK(one.lhs == Approx(1.0));
    CHECK(one.rhs == Approx(1.0));
    CHECK(passes(one));

    const auto z = check_ipl(series({0.0, 1.0}), series({0.0}), 1.0);
    CHECK(z.lhs == Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(z.rhs == Approx(1.0).epsilon(1e-14));

    const auto z1 = check_ipl(series({0.0, 1.0}), series({1.0}), 1.0);
    CHECK(z1.lhs == Approx(7.0 / 3.0).epsilon(1e-14));
    CHECK(z1.rhs == Approx(4.0).epsilon(1e-14));
    CHECK(passes(z1));

    CHECK(passes(check_ipl(series({0.0}), series({0.0}), 1.0)));
  }

  TEST_CASE("abx trace") {
    const auto z = abx_trace(series({0.0, 1.0}), series({0.0}));
    CHECK(z.A == Approx(1.0));
    CHECK(z.B == Approx(0.0));
    CHECK(z.X == Approx(1.0));
    for (const auto& r : z.reports) CHECK(passes(r));

    const double s = std::sqrt(0.5);
    const auto even = abx_trace(series({0.0, s}), series({0.0, s}));
    CHECK(even.A == Approx(1.0).epsilon(1e-14));
    CHECK(even.B == Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(even.reports[0].margin) < 1e-14);
    for (const auto& r : even.reports) CHECK(passes(r));

    const auto zero = abx_trace(series({0.0}), series({0.0}));
    for (const auto& r : zero.reports) {
      CHECK(r.margin == 0.0);
      CHECK(r.trivial);
      CHECK(passes(r));
    }

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
      const auto t = abx_trace(series(oracle::random_coeffs(6, rng)), series(oracle::random_coeffs(6, rng)));
      for (const auto& r : t.reports) CHECK(passes(r));
    }
  }

  TEST_CASE("regularized Laplacians") {
    const auto one = eps_laplacians(series({0.0, 1.0}), EpsFamily::make(1.0, 2.0), 0.0);
    CHECK(one.dF == Approx(4.0).epsilon(1e-15));

    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
      const auto c = oracle::random_coeffs(4, rng);
      const TaylorSeries F = series(c);
      const double eps = trial % 2 == 0 ? 0.01 : 1.0;
      const auto d4 = eps_laplacians(F, EpsFamily::make(eps, 4.0), random_point(rng));
      CHECK(std::abs(d4.dU + d4.dV - 0.75 * d4.dF) <= 1e-12 * std::abs(d4.dF));

      const double p = std::vector<double>{2.5, 3.0, 4.0, 5.0}[trial % 4];
      const EpsFamily fam = EpsFamily::make(0.5, p);
      const cplx z = random_point(rng, 0.9);
      const auto d = eps_laplacians(F, fam, z);
      auto field = [&](int which) {
        return [&, which](double x, double y) {
          const cplx f = oracle::horner(c, cplx{x, y});
          const double base = which == 0 ? fam.q * fam.eps + std::norm(f)
                              : which == 1 ? fam.eps + f.real() * f.real()
                                           : fam.eps + f.imag() * f.imag();
          return std::pow(base, p / 2.0);
        };
      };
      CHECK(d.dF == Approx(oracle::richardson_laplacian(field(0), z.real(), z.imag())).epsilon(1e-5));
      CHECK(d.dU == Approx(oracle::richardson_laplacian(field(1), z.real(), z.imag())).epsilon(1e-5));
      CHECK(d.dV == Approx(oracle::richardson_laplacian(field(2), z.real(), z.imag())).epsilon(1e-5));
    }
    CHECK_THROWS_AS(EpsFamily::make(0.0, 3.0), OutOfRange);
  }

  TEST_CASE("Q(s)") {
    for (double r : {0.3, 0.7}) {
      for (double eps : {0.01, 1.0}) CHECK(std::abs(q_value(pi / 4.0, r, eps, 4.0) - 1.0) <= 1e-15);
    }
    // Q equals (p/(p-1)) (dU + dV) / dF at |f| = r, arg f = s, using F = z.
    for (double p : {2.5, 3.0, 5.0, 6.0}) {
      for (double s : {0.0, 0.3, pi / 4.0, 1.1, 2.0}) {
        const double r = 0.7;
        const double eps = 0.1;
        const auto d = eps_laplacians(series({0.0, 1.0}), EpsFamily::make(eps, p), std::polar(r, s));
        const double ref = p / (p - 1.0) * (d.dU + d.dV) / d.dF;
        CHECK(q_value(s, r, eps, p) == Approx(ref).epsilon(1e-12));
        CHECK(q_at_zero_closed_form(eps / (r * r), p) == Approx(q_value(0.0, r, eps, p)).epsilon(1e-13));
        CHECK(q_at_quarter_pi_closed_form(eps / (r * r), p) == Approx(q_value(pi / 4.0, r, eps, p)).epsilon(1e-13));
      }
    }
    const auto low = q_report(0.7, 0.1, 3.0);
    CHECK(low.params.at("q_min") >= 1.0 - 1e-9);
    CHECK(passes(low));
    const auto high = q_report(0.7, 0.1, 5.0);
    CHECK(high.params.at("q_max") <= 1.0 + 1e-9);
    CHECK(passes(high));
  }

  TEST_CASE("pointwise lemma") {
    std::mt19937_64 rng(50);
    const TaylorSeries F = series({0.0, 1.0, 1.0});
    for (int k = 0; k < 50; ++k) {
      const cplx z = random_point(rng);
      for (double eps : {0.01, 1.0}) {
        const auto four = check_lemma_new(F, 4.0, eps, z);
        CHECK(std::abs(four.margin) <= 1e-12 * (1.0 + std::abs(four.lhs)));
        const auto three = check_lemma_new(F, 3.0, eps, z);
        CHECK(three.margin >= -1e-12);
        CHECK(three.parts.front().label == "lower");
        const auto six = check_lemma_new(F, 6.0, eps, z);
        CHECK(six.margin >= -1e-12);
        CHECK(six.parts.front().label == "upper");
      }
    }
  }

  TEST_CASE("Green identity") {
    const SmoothField quartic{[](cplx z) { return std::pow(std::norm(z), 2); },
                              [](cplx z) { return 16.0 * std::norm(z); }};
    const auto g = green_check(quartic, 0.5);
    // Both sides are 8 pi r^4 = pi / 2.
    CHECK(g.lhs == Approx(pi / 2.0).epsilon(1e-9));
    CHECK(g.rhs == Approx(pi / 2.0).epsilon(1e-9));
    CHECK(passes(g));

    const SmoothField quartic_fd{quartic.value, {}};
    CHECK(passes(green_check(quartic_fd, 0.5)));

    const SmoothField one{[](cplx) { return 1.0; }, [](cplx) { return 0.0; }};
    const auto c = green_check(one, 0.5);
    CHECK(c.lhs == 0.0);
    CHECK(c.rhs == 0.0);
    CHECK(passes(c));

    CHECK(passes(green_check(eps_field(series({0.0, 1.0}), EpsFamily::make(0.5, 3.0)), 0.8)));
    CHECK_THROWS_AS(green_check(one, 1.0), OutOfRange);
  }

  TEST_CASE("fd Laplacian of a smooth field") {
    const auto fn = [](cplx z) { return std::exp(z.real()) * std::cos(2.0 * z.imag()); };
    // Laplacian of e^x cos 2y is (1 - 4) e^x cos 2y.
    const cplx z{0.2, -0.3};
    CHECK(fd_laplacian(fn, z) == Approx(-3.0 * fn(z)).epsilon(1e-6));
  }

  TEST_CASE("zero function is trivial everywhere") {
    const auto zero_holo = holo({0.0});
    const auto zero_real = pair({0.0}, {0.0});
    CHECK(passes(check_isoperimetric(zero_holo)));
    CHECK(check_isoperimetric(zero_holo).trivial);
    for (double p : {1.5, 3.0}) {
      const auto cp = check_thm_cp(zero_real, p);
      CHECK(cp.trivial);
      CHECK(passes(cp));
    }
    CHECK(passes(check_newt(zero_holo, 3.0)));
    CHECK(check_ipl(series({0.0}), series({0.0}), 2.0).trivial);
  }
}
