#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "diskineq/constants.hpp"
#include "diskineq/errors.hpp"
#include "diskineq/json_io.hpp"
#include "diskineq/suite.hpp"

using namespace diskineq;
using doctest::Approx;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the CLI with stderr discarded; returns its exit status and stdout.
Run run_cli(const std::string& args) {
  const std::string cmd = std::string(DISKINEQ_CLI) + " " + args + " 2>/dev/null";
  Run run;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) run.out.append(buf.data(), n);
  const int raw = ::pclose(pipe);
  run.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return run;
}

}  // namespace

TEST_SUITE("suite") {
  TEST_CASE("theorem names round trip") {
    for (auto t : {Theorem::isoper, Theorem::carleman_exp, Theorem::cp, Theorem::c4, Theorem::riesz, Theorem::hed,
                   Theorem::newt, Theorem::ipl, Theorem::lemma_new, Theorem::green, Theorem::abx}) {
      CHECK(parse_theorem(theorem_name(t)) == t);
    }
    CHECK_FALSE(parse_theorem("carleman").has_value());
  }

  TEST_CASE("random classes have their structure") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
      const auto u = random_function(FunctionClass::real_harmonic, 6, rng);
      CHECK(is_real(u));
      CHECK(u.polynomial_degree() <= 6);
      const auto F = random_function(FunctionClass::holomorphic_vanishing, 6, rng);
      CHECK(F.is_holomorphic());
      CHECK(std::abs(eval(F, cplx{0.0})) == 0.0);
      const auto f = random_function(FunctionClass::complex_harmonic, 6, rng);
      const auto& tp = std::get<TaylorPair>(f.variant());
      CHECK(tp.h[0] == cplx{0.0});
    }
    CHECK_THROWS_AS(random_function(FunctionClass::holomorphic, -1, rng), OutOfRange);
  }

  TEST_CASE("suites are deterministic and pass") {
    VerifyOptions opts;
    opts.p = 3.0;
    opts.seed = 11;
    for (auto thm : {Theorem::cp, Theorem::newt, Theorem::lemma_new, Theorem::abx}) {
      const auto a = run_suite(thm, opts, 20, 6);
      const auto b = run_suite(thm, opts, 20, 6);
      REQUIRE(a.size() == 20);
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].error.empty());
        CHECK(function_to_json(a[i].function) == function_to_json(b[i].function));
        REQUIRE(a[i].reports.size() == b[i].reports.size());
        for (std::size_t k = 0; k < a[i].reports.size(); ++k) {
          CHECK(a[i].reports[k].margin == b[i].reports[k].margin);
          CHECK(a[i].reports[k].verdict() == Verdict::pass);
        }
      }
    }
  }

  TEST_CASE("verify dispatches pairs and sample points") {
    VerifyOptions opts;
    opts.p = 1.0;
    const auto ipl = verify(Theorem::ipl, HarmonicFunction::taylor_pair(TaylorSeries({0.0, 1.0}), TaylorSeries({1.0})),
                            opts);
    REQUIRE(ipl.size() == 1);
    CHECK(ipl[0].lhs == Approx(7.0 / 3.0));
    opts.p = 3.0;
    opts.points = 7;
    const auto lemma = verify(Theorem::lemma_new, HarmonicFunction::monomial(2), opts);
    CHECK(lemma[0].params.at("points") == 7.0);
    CHECK(verify(Theorem::abx, HarmonicFunction::monomial(1), opts).size() == 4);
  }
}

TEST_SUITE("json") {
  TEST_CASE("function descriptors round trip") {
    const json pair = json::parse(R"({"type":"taylor_pair","g":[[0,0],[1,0.5]],"h":[0,2]})");
    const HarmonicFunction f = function_from_json(pair);
    CHECK(eval(f, cplx{0.5, 0.0}) == cplx{0.5 + 1.0, 0.25});
    CHECK(function_to_json(function_from_json(function_to_json(f))) == function_to_json(f));

    CHECK(eval(function_from_json(json::parse(R"({"type":"monomial","n":3})")), cplx{0.5}) == cplx{0.125});
    CHECK(function_from_json(json::parse(R"({"type":"fa","a":0.5})")).polynomial_degree() < 0);
    const auto e = function_from_json(json::parse(R"({"type":"exp","base":{"type":"taylor_pair","g":[0,0.5],"h":[0,0.5]}})"));
    CHECK(std::abs(eval(e, cplx{0.3}) - std::exp(0.3)) < 1e-14);
  }

  TEST_CASE("bad descriptors throw") {
    for (const char* text : {R"({"type":"spline"})", R"({"type":"monomial"})", R"({"type":"fa","a":"x"})",
                             R"([1,2])", R"({"type":"taylor_pair","g":[[1,2,3]]})"}) {
      CHECK_THROWS_AS(function_from_json(json::parse(text)), PreconditionFailed);
    }
  }

  TEST_CASE("report pass field") {
    const json pass = report_to_json(check_isoperimetric(HarmonicFunction::monomial(1)));
    CHECK(pass.at("pass") == true);
    const json na = report_to_json(check_riesz(HarmonicFunction::holomorphic(TaylorSeries({cplx{0.0, 1.0}})), 3.0));
    CHECK(na.at("pass") == "not-applicable");
    const json table = constants_to_json(constants::table(4.0));
    CHECK(table.at("C_p").get<double>() == Approx(2.56291544774151).epsilon(1e-12));
  }
}

TEST_SUITE("cli") {
  TEST_CASE("exit codes") {
    CHECK(run_cli("constants --p 4").status == 0);
    CHECK(run_cli("verify --thm newt --p 4 --func '{\"type\":\"monomial\",\"n\":1}'").status == 0);
    // F = 1 meets the Riesz hypothesis but L_3 > 1 breaks the lower bound.
    CHECK(run_cli("verify --thm riesz --p 3 --func '{\"type\":\"monomial\",\"n\":0}'").status == 2);
    CHECK(run_cli("verify --thm nope --func '{\"type\":\"monomial\",\"n\":1}'").status == 1);
    CHECK(run_cli("verify --thm cp --func '{\"type\":\"bogus\"}'").status == 1);
    CHECK(run_cli("verify --thm cp --suite random --count 3").status == 1);
    CHECK(run_cli("frobnicate").status == 1);
  }

  TEST_CASE("constants output") {
    const Run run = run_cli("constants --p 4");
    const json j = json::parse(run.out);
    CHECK(j.at("constants").at("C_p").get<double>() == Approx(2.56291544774151).epsilon(1e-12));
    CHECK(j.contains("config"));
  }

  TEST_CASE("random suite run is reproducible") {
    const std::string args = "verify --thm cp --p 3 --suite random --count 100 --seed 7 --degree 8";
    const Run a = run_cli(args);
    const Run b = run_cli(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    const json j = json::parse(a.out);
    CHECK(j.at("summary").at("passed") == 100);
    CHECK(j.at("summary").at("failed") == 0);
  }

  TEST_CASE("qsurface CSV") {
    const Run run = run_cli("qsurface --p 4 --r 0.5 --eps 0.1 --grid 8");
    CHECK(run.status == 0);
    CHECK(run.out.rfind("s,Q\n", 0) == 0);
    std::size_t lines = 0;
    for (char c : run.out) lines += c == '\n';
    CHECK(lines == 9);
  }
}
