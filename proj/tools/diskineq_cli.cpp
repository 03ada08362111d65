// diskineq: norms, constants, inequality checks, suites and searches.
//
// Exit status: 0 when every applicable check passes, 2 on a margin failure,
// 1 on usage or evaluation errors.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "diskineq/constants.hpp"
#include "diskineq/errors.hpp"
#include "diskineq/inequal.hpp"
#include "diskineq/json_io.hpp"
#include "diskineq/norms.hpp"
#include "diskineq/search.hpp"
#include "diskineq/suite.hpp"

namespace {

using diskineq::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitFail = 2;

struct Config {
  std::string func;
  std::string space = "hardy";
  std::string thm;
  std::string suite;
  std::string out;
  std::string format = "json";
  std::string target = "cp";
  std::string kind = "trig_poly";
  double p = 2.0;
  double eps = 0.01;
  double r = 0.8;
  double tol = diskineq::kDefaultTol;
  std::size_t count = 100;
  std::uint64_t seed = 0;
  int degree = 8;
  int points = 20;
  int restarts = 20;
  std::size_t max_evals = 4000;
  std::size_t grid = diskineq::kQGridSize;
  std::vector<double> a_values{0.9, 0.99, 0.999};
  bool all_cases = false;
  bool seed_given = false;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw diskineq::PreconditionFailed("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void emit_json(const Config& cfg, const json& j) {
  Output out(cfg.out);
  out.stream() << j.dump(2) << '\n';
}

diskineq::HarmonicFunction load_function(const std::string& text) {
  if (text.empty()) throw diskineq::PreconditionFailed("a function descriptor (--func) is required");
  std::string body = text;
  if (text.find('{') == std::string::npos) {
    std::ifstream in(text);
    if (!in) throw diskineq::PreconditionFailed("cannot read function file " + text);
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    throw diskineq::PreconditionFailed(std::string("function descriptor is not valid JSON: ") + e.what());
  }
  return diskineq::function_from_json(j);
}

json base_config(const std::string& sub, const Config& cfg) {
  return {{"subcommand", sub}, {"p", cfg.p}, {"tol", cfg.tol}};
}

int run_norm(const Config& cfg) {
  const auto f = load_function(cfg.func);
  diskineq::NormResult r;
  if (cfg.space == "hardy") {
    r = diskineq::hardy_norm(f, cfg.p, cfg.tol);
  } else if (cfg.space == "bergman") {
    r = diskineq::bergman_norm(f, cfg.p, cfg.tol);
  } else {
    throw diskineq::PreconditionFailed("--space must be hardy or bergman");
  }
  json config = base_config("norm", cfg);
  config["space"] = cfg.space;
  config["function"] = diskineq::function_to_json(f);
  emit_json(cfg, {{"config", config}, {"result", diskineq::norm_to_json(r)}});
  return kExitOk;
}

int run_constants(const Config& cfg) {
  json config = {{"subcommand", "constants"}, {"p", cfg.p}};
  emit_json(cfg, {{"config", config}, {"constants", diskineq::constants_to_json(diskineq::constants::table(cfg.p))}});
  return kExitOk;
}

struct Tally {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t not_applicable = 0;
  std::size_t errors = 0;

  void add(const std::vector<diskineq::InequalityReport>& reports) {
    for (const auto& r : reports) {
      switch (r.verdict()) {
        case diskineq::Verdict::pass:
          ++passed;
          break;
        case diskineq::Verdict::fail:
          ++failed;
          break;
        case diskineq::Verdict::not_applicable:
          ++not_applicable;
          break;
      }
    }
  }
  int exit_code() const { return failed > 0 ? kExitFail : errors > 0 ? kExitError : kExitOk; }
  json to_json() const {
    return {{"passed", passed}, {"failed", failed}, {"not_applicable", not_applicable}, {"errors", errors}};
  }
};

json reports_json(const std::vector<diskineq::InequalityReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(diskineq::report_to_json(r));
  return arr;
}

bool any_failure(const std::vector<diskineq::InequalityReport>& reports) {
  for (const auto& r : reports) {
    if (r.verdict() == diskineq::Verdict::fail) return true;
  }
  return false;
}

int run_verify(const Config& cfg) {
  const auto thm = diskineq::parse_theorem(cfg.thm);
  if (!thm) throw diskineq::PreconditionFailed("unknown theorem \"" + cfg.thm + "\"");
  diskineq::VerifyOptions opts;
  opts.p = cfg.p;
  opts.eps = cfg.eps;
  opts.r = cfg.r;
  opts.tol = cfg.tol;
  opts.seed = cfg.seed;
  opts.points = cfg.points;

  json config = base_config("verify", cfg);
  config["thm"] = cfg.thm;
  config["eps"] = cfg.eps;
  config["r"] = cfg.r;
  config["points"] = cfg.points;
  config["seed"] = cfg.seed;

  Tally tally;
  json doc;
  if (cfg.suite.empty()) {
    const auto f = load_function(cfg.func);
    config["function"] = diskineq::function_to_json(f);
    const auto reports = diskineq::verify(*thm, f, opts);
    tally.add(reports);
    doc = {{"config", config}, {"reports", reports_json(reports)}};
  } else {
    if (cfg.suite != "random") throw diskineq::PreconditionFailed("--suite must be \"random\"");
    if (!cfg.seed_given) throw diskineq::PreconditionFailed("randomized suites require --seed");
    config["suite"] = cfg.suite;
    config["count"] = cfg.count;
    config["degree"] = cfg.degree;
    const auto cases = diskineq::run_suite(*thm, opts, cfg.count, cfg.degree);
    json listed = json::array();
    json counterexamples = json::array();
    for (const auto& c : cases) {
      tally.add(c.reports);
      if (!c.error.empty()) ++tally.errors;
      const bool failed = any_failure(c.reports);
      if (failed || !c.error.empty() || cfg.all_cases) {
        json entry = {{"index", c.index}, {"function", diskineq::function_to_json(c.function)},
                      {"reports", reports_json(c.reports)}};
        if (!c.error.empty()) entry["error"] = c.error;
        (failed ? counterexamples : listed).push_back(std::move(entry));
      }
    }
    doc = {{"config", config}, {"cases", listed}, {"counterexamples", counterexamples}};
  }
  doc["summary"] = tally.to_json();
  emit_json(cfg, doc);
  return tally.exit_code();
}

int run_qsurface(const Config& cfg) {
  if (cfg.grid < 2) throw diskineq::PreconditionFailed("--grid must be at least 2");
  Output out(cfg.out);
  std::ostream& os = out.stream();
  os << "s,Q\n";
  for (std::size_t k = 0; k < cfg.grid; ++k) {
    const double s = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(cfg.grid);
    os << format_double(s) << ',' << format_double(diskineq::q_value(s, cfg.r, cfg.eps, cfg.p)) << '\n';
  }
  return kExitOk;
}

int run_sweep(const Config& cfg) {
  const auto sweep = diskineq::sweep_fa(cfg.p, cfg.a_values, cfg.tol);
  if (cfg.format == "csv") {
    Output out(cfg.out);
    std::ostream& os = out.stream();
    os << "a,ratio,err_est\n";
    for (const auto& pt : sweep.points) {
      os << format_double(pt.a) << ',' << format_double(pt.ratio) << ',' << format_double(pt.err_est) << '\n';
    }
    return kExitOk;
  }
  if (cfg.format != "json") throw diskineq::PreconditionFailed("--format must be json or csv");
  json config = base_config("sweep-fa", cfg);
  config["a"] = cfg.a_values;
  emit_json(cfg, {{"config", config}, {"sweep", diskineq::sweep_to_json(sweep)}});
  return kExitOk;
}

int run_search(const Config& cfg) {
  diskineq::FamilySpec spec;
  const auto target = diskineq::parse_target(cfg.target);
  if (!target) throw diskineq::PreconditionFailed("unknown search target \"" + cfg.target + "\"");
  spec.target = *target;
  if (cfg.kind == "trig_poly") {
    spec.kind = diskineq::FamilyKind::trig_poly;
  } else if (cfg.kind == "fa_sweep") {
    spec.kind = diskineq::FamilyKind::fa_sweep;
  } else {
    throw diskineq::PreconditionFailed("--kind must be trig_poly or fa_sweep");
  }
  spec.degree = cfg.degree;
  spec.p = cfg.p;
  diskineq::SearchOptions opts;
  opts.tol = cfg.tol;
  opts.max_evaluations = cfg.max_evals;
  const auto result = diskineq::extremal_search(spec, cfg.seed, cfg.restarts, opts);

  json config = base_config("search", cfg);
  config["target"] = cfg.target;
  config["kind"] = cfg.kind;
  config["degree"] = cfg.degree;
  config["seed"] = cfg.seed;
  config["restarts"] = cfg.restarts;
  config["max_evals"] = cfg.max_evals;
  json doc = {{"config", config}, {"result", diskineq::search_to_json(result)}};
  if (result.counterexample) {
    std::cerr << "COUNTEREXAMPLE: ratio " << format_double(result.best_ratio) << " exceeds constant "
              << format_double(result.constant) << " by more than err_est " << format_double(result.err_est)
              << '\n';
  }
  emit_json(cfg, doc);
  return result.counterexample ? kExitFail : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hardy/Bergman norm inequalities on the unit disk"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "Exponent");
    sub->add_option("--tol", cfg.tol, "Relative quadrature tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out, "Output file (default stdout)");
  };

  auto* norm = app.add_subcommand("norm", "Hardy or Bergman norm of a function");
  add_common(norm);
  norm->add_option("--func", cfg.func, "Function descriptor: inline JSON or file path")->required();
  norm->add_option("--space", cfg.space, "hardy | bergman");

  auto* consts = app.add_subcommand("constants", "Constant table at exponent p");
  consts->add_option("--p", cfg.p, "Exponent")->required();
  consts->add_option("--out", cfg.out, "Output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Check an inequality on one function or a random suite");
  add_common(verify);
  verify->add_option("--thm", cfg.thm,
                     "isoper | carleman-exp | cp | c4 | riesz | hed | newt | ipl | lemma-new | green | abx")
      ->required();
  auto* func_opt = verify->add_option("--func", cfg.func, "Function descriptor: inline JSON or file path");
  auto* suite_opt = verify->add_option("--suite", cfg.suite, "random");
  func_opt->excludes(suite_opt);
  verify->add_option("--count", cfg.count, "Suite size");
  verify->add_option("--seed", cfg.seed, "Seed")->each([&](const std::string&) { cfg.seed_given = true; });
  verify->add_option("--degree", cfg.degree, "Maximum random degree");
  verify->add_option("--eps", cfg.eps, "Regularization parameter")->check(CLI::PositiveNumber);
  verify->add_option("--r", cfg.r, "Circle radius for the Green check");
  verify->add_option("--points", cfg.points, "Sample points for pointwise checks");
  verify->add_flag("--all-cases", cfg.all_cases, "List every suite case, not only failures");

  auto* qsurface = app.add_subcommand("qsurface", "CSV of Q(s) over a uniform s-grid");
  qsurface->add_option("--p", cfg.p, "Exponent")->required();
  qsurface->add_option("--r", cfg.r, "|f|")->required();
  qsurface->add_option("--eps", cfg.eps, "Regularization parameter")->required()->check(CLI::PositiveNumber);
  qsurface->add_option("--grid", cfg.grid, "Number of s samples on [0, 2 pi)");
  qsurface->add_option("--out", cfg.out, "Output file (default stdout)");

  auto* sweep = app.add_subcommand("sweep-fa", "Ratio sweep along the f_a family");
  add_common(sweep);
  sweep->add_option("--a", cfg.a_values, "a-values in [0, 1)")->delimiter(',');
  sweep->add_option("--format", cfg.format, "json | csv");

  auto* search = app.add_subcommand("search", "Nelder-Mead search for the largest inequality ratio");
  add_common(search);
  search->add_option("--target", cfg.target, "cp | c4 | riesz_upper | riesz_lower | newt");
  search->add_option("--kind", cfg.kind, "trig_poly | fa_sweep");
  search->add_option("--degree", cfg.degree, "Polynomial degree (<= 32)");
  search->add_option("--seed", cfg.seed, "Seed");
  search->add_option("--restarts", cfg.restarts, "Restarts")->check(CLI::PositiveNumber);
  search->add_option("--max-evals", cfg.max_evals, "Objective evaluations per restart");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*norm) return run_norm(cfg);
    if (*consts) return run_constants(cfg);
    if (*verify) {
      if (cfg.suite.empty() && cfg.func.empty()) throw diskineq::PreconditionFailed("verify needs --func or --suite");
      return run_verify(cfg);
    }
    if (*qsurface) return run_qsurface(cfg);
    if (*sweep) {
      if (sweep->count("--tol") == 0) cfg.tol = 1e-8;
      return run_sweep(cfg);
    }
    if (*search) {
      if (search->count("--tol") == 0) cfg.tol = 1e-9;
      return run_search(cfg);
    }
  } catch (const diskineq::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
