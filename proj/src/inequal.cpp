#include "diskineq/inequal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "diskineq/constants.hpp"
#include "diskineq/errors.hpp"
#include "diskineq/norms.hpp"

namespace diskineq {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kOriginZero = 1e-14;

double roundoff(double a, double b) { return kRoundoffAllowance * (std::abs(a) + std::abs(b)); }

MarginPart part(std::string label, double lhs, double rhs, double constant, double err) {
  return MarginPart{std::move(label), lhs, rhs, constant, rhs - lhs, err + roundoff(lhs, rhs)};
}

/// Error of c * a * b given errors of a and b.
double product_error(double a, double ea, double b, double eb) {
  return std::abs(a) * eb + std::abs(b) * ea + ea * eb;
}

void absorb(QuadratureInfo& q, std::size_t n, std::size_t m) {
  q.n = std::max(q.n, n);
  q.m = std::max(q.m, m);
}

void absorb(QuadratureInfo& q, const NormResult& r) { absorb(q, r.n, r.m); }
void absorb(QuadratureInfo& q, const Estimate& e) { absorb(q, e.n, e.m); }

/// Copies the tightest part to the top level.
void finalize(InequalityReport& report) {
  const auto tightest = std::min_element(
      report.parts.begin(), report.parts.end(),
      [](const MarginPart& a, const MarginPart& b) { return a.margin + a.err_est < b.margin + b.err_est; });
  report.lhs = tightest->lhs;
  report.rhs = tightest->rhs;
  report.constant = tightest->constant;
  report.margin = tightest->margin;
  report.quadrature.err_est = tightest->err_est;
}

void require_real(const HarmonicFunction& u, const char* who) {
  if (!is_real(u)) throw NotRealValued(std::string(who) + " requires a real-valued harmonic function");
}

TaylorSeries require_holomorphic(const HarmonicFunction& f, const char* who) {
  if (!f.is_holomorphic()) {
    throw PreconditionFailed(std::string(who) + " requires a holomorphic function (h = 0)");
  }
  return f.as_holomorphic();
}

/// F(0) = 0, or arg F(0) stays at least `angle` away from pi/2.
bool riesz_hypothesis(cplx f0, double angle) {
  if (std::abs(f0) <= kOriginZero) return true;
  return std::abs(std::arg(f0) - pi / 2.0) >= angle;
}

/// Values of a holomorphic series on a ring.
void sample_series(const TaylorSeries& s, double r, std::span<const cplx> nodes, std::span<cplx> out) {
  for (std::size_t k = 0; k < nodes.size(); ++k) out[k] = s(r * nodes[k]);
}

AdaptiveOptions polynomial_options(std::size_t degree, double power, double tol) {
  return norm_options(HarmonicFunction::holomorphic(TaylorSeries::monomial(degree)), power, tol);
}

}  // namespace

bool InequalityReport::pass() const noexcept {
  return std::all_of(parts.begin(), parts.end(), [](const MarginPart& p) { return p.pass(); });
}

Verdict InequalityReport::verdict() const noexcept {
  if (!hypothesis_ok) return Verdict::not_applicable;
  return pass() ? Verdict::pass : Verdict::fail;
}

InequalityReport check_isoperimetric(const HarmonicFunction& f, double tol) {
  require_holomorphic(f, "isoperimetric check");
  InequalityReport report;
  report.name = "isoper";
  report.trivial = f.is_zero();
  const NormResult b2 = bergman_norm(f, 2.0, tol);
  const NormResult h1 = hardy_norm(f, 1.0, tol);
  absorb(report.quadrature, b2);
  absorb(report.quadrature, h1);
  const double lhs = b2.value * b2.value;
  const double rhs = h1.value * h1.value;
  report.parts.push_back(part("isoper", lhs, rhs, 1.0,
                              product_error(b2.value, b2.err_est, b2.value, b2.err_est) +
                                  product_error(h1.value, h1.err_est, h1.value, h1.err_est)));
  finalize(report);
  return report;
}

InequalityReport check_carleman_exp(const HarmonicFunction& u, double tol) {
  require_real(u, "Carleman exponential check");
  InequalityReport report;
  report.name = "carleman-exp";
  const HarmonicFunction e = HarmonicFunction::exp_of(u, 1.0);
  const Estimate area = bergman_integral(e, 2.0, tol);
  const Estimate boundary = hardy_integral(e, 1.0, tol);
  absorb(report.quadrature, area);
  absorb(report.quadrature, boundary);
  const double rhs = boundary.value * boundary.value;
  report.parts.push_back(part("carleman-exp", area.value, rhs, 1.0,
                              area.err_est + product_error(boundary.value, boundary.err_est,
                                                           boundary.value, boundary.err_est)));
  finalize(report);
  return report;
}

InequalityReport check_thm_cp(const HarmonicFunction& u, double p, double tol) {
  require_real(u, "cp check");
  const double c = constants::carleman_C(p);
  InequalityReport report;
  report.name = "cp";
  report.params["p"] = p;
  report.trivial = u.is_zero();
  const NormResult b = bergman_norm(u, 2.0 * p, tol);
  const NormResult h = hardy_norm(u, p, tol);
  absorb(report.quadrature, b);
  absorb(report.quadrature, h);
  if (h.value > 0.0) report.params["ratio"] = b.value / h.value;
  report.parts.push_back(part("cp", b.value, c * h.value, c, b.err_est + c * h.err_est));
  finalize(report);
  return report;
}

InequalityReport check_thm_c4(const HarmonicFunction& f, double tol) {
  const double c = constants::c4_constant();
  InequalityReport report;
  report.name = "c4";
  report.trivial = f.is_zero();
  if (report.trivial) report.note = "f is identically zero; 0 <= 0 holds trivially";
  const NormResult b = bergman_norm(f, 8.0, tol);
  const NormResult h = hardy_norm(f, 4.0, tol);
  absorb(report.quadrature, b);
  absorb(report.quadrature, h);
  if (h.value > 0.0) report.params["ratio"] = b.value / h.value;
  report.parts.push_back(part("c4", b.value, c * h.value, c, b.err_est + c * h.err_est));
  finalize(report);
  return report;
}

InequalityReport check_riesz(const HarmonicFunction& F, double p, double tol) {
  const TaylorSeries series = require_holomorphic(F, "Riesz check");
  const double R = constants::riesz_R(p);
  const double L = constants::riesz_L(p);
  const double pbar = constants::conjugate_max(p);
  const double angle = pi / (2.0 * pbar);

  InequalityReport report;
  report.name = "riesz";
  report.params["p"] = p;
  report.params["pbar"] = pbar;
  report.params["hypothesis_angle"] = angle;
  report.note = "hypothesis: F(0) = 0 or |arg F(0) - pi/2| >= pi/(2 pbar)";
  report.trivial = series.is_zero();
  report.hypothesis_ok = riesz_hypothesis(series[0], angle);

  const NormResult whole = hardy_norm(F, p, tol);
  const NormResult re = hardy_norm(HarmonicFunction::real_part(series), p, tol);
  absorb(report.quadrature, whole);
  absorb(report.quadrature, re);
  if (re.value > 0.0) report.params["upper_ratio"] = whole.value / re.value;
  report.parts.push_back(part("lower", L * re.value, whole.value, L, L * re.err_est + whole.err_est));
  report.parts.push_back(part("upper", whole.value, R * re.value, R, whole.err_est + R * re.err_est));
  finalize(report);
  return report;
}

InequalityReport check_bergman_riesz(const HarmonicFunction& F, double p, double tol) {
  if (!(p > 2.0)) throw OutOfRange("Bergman Riesz check requires p > 2, got " + std::to_string(p));
  const TaylorSeries series = require_holomorphic(F, "Bergman Riesz check");
  const double R = constants::riesz_R(p);
  const double L = constants::riesz_L(p);
  const double angle = pi / (2.0 * p);

  InequalityReport report;
  report.name = "hed";
  report.params["p"] = p;
  report.params["hypothesis_angle"] = angle;
  report.note = "hypothesis: F(0) = 0 or |arg F(0) - pi/2| >= pi/(2p)";
  report.trivial = series.is_zero();
  report.hypothesis_ok = riesz_hypothesis(series[0], angle);

  const NormResult whole = bergman_norm(F, p, tol);
  const NormResult re = bergman_norm(HarmonicFunction::real_part(series), p, tol);
  const NormResult im = bergman_norm(HarmonicFunction::imag_part(series), p, tol);
  for (const NormResult* r : {&whole, &re, &im}) absorb(report.quadrature, *r);

  report.parts.push_back(part("re_lower", L * re.value, whole.value, L, L * re.err_est + whole.err_est));
  report.parts.push_back(part("re_upper", whole.value, R * re.value, R, whole.err_est + R * re.err_est));
  report.parts.push_back(part("im_lower", L * im.value, whole.value, L, L * im.err_est + whole.err_est));
  report.parts.push_back(part("im_upper", whole.value, R * im.value, R, whole.err_est + R * im.err_est));
  finalize(report);
  return report;
}

InequalityReport check_newt(const HarmonicFunction& F, double p, double tol) {
  const TaylorSeries series = require_holomorphic(F, "newt check");
  if (!(p >= 2.0)) throw OutOfRange("newt check requires p >= 2, got " + std::to_string(p));
  if (std::abs(series[0]) > kOriginZero) throw PreconditionFailed("newt check requires F(0) = 0");

  const double c = constants::newt_constant(p);
  InequalityReport report;
  report.name = "newt";
  report.params["p"] = p;
  report.trivial = series.is_zero();

  const Estimate whole = hardy_integral(F, p, tol);
  const Estimate re = hardy_integral(HarmonicFunction::real_part(series), p, tol);
  const Estimate im = hardy_integral(HarmonicFunction::imag_part(series), p, tol);
  for (const Estimate* e : {&whole, &re, &im}) absorb(report.quadrature, *e);

  const double norm = std::pow(whole.value, 1.0 / p);
  const double norm_err = root_error(whole.value, whole.err_est, p);
  const double parts_sum = re.value + im.value;
  const double combined = c * std::pow(parts_sum, 1.0 / p);
  const double combined_err = c * root_error(parts_sum, re.err_est + im.err_est, p);
  if (parts_sum > 0.0) report.params["power_ratio"] = whole.value / parts_sum;

  if (p <= 4.0) report.parts.push_back(part("upper", norm, combined, c, norm_err + combined_err));
  if (p >= 4.0) report.parts.push_back(part("lower", combined, norm, c, norm_err + combined_err));
  if (p == 4.0) report.note = "p = 4: both directions hold, so the two sides agree";
  finalize(report);
  return report;
}

double log_laplacian(const TaylorSeries& a, const TaylorSeries& b, cplx z) {
  const cplx av = a(z);
  const cplx bv = b(z);
  const cplx ad = a.derivative()(z);
  const cplx bd = b.derivative()(z);
  const double s = std::norm(av) + std::norm(bv);
  if (s <= 1e-300) throw DegenerateZero("log-Laplacian undefined where a and b both vanish");
  const double numerator = (std::norm(ad) + std::norm(bd)) * s - std::norm(std::conj(av) * ad + std::conj(bv) * bd);
  return 4.0 * numerator / (s * s);
}

InequalityReport check_ipl(const TaylorSeries& a, const TaylorSeries& b, double p, double tol) {
  if (!(p > 0.0)) throw OutOfRange("ipl check requires p > 0");
  InequalityReport report;
  report.name = "ipl";
  report.params["p"] = p;
  report.trivial = a.is_zero() && b.is_zero();

  const std::size_t degree = std::max(a.degree(), b.degree());
  std::vector<cplx> av;
  std::vector<cplx> bv;
  auto fill = [&](double r, std::span<const cplx> nodes, std::span<double> values, double power) {
    av.resize(nodes.size());
    bv.resize(nodes.size());
    sample_series(a, r, nodes, av);
    sample_series(b, r, nodes, bv);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const double s = std::norm(av[k]) + std::norm(bv[k]);
      values[k] = pow_of_square(s, 2.0 * power);
    }
  };
  const Estimate area = adaptive_disk(
      [&](double r, std::span<const cplx> nodes, std::span<double> values) { fill(r, nodes, values, 2.0 * p); },
      polynomial_options(degree, 4.0 * p, tol));
  const Estimate boundary = adaptive_circle(
      [&](std::span<const cplx> nodes, std::span<double> values) { fill(1.0, nodes, values, p); },
      polynomial_options(degree, 2.0 * p, tol));
  absorb(report.quadrature, area);
  absorb(report.quadrature, boundary);
  const double rhs = boundary.value * boundary.value;
  report.parts.push_back(part("ipl", area.value, rhs, 1.0,
                              area.err_est + product_error(boundary.value, boundary.err_est,
                                                           boundary.value, boundary.err_est)));
  finalize(report);
  return report;
}

AbxTrace abx_trace(const TaylorSeries& g, const TaylorSeries& h, double tol) {
  const std::size_t degree = std::max(g.degree(), h.degree());
  const AdaptiveOptions opts = polynomial_options(degree, 4.0, tol);
  std::vector<cplx> gv;
  std::vector<cplx> hv;
  auto boundary_mean = [&](auto&& integrand) {
    return adaptive_circle(
        [&](std::span<const cplx> nodes, std::span<double> values) {
          gv.resize(nodes.size());
          hv.resize(nodes.size());
          sample_series(g, 1.0, nodes, gv);
          sample_series(h, 1.0, nodes, hv);
          for (std::size_t k = 0; k < nodes.size(); ++k) values[k] = integrand(gv[k], hv[k]);
        },
        opts);
  };
  const Estimate a2 = boundary_mean([](cplx gz, cplx hz) {
    const double s = std::norm(gz) + std::norm(hz);
    return s * s;
  });
  const Estimate b2 = boundary_mean([](cplx gz, cplx hz) { return 4.0 * std::norm(gz) * std::norm(hz); });
  const Estimate x = boundary_mean([](cplx gz, cplx hz) {
    const double s = std::norm(gz + std::conj(hz));
    return s * s;
  });

  AbxTrace trace;
  trace.A = std::sqrt(a2.value);
  trace.B = std::sqrt(b2.value);
  trace.X = x.value;
  const double err = a2.err_est + b2.err_est + x.err_est;
  const double k2 = std::pow((2.0 - std::sqrt(2.0)) / 2.0, 2);
  const double gap = trace.A - std::sqrt(2.0) / 2.0 * trace.B;

  auto make = [&](const char* name, double lhs, double rhs, double constant) {
    InequalityReport r;
    r.name = name;
    r.params["A"] = trace.A;
    r.params["B"] = trace.B;
    r.params["X"] = trace.X;
    r.trivial = g.is_zero() && h.is_zero();
    for (const Estimate* e : {&a2, &b2, &x}) absorb(r.quadrature, *e);
    r.parts.push_back(part(name, lhs, rhs, constant, err));
    finalize(r);
    return r;
  };
  trace.reports.push_back(make("abx-a-dominates-b", b2.value, a2.value, 1.0));
  trace.reports.push_back(make("abx-x-square-bound", gap * gap, trace.X, std::sqrt(2.0) / 2.0));
  trace.reports.push_back(make("abx-x1", k2 * b2.value, trace.X, k2));
  trace.reports.push_back(make("abx-x2", k2 * a2.value, trace.X, k2));
  return trace;
}

EpsFamily EpsFamily::make(double eps, double p) {
  if (!(eps > 0.0)) throw OutOfRange("epsilon must be > 0");
  if (!(p > 1.0)) throw OutOfRange("exponent must be > 1");
  return EpsFamily{eps, p, p / (p - 1.0)};
}

EpsLaplacians eps_laplacians(const TaylorSeries& F, const EpsFamily& fam, cplx z) {
  const cplx f = F(z);
  const double fprime2 = std::norm(F.derivative()(z));
  const double p = fam.p;
  const double eps = fam.eps;
  const double u2 = f.real() * f.real();
  const double v2 = f.imag() * f.imag();
  const double abs2 = std::norm(f);
  const double qe = fam.q * eps;
  EpsLaplacians out{};
  out.dF = p * std::pow(qe + abs2, p / 2.0 - 2.0) * (2.0 * qe + p * abs2) * fprime2;
  out.dU = p * std::pow(u2 + eps, p / 2.0 - 2.0) * fprime2 * (eps + (p - 1.0) * u2);
  out.dV = p * std::pow(v2 + eps, p / 2.0 - 2.0) * fprime2 * (eps + (p - 1.0) * v2);
  return out;
}

EpsLaplacians eps_values(const TaylorSeries& F, const EpsFamily& fam, cplx z) {
  const cplx f = F(z);
  const double half = fam.p / 2.0;
  return EpsLaplacians{std::pow(fam.q * fam.eps + std::norm(f), half),
                       std::pow(fam.eps + f.real() * f.real(), half),
                       std::pow(fam.eps + f.imag() * f.imag(), half)};
}

double q_value(double s, double r, double eps, double p) {
  if (!(r > 0.0) || !(eps > 0.0) || !(p > 1.0)) throw OutOfRange("q_value requires r > 0, eps > 0, p > 1");
  const double r2 = r * r;
  const double c2 = std::cos(s) * std::cos(s);
  const double s2 = std::sin(s) * std::sin(s);
  const double e = p / 2.0 - 2.0;
  const double denominator = (2.0 * eps + (p - 1.0) * r2) * std::pow(eps * p / (p - 1.0) + r2, e);
  const double cos_term = std::pow(eps + r2 * c2, e) * (eps + (p - 1.0) * r2 * c2);
  const double sin_term = std::pow(eps + r2 * s2, e) * (eps + (p - 1.0) * r2 * s2);
  return cos_term / denominator + sin_term / denominator;
}

double q_at_zero_closed_form(double t, double p) {
  return std::pow(1.0 + p * t / (p - 1.0), 2.0 - p / 2.0) *
         (std::pow(t, p / 2.0 - 1.0) + std::pow(1.0 + t, p / 2.0 - 2.0) * (p - 1.0 + t)) / (p - 1.0 + 2.0 * t);
}

double q_at_quarter_pi_closed_form(double t, double p) {
  return std::pow(2.0, 2.0 - p / 2.0) *
         std::pow((p - 1.0 + p * t) / ((p - 1.0) * (1.0 + 2.0 * t)), 2.0 - p / 2.0);
}

InequalityReport q_report(double r, double eps, double p) {
  const double step = 2.0 * pi / static_cast<double>(kQGridSize);
  const double quarter = pi / 4.0;
  double q_min = std::numeric_limits<double>::infinity();
  double q_max = -q_min;
  double s_min = 0.0;
  double s_max = 0.0;
  for (std::size_t k = 0; k < kQGridSize; ++k) {
    // 720 is divisible by 8, so every stationary point pi j/4 is a grid node.
    const double s = step * static_cast<double>(k);
    const double q = q_value(s, r, eps, p);
    if (q < q_min) {
      q_min = q;
      s_min = s;
    }
    if (q > q_max) {
      q_max = q;
      s_max = s;
    }
  }
  auto distance_to_stationary = [quarter](double s) { return std::abs(s - std::round(s / quarter) * quarter); };
  const bool flat = q_max - q_min <= 1e-12 * std::abs(q_max);
  const double location_gap = flat ? 0.0 : std::max(distance_to_stationary(s_min), distance_to_stationary(s_max));

  InequalityReport report;
  report.name = "q-surface";
  report.params = {{"p", p},
                   {"r", r},
                   {"eps", eps},
                   {"q_min", q_min},
                   {"q_max", q_max},
                   {"argmin_s", s_min},
                   {"argmax_s", s_max},
                   {"q_at_zero", q_value(0.0, r, eps, p)},
                   {"q_at_quarter_pi", q_value(quarter, r, eps, p)},
                   {"q_at_zero_closed_form", q_at_zero_closed_form(eps / (r * r), p)},
                   {"q_at_quarter_pi_closed_form", q_at_quarter_pi_closed_form(eps / (r * r), p)}};
  report.quadrature.n = kQGridSize;
  if (p <= 4.0) report.parts.push_back(MarginPart{"q_at_least_one", 1.0, q_min, 1.0, q_min - 1.0, kQTolerance});
  if (p >= 4.0) report.parts.push_back(MarginPart{"q_at_most_one", q_max, 1.0, 1.0, 1.0 - q_max, kQTolerance});
  report.parts.push_back(MarginPart{"extrema_at_stationary_points", location_gap, step, quarter,
                                    step - location_gap, 1e-12});
  finalize(report);
  return report;
}

InequalityReport check_lemma_new(const TaylorSeries& F, double p, double eps, cplx z) {
  const EpsFamily fam = EpsFamily::make(eps, p);
  const EpsLaplacians d = eps_laplacians(F, fam, z);
  const double c = (p - 1.0) / p;
  const double sum = d.dU + d.dV;
  const double scaled = c * d.dF;
  const double err = 1e-12 * (std::abs(sum) + std::abs(scaled));

  InequalityReport report;
  report.name = "lemma-new";
  report.params = {{"p", p}, {"eps", eps}, {"z_re", z.real()}, {"z_im", z.imag()}};
  report.trivial = d.dF == 0.0;
  if (p <= 4.0) report.parts.push_back(MarginPart{"lower", scaled, sum, c, sum - scaled, err});
  if (p >= 4.0) report.parts.push_back(MarginPart{"upper", sum, scaled, c, scaled - sum, err});
  finalize(report);
  return report;
}

SmoothField eps_field(const TaylorSeries& F, const EpsFamily& fam) {
  return SmoothField{
      [F, fam](cplx z) { return std::pow(fam.q * fam.eps + std::norm(F(z)), fam.p / 2.0); },
      [F, fam](cplx z) { return eps_laplacians(F, fam, z).dF; }};
}

double fd_laplacian(const std::function<double(cplx)>& fn, cplx z, double h) {
  const cplx dx{h, 0.0};
  const cplx dy{0.0, h};
  return (fn(z + dx) + fn(z - dx) + fn(z + dy) + fn(z - dy) - 4.0 * fn(z)) / (h * h);
}

InequalityReport green_check(const SmoothField& G, double r, double tol) {
  if (!(r > 0.0 && r < 1.0)) throw OutOfRange("green_check requires 0 < r < 1");
  const std::function<double(cplx)> laplacian =
      G.laplacian ? G.laplacian : std::function<double(cplx)>([&G](cplx z) { return fd_laplacian(G.value, z); });

  AdaptiveOptions opts;
  opts.tol = tol;
  const double h = kGreenStep;
  const Estimate flux = adaptive_circle(
      [&](std::span<const cplx> nodes, std::span<double> values) {
        for (std::size_t k = 0; k < nodes.size(); ++k) {
          values[k] = (G.value((r + h) * nodes[k]) - G.value((r - h) * nodes[k])) / (2.0 * h);
        }
      },
      opts);
  const Estimate mass = adaptive_disk(
      [&](double rho, std::span<const cplx> nodes, std::span<double> values) {
        for (std::size_t k = 0; k < nodes.size(); ++k) values[k] = laplacian(r * rho * nodes[k]);
      },
      opts);
  // Undo the normalizations: dt = 2 pi (mean), dx dy over |z| <= r = pi r^2 (mean).
  const double lhs = r * 2.0 * pi * flux.value;
  const double rhs = pi * r * r * mass.value;
  const double discrepancy = std::abs(lhs - rhs);

  InequalityReport report;
  report.name = "green";
  report.params = {{"r", r}, {"discrepancy", discrepancy}};
  absorb(report.quadrature, flux);
  absorb(report.quadrature, mass);
  report.parts.push_back(MarginPart{"green", lhs, rhs, 1.0, -discrepancy, kGreenTolerance * (1.0 + std::abs(lhs))});
  finalize(report);
  return report;
}

}  // namespace diskineq
