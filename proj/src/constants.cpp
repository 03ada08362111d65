#include "diskineq/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "diskineq/errors.hpp"

namespace diskineq::constants {

namespace {

constexpr double pi = std::numbers::pi;

void require_above(double p, double bound, const char* what) {
  if (!(p > bound) || !std::isfinite(p)) {
    throw OutOfRange(std::string(what) + " requires p > " + std::to_string(bound) + ", got " +
                     std::to_string(p));
  }
}

}  // namespace

double riesz_R(double p) {
  require_above(p, 1.0, "riesz_R");
  return p <= 2.0 ? 1.0 / std::cos(pi / (2.0 * p)) : 1.0 / std::sin(pi / (2.0 * p));
}

double riesz_L(double p) {
  require_above(p, 1.0, "riesz_L");
  return p <= 2.0 ? 1.0 / std::sin(pi / (2.0 * p)) : 1.0 / std::cos(pi / (2.0 * p));
}

double conjugate_max(double p) {
  require_above(p, 1.0, "conjugate_max");
  return std::max(p, p / (p - 1.0));
}

double bergman_chain(double p) {
  require_above(p, 2.0, "bergman_chain");
  return p <= 4.0 ? std::cos(pi / (2.0 * p)) / std::cos(pi / p)
                  : std::cos(pi / (2.0 * p)) / std::sin(pi / p);
}

double carleman_C(double p) {
  require_above(p, 1.0, "carleman_C");
  return p <= 2.0 ? std::cos(pi / (4.0 * p)) / std::cos(pi / (2.0 * p))
                  : std::cos(pi / (4.0 * p)) / std::sin(pi / (2.0 * p));
}

double e4() { return std::cos(pi / 8.0); }

double newt_constant(double p) {
  require_above(p, 1.0, "newt_constant");
  return std::pow(p / (p - 1.0), 1.0 / p);
}

double c4_constant() { return 1.0 / (2.0 * std::sin(pi / 16.0)); }

double p1_root() {
  auto gap = [](double p) { return newt_constant(p) - std::pow(2.0, -1.0 / p) * riesz_R(p); };
  double lo = 2.0;
  double hi = 4.0;
  double g_lo = gap(lo);
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = gap(mid);
    if ((g_mid > 0.0) == (g_lo > 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Table table(double p) {
  require_above(p, 1.0, "constant table");
  return Table{p,
               riesz_R(p),
               riesz_L(p),
               p > 2.0 ? bergman_chain(p) : std::numeric_limits<double>::quiet_NaN(),
               carleman_C(p),
               e4(),
               conjugate_max(p),
               newt_constant(p),
               p1_root()};
}

}  // namespace diskineq::constants
