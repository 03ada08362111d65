#include "diskineq/repr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <type_traits>

#include "diskineq/errors.hpp"

namespace diskineq {

namespace {

cplx int_power(cplx z, unsigned n) {
  cplx result{1.0, 0.0};
  while (n != 0) {
    if (n & 1U) result *= z;
    z *= z;
    n >>= 1U;
  }
  return result;
}

double coefficient_mass(const TaylorSeries& s) {
  double m = 0.0;
  for (const cplx& c : s.coeffs()) m += std::abs(c);
  return m;
}

}  // namespace

TaylorSeries::TaylorSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(cplx{0.0, 0.0});
  if (coeffs_.size() > kMaxDegree + 1) {
    throw OutOfRange("TaylorSeries degree " + std::to_string(coeffs_.size() - 1) +
                     " exceeds the supported maximum " + std::to_string(kMaxDegree));
  }
}

TaylorSeries TaylorSeries::monomial(std::size_t n, cplx c) {
  std::vector<cplx> coeffs(n + 1, cplx{0.0, 0.0});
  coeffs[n] = c;
  return TaylorSeries(std::move(coeffs));
}

cplx TaylorSeries::operator()(cplx z) const noexcept {
  cplx acc = coeffs_.back();
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * z + coeffs_[k];
  return acc;
}

TaylorSeries TaylorSeries::derivative() const {
  if (coeffs_.size() == 1) return TaylorSeries();
  std::vector<cplx> d(coeffs_.size() - 1);
  for (std::size_t n = 1; n < coeffs_.size(); ++n) d[n - 1] = static_cast<double>(n) * coeffs_[n];
  return TaylorSeries(std::move(d));
}

TaylorSeries TaylorSeries::scaled(cplx c) const {
  std::vector<cplx> out(coeffs_);
  for (cplx& x : out) x *= c;
  return TaylorSeries(std::move(out));
}

TaylorSeries TaylorSeries::rotated(double alpha) const {
  std::vector<cplx> out(coeffs_);
  for (std::size_t n = 0; n < out.size(); ++n) out[n] *= std::polar(1.0, alpha * static_cast<double>(n));
  return TaylorSeries(std::move(out));
}

bool TaylorSeries::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c == cplx{0.0, 0.0}; });
}

TaylorSeries operator+(const TaylorSeries& a, const TaylorSeries& b) {
  std::vector<cplx> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = a[n] + b[n];
  return TaylorSeries(std::move(out));
}

TaylorSeries operator-(const TaylorSeries& a, const TaylorSeries& b) {
  std::vector<cplx> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = a[n] - b[n];
  return TaylorSeries(std::move(out));
}

EvalPoint::EvalPoint(double r, double theta) : r_(r) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw OutOfRange("evaluation radius " + std::to_string(r) + " outside [0, 1]");
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  theta_ = std::fmod(theta, two_pi);
  if (theta_ < 0.0) theta_ += two_pi;
}

EvalPoint EvalPoint::from_complex(cplx z) {
  return EvalPoint(std::abs(z), std::arg(z));
}

HarmonicFunction HarmonicFunction::taylor_pair(TaylorSeries g, TaylorSeries h) {
  return HarmonicFunction(TaylorPair{std::move(g), std::move(h)});
}

HarmonicFunction HarmonicFunction::holomorphic(TaylorSeries f) {
  return HarmonicFunction(TaylorPair{std::move(f), TaylorSeries()});
}

HarmonicFunction HarmonicFunction::fa(double a) {
  if (!(a >= 0.0 && a < 1.0)) {
    throw OutOfRange("f_a requires 0 <= a < 1, got a = " + std::to_string(a));
  }
  return HarmonicFunction(FaFamily{a});
}

HarmonicFunction HarmonicFunction::monomial(unsigned n) {
  if (n > kMaxDegree) throw OutOfRange("monomial degree exceeds " + std::to_string(kMaxDegree));
  return HarmonicFunction(Monomial{n});
}

HarmonicFunction HarmonicFunction::exp_of(const HarmonicFunction& base, double scale) {
  if (!is_real(base)) throw NotRealValued("exp requires a real-valued harmonic base");
  return HarmonicFunction(ExpOfHarmonic{scale, std::make_shared<const HarmonicFunction>(base)});
}

HarmonicFunction HarmonicFunction::real_part(const TaylorSeries& f) {
  // Re F = F/2 + conj(F/2)
  TaylorSeries half = f.scaled(0.5);
  return taylor_pair(half, half);
}

HarmonicFunction HarmonicFunction::imag_part(const TaylorSeries& f) {
  // Im F = (F - conj F) / 2i = (-iF/2) + conj(-iF/2)
  TaylorSeries s = f.scaled(cplx{0.0, -0.5});
  return taylor_pair(s, s);
}

bool HarmonicFunction::is_holomorphic() const noexcept {
  if (const auto* tp = std::get_if<TaylorPair>(&v_)) return tp->h.is_zero();
  return std::holds_alternative<Monomial>(v_);
}

TaylorSeries HarmonicFunction::as_holomorphic() const {
  if (const auto* tp = std::get_if<TaylorPair>(&v_); tp && tp->h.is_zero()) return tp->g;
  if (const auto* m = std::get_if<Monomial>(&v_)) return TaylorSeries::monomial(m->n);
  throw PreconditionFailed("function is not represented as a holomorphic polynomial");
}

long HarmonicFunction::polynomial_degree() const noexcept {
  if (const auto* tp = std::get_if<TaylorPair>(&v_)) {
    return static_cast<long>(std::max(tp->g.degree(), tp->h.degree()));
  }
  if (const auto* m = std::get_if<Monomial>(&v_)) return m->n;
  return -1;
}

double HarmonicFunction::sup_bound() const {
  return std::visit(
      [](const auto& alt) -> double {
        using T = std::decay_t<decltype(alt)>;
        if constexpr (std::is_same_v<T, TaylorPair>) {
          return coefficient_mass(alt.g) + coefficient_mass(alt.h);
        } else if constexpr (std::is_same_v<T, FaFamily>) {
          return 1.0 / (1.0 - alt.a);
        } else if constexpr (std::is_same_v<T, Monomial>) {
          return 1.0;
        } else {
          return std::exp(std::abs(alt.scale) * alt.base->sup_bound());
        }
      },
      v_);
}

bool HarmonicFunction::is_zero() const noexcept {
  if (const auto* tp = std::get_if<TaylorPair>(&v_)) return tp->g.is_zero() && tp->h.is_zero();
  return false;
}

cplx eval(const HarmonicFunction& f, cplx z) {
  return std::visit(
      [z](const auto& alt) -> cplx {
        using T = std::decay_t<decltype(alt)>;
        if constexpr (std::is_same_v<T, TaylorPair>) {
          return alt.g(z) + std::conj(alt.h(z));
        } else if constexpr (std::is_same_v<T, FaFamily>) {
          return {(z / (1.0 - alt.a * z)).real(), 0.0};
        } else if constexpr (std::is_same_v<T, Monomial>) {
          return int_power(z, alt.n);
        } else {
          return {std::exp(alt.scale * eval(*alt.base, z).real()), 0.0};
        }
      },
      f.variant());
}

cplx eval(const HarmonicFunction& f, const EvalPoint& p) { return eval(f, p.z()); }

void sample_ring(const HarmonicFunction& f, double r, std::span<const cplx> unit_nodes,
                 std::span<cplx> out) {
  const std::size_t n = unit_nodes.size();
  std::visit(
      [&](const auto& alt) {
        using T = std::decay_t<decltype(alt)>;
        if constexpr (std::is_same_v<T, TaylorPair>) {
          const bool has_h = !alt.h.is_zero();
          for (std::size_t k = 0; k < n; ++k) {
            const cplx z = r * unit_nodes[k];
            out[k] = has_h ? alt.g(z) + std::conj(alt.h(z)) : alt.g(z);
          }
        } else if constexpr (std::is_same_v<T, FaFamily>) {
          for (std::size_t k = 0; k < n; ++k) {
            const cplx z = r * unit_nodes[k];
            out[k] = {(z / (1.0 - alt.a * z)).real(), 0.0};
          }
        } else if constexpr (std::is_same_v<T, Monomial>) {
          const double rn = std::pow(r, static_cast<double>(alt.n));
          for (std::size_t k = 0; k < n; ++k) out[k] = rn * int_power(unit_nodes[k], alt.n);
        } else {
          sample_ring(*alt.base, r, unit_nodes, out);
          for (std::size_t k = 0; k < n; ++k) out[k] = {std::exp(alt.scale * out[k].real()), 0.0};
        }
      },
      f.variant());
}

bool is_real(const HarmonicFunction& f) {
  return std::visit(
      [](const auto& alt) -> bool {
        using T = std::decay_t<decltype(alt)>;
        if constexpr (std::is_same_v<T, TaylorPair>) {
          // conj(f) = conj(g) + h, so f is real iff g_n = h_n (n >= 1) and
          // the constant g_0 + conj(h_0) has zero imaginary part.
          const double tol = kRealTolerance * (1.0 + coefficient_mass(alt.g) + coefficient_mass(alt.h));
          const std::size_t deg = std::max(alt.g.degree(), alt.h.degree());
          if (std::abs(alt.g[0].imag() - alt.h[0].imag()) > tol) return false;
          for (std::size_t n = 1; n <= deg; ++n) {
            if (std::abs(alt.g[n] - alt.h[n]) > tol) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, Monomial>) {
          return alt.n == 0;
        } else {
          return true;
        }
      },
      f.variant());
}

bool is_real_on_grid(const HarmonicFunction& f, double tol) {
  constexpr int kGrid = 64;
  double sup_imag = 0.0;
  double sup_abs = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    const double r = static_cast<double>(i + 1) / kGrid;
    for (int j = 0; j < kGrid; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / kGrid;
      const cplx v = eval(f, std::polar(r, theta));
      sup_imag = std::max(sup_imag, std::abs(v.imag()));
      sup_abs = std::max(sup_abs, std::abs(v));
    }
  }
  return sup_imag <= tol * (1.0 + sup_abs);
}

TaylorSeries analytic_completion(const HarmonicFunction& u) {
  if (const auto* m = std::get_if<Monomial>(&u.variant()); m && m->n == 0) {
    return TaylorSeries::constant(1.0);
  }
  if (!is_real(u)) throw NotRealValued("analytic completion of a function that is not real-valued");
  const auto* tp = std::get_if<TaylorPair>(&u.variant());
  if (tp == nullptr) {
    throw PreconditionFailed("analytic completion needs a TaylorPair representation");
  }

  // u = c + 2 Re sum_{n>=1} g_n z^n with c = Re(g_0 + conj(h_0)).
  const std::size_t deg = std::max(tp->g.degree(), tp->h.degree());
  std::vector<cplx> coeffs(deg + 1);
  coeffs[0] = (tp->g[0] + std::conj(tp->h[0])).real();
  for (std::size_t n = 1; n <= deg; ++n) coeffs[n] = tp->g[n] + tp->h[n];
  return TaylorSeries(std::move(coeffs));
}

HarmonicFunction fa_truncation(double a, std::size_t degree) {
  if (!(a >= 0.0 && a < 1.0)) throw OutOfRange("f_a requires 0 <= a < 1");
  std::vector<cplx> half(degree + 1, cplx{0.0, 0.0});
  double an = 0.5;
  for (std::size_t n = 1; n <= degree; ++n) {
    half[n] = an;
    an *= a;
  }
  TaylorSeries s(std::move(half));
  return HarmonicFunction::taylor_pair(s, s);
}

}  // namespace diskineq
