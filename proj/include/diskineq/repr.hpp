#pragma once

// Representations of holomorphic and harmonic functions on the closed unit
// disk, and their pointwise evaluation.

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <variant>
#include <vector>

namespace diskineq {

using cplx = std::complex<double>;

inline constexpr std::size_t kMaxDegree = 256;
inline constexpr double kRealTolerance = 1e-12;

/// Truncated power series c_0 + c_1 z + ... + c_D z^D.
///
/// The degree is representational: trailing zeros are kept as given.
class TaylorSeries {
 public:
  TaylorSeries() : coeffs_{cplx{0.0, 0.0}} {}
  explicit TaylorSeries(std::vector<cplx> coeffs);

  static TaylorSeries constant(cplx c) { return TaylorSeries({c}); }
  static TaylorSeries monomial(std::size_t n, cplx c = 1.0);

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  /// Coefficient of z^n, zero past the stored degree.
  cplx operator[](std::size_t n) const noexcept {
    return n < coeffs_.size() ? coeffs_[n] : cplx{0.0, 0.0};
  }

  /// Horner evaluation.
  cplx operator()(cplx z) const noexcept;

  TaylorSeries derivative() const;
  TaylorSeries scaled(cplx c) const;
  /// f(e^{i alpha} z).
  TaylorSeries rotated(double alpha) const;
  bool is_zero() const noexcept;

  friend TaylorSeries operator+(const TaylorSeries& a, const TaylorSeries& b);
  friend TaylorSeries operator-(const TaylorSeries& a, const TaylorSeries& b);

 private:
  std::vector<cplx> coeffs_;
};

/// A point r e^{i theta} of the closed disk; theta is reduced to [0, 2 pi).
class EvalPoint {
 public:
  EvalPoint(double r, double theta);

  static EvalPoint from_complex(cplx z);

  double r() const noexcept { return r_; }
  double theta() const noexcept { return theta_; }
  cplx z() const noexcept { return std::polar(r_, theta_); }

 private:
  double r_;
  double theta_;
};

class HarmonicFunction;

/// f = g + conj(h).
struct TaylorPair {
  TaylorSeries g;
  TaylorSeries h;
};

/// f_a(z) = Re(z / (1 - a z)), 0 <= a < 1.
struct FaFamily {
  double a;
};

/// z^n.
struct Monomial {
  unsigned n;
};

/// exp(scale * u) for a real-valued harmonic u.
struct ExpOfHarmonic {
  double scale;
  std::shared_ptr<const HarmonicFunction> base;
};

/// Immutable tagged representation of a (complex) harmonic function, or of
/// one of the closed-form families evaluated without truncation.
class HarmonicFunction {
 public:
  using Variant = std::variant<TaylorPair, FaFamily, Monomial, ExpOfHarmonic>;

  static HarmonicFunction taylor_pair(TaylorSeries g, TaylorSeries h);
  static HarmonicFunction holomorphic(TaylorSeries f);
  static HarmonicFunction fa(double a);
  static HarmonicFunction monomial(unsigned n);
  /// Throws NotRealValued unless `base` is real-valued.
  static HarmonicFunction exp_of(const HarmonicFunction& base, double scale = 1.0);

  /// Re F and Im F of a holomorphic F, as real TaylorPairs.
  static HarmonicFunction real_part(const TaylorSeries& f);
  static HarmonicFunction imag_part(const TaylorSeries& f);

  const Variant& variant() const noexcept { return v_; }

  /// TaylorPair with h == 0, or a monomial.
  bool is_holomorphic() const noexcept;
  /// Holomorphic data as a series; throws PreconditionFailed otherwise.
  TaylorSeries as_holomorphic() const;
  /// Polynomial degree hint in z and conj(z); nullopt-like -1 for closed forms.
  long polynomial_degree() const noexcept;
  /// Sup of |f| on the closed disk is bounded by this (for closed forms: exact max).
  double sup_bound() const;
  /// Identically zero (structurally).
  bool is_zero() const noexcept;

 private:
  explicit HarmonicFunction(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

cplx eval(const HarmonicFunction& f, const EvalPoint& p);
cplx eval(const HarmonicFunction& f, cplx z);

/// Values f(r * w_k) for unit nodes w_k.
void sample_ring(const HarmonicFunction& f, double r, std::span<const cplx> unit_nodes,
                 std::span<cplx> out);

/// Structural real-valuedness test (coefficient symmetry g_n = h_n for n >= 1,
/// Im g_0 = Im h_0), relative tolerance kRealTolerance.
bool is_real(const HarmonicFunction& f);

/// Sampling test: sup |Im f| over a 64x64 polar grid <= tol * (1 + sup |f|).
bool is_real_on_grid(const HarmonicFunction& f, double tol = kRealTolerance);

/// Holomorphic F with Re F = u and Im F(0) = 0. Requires a real TaylorPair
/// (or the constant monomial); throws NotRealValued / PreconditionFailed.
TaylorSeries analytic_completion(const HarmonicFunction& u);

/// Degree-D truncation of f_a as a TaylorPair.
HarmonicFunction fa_truncation(double a, std::size_t degree);

}  // namespace diskineq
