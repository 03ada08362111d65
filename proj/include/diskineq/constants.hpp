#pragma once

// Closed-form constants of the Riesz- and Carleman-type inequalities.
//
// Piecewise formulas switch branch at a seam (p = 2, or p = 4 for the
// Bergman chain constant); both branches agree there and the left branch is
// used at the seam.

namespace diskineq::constants {

/// Upper Riesz constant: 1/cos(pi/2p) for 1 < p <= 2, 1/sin(pi/2p) for p >= 2.
double riesz_R(double p);
/// Lower Riesz constant: 1/sin(pi/2p) for 1 < p <= 2, 1/cos(pi/2p) for p >= 2.
double riesz_L(double p);
/// max(p, p/(p-1)).
double conjugate_max(double p);
/// Bergman chain constant R_{p/2} / L_p, defined for p > 2.
double bergman_chain(double p);
/// Carleman-type constant for ||f||_{b^{2p}} <= C ||f||_{h^p}; equals bergman_chain(2p).
double carleman_C(double p);
/// cos(pi/8).
double e4();
/// (p/(p-1))^{1/p}.
double newt_constant(double p);
/// Unique root on [2, 4] of newt_constant(p) = 2^{-1/p} riesz_R(p), by bisection to 1e-12.
double p1_root();
/// Constant of the complex-harmonic b^8/h^4 bound: 1/(2 sin(pi/16)).
double c4_constant();

struct Table {
  double p;
  double R;
  double L;
  double M;  // NaN for p <= 2
  double C;
  double E4;
  double pbar;
  double newt;
  double p1;
};

/// Every constant at exponent p (> 1).
Table table(double p);

}  // namespace diskineq::constants
