#pragma once

#include "specact/controls.hpp"

namespace specact {

// Gamma function on the real line. Poles at non-positive integers raise
// std::domain_error. Relative accuracy ~1e-14 for |x| <= 30.
double gamma_fn(double x);

// log Gamma(x) for x > 0 only; no reflection, no sign tracking.
double log_gamma_pos(double x);

// sin(pi*x) with argument reduction done on x itself, so it stays accurate
// for large |x| where sin(M_PI*x) would lose the phase.
double sin_pi(double x);

// Riemann zeta on the real line, s != 1. Alternating-series acceleration
// for s >= 1/2, the functional equation below that. Negative even integers
// return exactly 0.
double riemann_zeta(double s, const SeriesControl& ctl = {});

// Completed zeta xi(s) = s(s-1)/2 * pi^{-s/2} Gamma(s/2) zeta(s).
// Entire; xi(s) = xi(1-s) holds by construction (arguments below 1/2 are
// reflected). The zeta pole at s=1 cancels via a Laurent window.
double riemann_xi(double s);

// Modified Bessel K_nu(z), z > 0, via the cosh integral representation
// evaluated with adaptive Gauss-Kronrod after an explicit truncation of the
// infinite upper limit.
double bessel_k(double nu, double z, const QuadratureControl& ctl = {});

// d/dz K_nu(z) from its own integral representation. Reference path used by
// the verification checks; nothing in the production code depends on it.
double bessel_k_deriv(double nu, double z, const QuadratureControl& ctl = {});

// Gaussian theta series theta(t) = sum_{n in Z} exp(-pi n^2 t), t > 0, and
// its t-derivative. For t < 1 both are computed through the modular
// inversion t -> 1/t; theta_direct_series evaluates the defining series
// with no inversion and exists so the inversion identity can be tested as
// a genuine residual.
double theta(double t, const SeriesControl& ctl = {});
double theta_prime(double t, const SeriesControl& ctl = {});
double theta_direct_series(double t, const SeriesControl& ctl = {});
double theta_prime_direct_series(double t, const SeriesControl& ctl = {});

// Hurwitz zeta sum_{k>=0} (q+k)^{-s}, q > 0, s != 1, by Euler-Maclaurin
// with the summation origin shifted until the asymptotic tail converges.
double hurwitz_zeta(double s, double q, const SeriesControl& ctl = {});

} // namespace specact
