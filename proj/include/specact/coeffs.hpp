#pragma once

#include "specact/controls.hpp"

#include <vector>

namespace specact {

// Each kind binds one (statistics, quantity) pair of the SqrtShift family.
enum class CoeffKind {
    GammaFermiEntropy,
    OmegaFermiEnergy,
    ChiBoseEntropy,
    KappaBoseEnergy,
};

enum class Representation {
    BesselSeries,  // exponentially convergent; best away from mu = 0
    PoissonSeries, // lattice sum with an analytic zeta-function tail
    XiSeries,      // power series in mu^2 around the mu=0 coefficients
    Quadrature,    // direct integral of t^a against the Laplace weight
};

const char* to_string(CoeffKind k);
const char* to_string(Representation r);

struct CoeffResult {
    double value = 0.0;
    Representation rep = Representation::BesselSeries;
    double est_error = 0.0; // truncation + evaluation bound, not a guess
    int terms_used = 0;
};

// Coefficient function of the given kind at order a and chemical potential
// mu, evaluated through the requested representation.
//
// Domain rules: the three series representations require mu < 0 (BesselSeries
// additionally falls back to PoissonSeries for |mu| < 0.05, recording the
// actual representation in the result); XiSeries requires |mu| < pi for the
// Fermi kinds and |mu| < 2 pi for the Bose kinds. Quadrature accepts mu <= 0,
// but at mu = 0 only where the integral converges: any a for
// GammaFermiEntropy, a < 1/2 for OmegaFermiEnergy, a < 0 for ChiBoseEntropy,
// and never for KappaBoseEnergy (the weight itself diverges).
//
// At the isolated parameter values where a representation's written form
// pairs a Gamma-prefactor pole against a compensating zero (gamma/chi
// PoissonSeries at non-positive integers; omega/kappa PoissonSeries and
// XiSeries at 1/2 - j and, for the Poisson forms, negative integers; chi
// XiSeries at non-positive integers), the value is obtained by symmetric
// evaluation at a +- h with Richardson extrapolation (h = 1e-4).
CoeffResult coeff(CoeffKind kind, double a, double mu, Representation rep,
                  const SeriesControl& sctl = {},
                  const QuadratureControl& qctl = {});

// Representation picked for a hands-off evaluation at (a, mu):
// BesselSeries for |mu| >= 0.05, XiSeries for 0 < |mu| < 0.05,
// Quadrature at mu = 0.
Representation choose_representation(CoeffKind kind, double a, double mu);

// The mu -> 0- limit functions. gamma's removable point at a = 0 is
// evaluated analytically; omega and kappa have genuine poles at a = 1/2 and
// chi at a = 0, which raise std::domain_error.
double limit_coeff(CoeffKind kind, double a);

enum class MomentKind { FermiEntropy, BoseEntropy };

// Closed Bessel-series value of the nu-th moment of the entropy kernel:
// integral_0^inf kernel_mu(x) x^nu dx, nu > -1, mu < 0.
double moment_closed(MomentKind kind, double nu, double mu,
                     const SeriesControl& sctl = {});

// Independent cross-check: the coefficient recovered from the kernel's
// Mellin transform, (2/Gamma(-a)) integral_0^inf kernel_mu(x) x^{-2a-1} dx.
// Requires a < 0 and mu < 0. Test oracle only.
double mellin_coeff_oracle(CoeffKind kind, double a, double mu,
                           const QuadratureControl& qctl = {});

// First `count` terms of the Bessel-series representation, signs included;
// exposes the series structure for the cross-kind sign tests.
std::vector<double> bessel_series_terms(CoeffKind kind, double a, double mu,
                                        int count,
                                        const QuadratureControl& qctl = {});

} // namespace specact
