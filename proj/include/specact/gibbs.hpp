#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "specact/kernels.hpp"
#include "specact/spectra.hpp"

namespace specact {

struct ThermoParams {
    double beta = 1.0; // > 0
    double mu = 0.0;   // <= 0
    Statistics stat = Statistics::Fermi;
    Variant variant = Variant::SqrtShift;
};

// Audit policy for the truncation of an infinite spectrum. The spectrum
// handed to thermo is always finite; the policy decides when that finite
// slice is a faithful stand-in. The report is reliable when the largest
// retained one-particle Boltzmann factor exp(-beta eps_max) is below
// machine epsilon times guard_factor.
struct TailPolicy {
    std::string cutoff_rule = "boltzmann-guard";
    double guard_factor = 1.0; // > 0
};

struct ThermoReport {
    double log_Z = 0.0;
    double entropy = 0.0;  // >= 0
    double energy = 0.0;
    std::int64_t modes_used = 0; // total multiplicity summed over
    double tail_bound = 0.0;     // geometric estimate of the dropped
                                 // one-particle Boltzmann mass
    bool reliable = true;
};

// One-particle energy of an eigenmode. SqrtShift: sqrt(lambda^2 + mu^2),
// both statistics. LinearShift: |lambda| - mu for Fermi, lambda^2 - mu for
// Bose. Requires lambda != 0 and mu <= 0; the result is then strictly
// positive.
double mode_energy(Variant var, Statistics stat, double mu, double lambda);

// Exact grand-canonical mode sums: log partition function, von Neumann
// entropy, and average energy. The empty spectrum is the vacuum and yields
// all zeros. Satisfies entropy = beta * energy + log_Z to rounding and is
// additive under direct_sum. Terms are combined by pairwise tree summation
// so results are bit-reproducible.
ThermoReport thermo(const Spectrum& s, const ThermoParams& p,
                    const TailPolicy& tail = {});

// The same two quantities obtained through the closed-form spectral
// kernels at scaled arguments: entropy = sum m * kernel(beta mu; beta-scaled
// eigenvalue), energy likewise divided by beta. Agrees with thermo to
// 1e-12 relative; the two routes factor the same formulas differently.
std::pair<double, double> entropy_energy_via_kernels(const Spectrum& s,
                                                     const ThermoParams& p);

} // namespace specact
