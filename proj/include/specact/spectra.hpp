#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace specact {

struct Mode {
    double lambda = 0.0;
    std::int64_t multiplicity = 1;
};

// Finite truncation of a one-particle spectrum. Modes are sorted by lambda,
// multiplicities are >= 1, and no eigenvalue is zero (the kernel of the
// operator must be trivial; constructors enforce it).
struct Spectrum {
    std::vector<Mode> modes;
    std::string label;
};

struct HeatCoefficient {
    double z = 0.0; // exponent: the term contributes a_z * t^{-z}
    double a = 0.0;
};

struct ZetaPole {
    double pole = 0.0;
    double residue = 0.0;
};

struct ZetaValue {
    double point = 0.0;
    double value = 0.0;
};

struct MissingZetaDatum : std::runtime_error {
    explicit MissingZetaDatum(double point);
    double point;
};

// Small-t expansion data of the heat trace: groups[l] is the set X_l of
// exponent/coefficient pairs whose -z falls in the strip
// (scale[l], scale[l+1]), together with the residues and regular values of
// the spectral zeta function that the residue formulas consume.
struct HeatExpansion {
    std::vector<std::vector<HeatCoefficient>> groups;
    std::vector<double> scale; // strictly increasing, size = groups.size() + 1
    std::vector<ZetaPole> zeta_residues;
    std::vector<ZetaValue> zeta_values;

    // Regular value of the spectral zeta function; throws MissingZetaDatum
    // if the point was not tabulated.
    double zeta_value_at(double point) const;
    // Residue at a pole, or 0 when the function is regular there.
    double zeta_residue_at(double pole) const;
};

// Eigenvalues ±1..±n_max with multiplicity 1.
Spectrum circle_spectrum(int n_max);
HeatExpansion circle_heat_expansion();

// Flat d-torus lattice spectrum, d in {1,2,3}: modes ±|k| over nonzero
// integer vectors with |k_i| <= n_max, spinor degeneracy 2^{floor(d/2)}
// split evenly between the two signs.
Spectrum torus_spectrum(int d, int n_max);
HeatExpansion torus_heat_expansion(int d);

// One "lambda,multiplicity" pair per line; '#' starts a comment.
Spectrum spectrum_from_file(const std::string& path);

// JSON with fields groups[[{z, a_z}]], zeta_residues[{pole, residue}],
// zeta_values[{point, value}]. The strip thresholds are derived from the
// group exponents (midpoints between adjacent groups, a quarter-width
// margin at the ends).
HeatExpansion heat_expansion_from_file(const std::string& path);

// Concatenates and re-sorts; multiplicities of exactly equal eigenvalues
// merge by addition.
Spectrum direct_sum(const Spectrum& s1, const Spectrum& s2);

// Exact finite sums over the modes.
double heat_trace_k(const Spectrum& s, int k, double t);
double heat_trace(const Spectrum& s, double t); // k = 0

// Residue-formula value of the group-l contribution to Tr(|D|^k e^{-tD^2}):
// sum over z in X_l of Gamma(z+k/2) Res(zeta, z) t^{-z-k/2}, with the
// Gamma poles at z+k/2 in {0,-1,-2,...} replaced by the factorial branch
// ((-1)^{z+k/2} / (-(z+k/2))!) zeta(z) t^{-z-k/2}.
double rho_lk(const HeatExpansion& h, std::size_t l, int k, double t);

} // namespace specact
