#pragma once

#include <vector>

#include "specact/coeffs.hpp"
#include "specact/gibbs.hpp"
#include "specact/spectra.hpp"

namespace specact {

// Relative errors at or below this floor count as converged to measurement
// precision; slope fits ignore such rows.
inline constexpr double MEASUREMENT_FLOOR_REL = 1e-9;

// One logged coefficient-function call; mu is the argument actually passed
// (always the scaled potential beta * mu when logged from an expansion).
struct CoeffCall {
    CoeffKind kind;
    double a;
    double mu;
};
using CoeffCallLog = std::vector<CoeffCall>;

struct ExpansionRequest {
    HeatExpansion h;
    ThermoParams p; // beta, mu, stat; the variant selects which op applies
    Quantity qty = Quantity::Entropy;
    int L = 0; // max group index
    int K = 0; // max Taylor order in 2 mu (expand_primed only)
    SeriesControl sctl{};
    QuadratureControl qctl{};
    CoeffCallLog* call_log = nullptr; // optional instrumentation
};

// One expansion term. k = -1 marks the plain psi_l terms of
// expand_unprimed; expand_primed emits proper (l, k) pairs whose value
// already carries the (2 mu)^k / k! weight.
struct PsiTerm {
    int l = 0;
    int k = -1;
    double value = 0.0;
};

struct ExpansionResult {
    std::vector<PsiTerm> per_term;    // (l, k) lexicographic
    std::vector<double> partial_sums; // prefix sums of per_term
    double total = 0.0;
};

// Small-beta expansion for the SqrtShift variant:
// psi_l = sum over (z, a_z) in group l of a_z beta^{-2z} C(beta mu; -z),
// where C is the coefficient function bound to (stat, qty); energy terms
// carry an extra 1/beta. Groups beyond the stored expansion contribute 0.
// Requires mu < 0. Coefficient failures are rethrown with (l, z) context.
ExpansionResult expand_unprimed(const ExpansionRequest& req);

// Small-beta expansion for the LinearShift variant: Taylor terms in the
// scaled potential indexed by (l, k), assembled from the heat expansion's
// zeta residues (regular case) or zeta values (when the Gamma factor hits a
// pole). The k = 0 column is included for every l <= L; columns k >= 1 are
// kept only inside the triangular truncation region, whose width per unit
// of K is 1/2 for Fermi and 1 for Bose. Requires mu < 0. Missing zeta data
// surfaces as MissingZetaDatum.
ExpansionResult expand_primed(const ExpansionRequest& req);

struct CompareRow {
    double beta = 0.0;
    double exact = 0.0;
    double expansion = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
};

struct CompareTable {
    std::vector<CompareRow> rows; // beta grid order
    double rel_slope = 0.0;       // log-log LS fit; NaN when points_used < 2
    double abs_slope = 0.0;
    int points_used = 0; // rows above MEASUREMENT_FLOOR_REL entering the fit
};

// Exact mode sums against the matching expansion over a beta grid. The
// spectrum must belong to the geometry whose heat expansion the request
// carries; that consistency is the caller's responsibility.
CompareTable compare_exact(const ExpansionRequest& req, const Spectrum& s,
                           const std::vector<double>& beta_grid);

} // namespace specact
