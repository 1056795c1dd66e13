#pragma once

#include <string>
#include <vector>

namespace specact {

// One verification check: a named bundle of residual tests with a shared
// pass/fail verdict. `worst` is the largest residual seen, measured in units
// of that residual's own tolerance (so anything below 1 passes), and
// `detail` is a short free-form note (grid sizes, waived sub-checks).
struct CheckResult {
    std::string name;
    bool pass = true;
    double worst = 0.0;
    std::string detail;
};

// Runs the library's nine cross-validation checks in a fixed order:
//   1 bessel-theta-xi-bedrock      recurrences, closed forms, inversion
//   2 laplace-reconstruction      kernels rebuilt from their weights
//   3 kernel-moments              closed moment sums vs direct quadrature
//   4 representation-equivalence  series forms of the coefficients agree
//   5 small-potential-limit       coefficients approach their mu = 0 limits
//   6 exact-thermodynamics        mode-sum identities
//   7 expansion-vs-exact          small-beta expansions track the mode sums
//   8 linear-shift-consistency    shifted-spectrum expansion cross-checks
//   9 bose-zero-potential-rejection   domain rules at mu = 0
// n_max sizes the circle mode sums used by checks 7 and 8.
// Deterministic: same build and n_max give identical results.
std::vector<CheckResult> run_verification(int n_max = 2000);

// "[PASS] name (worst residual 0.12 of tolerance): detail" style line;
// shared by the CLI and the acceptance runner so output stays identical.
std::string to_line(const CheckResult& r);

} // namespace specact
