#pragma once

#include <stdexcept>
#include <string>

namespace specact {

// Thrown when a series or quadrature cannot reach its requested tolerance
// within its term/subdivision budget.  Callers that cannot recover should
// let this propagate; silently returning a bad value is never acceptable.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SeriesControl {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_terms = 100000;
};

struct QuadratureControl {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    double domain_split = 1.0; // boundary between the finite and the inverted panel
};

inline void validate(const SeriesControl& c) {
    if (!(c.rel_tol > 0.0) || !(c.abs_tol > 0.0))
        throw std::domain_error("SeriesControl: tolerances must be positive");
    if (c.max_terms < 1)
        throw std::domain_error("SeriesControl: max_terms must be >= 1");
}

inline void validate(const QuadratureControl& c) {
    if (!(c.rel_tol > 0.0) || !(c.abs_tol > 0.0))
        throw std::domain_error("QuadratureControl: tolerances must be positive");
    if (c.max_subdivisions < 1)
        throw std::domain_error("QuadratureControl: max_subdivisions must be >= 1");
    if (!(c.domain_split > 0.0))
        throw std::domain_error("QuadratureControl: domain_split must be positive");
}

} // namespace specact
