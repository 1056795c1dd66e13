#pragma once

#include "specact/controls.hpp"

#include <functional>

namespace specact {

struct QuadratureOutcome {
    double value = 0.0;
    double est_error = 0.0; // accumulated |K15 - G7| over accepted panels
    int panels = 0;
};

// Adaptive Gauss-Kronrod 7/15 on [a, b] by recursive bisection; the
// per-panel error budget halves on each split so the accepted total stays
// within max(abs_tol, rel_tol * |first K15 estimate|). Exceeding
// max_subdivisions raises ConvergenceError. Fully deterministic.
QuadratureOutcome gk_adaptive(const std::function<double(double)>& f,
                              double a, double b,
                              const QuadratureControl& ctl);

// Same on [a, infinity), mapped to (0, 1] by t = a + (1-w)/w. The integrand
// must decay fast enough that f(t)/w^2 stays bounded as w -> 0; every
// integrand in this library decays exponentially.
QuadratureOutcome gk_adaptive_upper(const std::function<double(double)>& f,
                                    double a,
                                    const QuadratureControl& ctl);

} // namespace specact
