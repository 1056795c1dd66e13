#pragma once

#include "specact/controls.hpp"

namespace specact {

enum class Statistics { Fermi, Bose };
enum class Quantity { Entropy, Energy };

// SqrtShift: the one-particle energy is sqrt(x^2 + mu^2).
// LinearShift: the one-particle energy is |x| - mu.
enum class Variant { SqrtShift, LinearShift };

// Closed-form spectral kernels. Fermi kernels accept mu <= 0 everywhere;
// Bose kernels accept any point where the one-particle energy is strictly
// positive and raise std::domain_error otherwise. mu > 0 is always an error.
double kernel_value(Statistics stat, Quantity qty, Variant var,
                    double mu, double x);

// Laplace transform weight w(t) of the corresponding kernel, so that
// kernel(energy) = integral_0^inf exp(-t * energy^2-ish argument) w(t) dt;
// see laplace_reconstruct for the exact pairing. Carries the exp(-t mu^2)
// chemical-potential factor. The Bose Energy weight diverges at mu = 0 and
// raises std::domain_error there; the other three accept mu <= 0.
double laplace_weight(Statistics stat, Quantity qty, double mu, double t,
                      const SeriesControl& ctl = {});

// Numerically inverts the transform: integrates exp(-t * arg) w_mu(t) over
// t in (0, inf), where arg = x^2 for SqrtShift and arg = (|x|-mu)^2 - mu^2
// for LinearShift. Agrees with kernel_value to quadrature accuracy.
double laplace_reconstruct(Statistics stat, Quantity qty, Variant var,
                           double mu, double x,
                           const SeriesControl& sctl = {},
                           const QuadratureControl& qctl = {});

} // namespace specact
