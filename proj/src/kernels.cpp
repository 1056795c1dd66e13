#include "specact/kernels.hpp"
#include "specact/quadrature.hpp"

#include <cmath>

namespace specact {
namespace {

constexpr double PI = 3.14159265358979323846264338327950288;
constexpr double SQRT_PI = 1.77245385090551602729816748334114518;

// crossovers between the defining series and its modular transform
constexpr double FERMI_ENTROPY_SPLIT = 1.0 / (2.0 * PI);
constexpr double BOSE_ENTROPY_SPLIT = 1.0 / (4.0 * PI);
constexpr double ENERGY_TAIL_SPLIT = 8.0;

double fermi_entropy_scalar(double e) {
    // x/(e^x+1) + log(1+e^{-x}); even in e, fine at 0
    const double a = std::fabs(e);
    return a / (std::exp(a) + 1.0) + std::log1p(std::exp(-a));
}

double fermi_energy_scalar(double e) {
    const double a = std::fabs(e);
    return a / (1.0 + std::exp(a));
}

double bose_entropy_scalar(double e) {
    // x/(e^x-1) - log(1-e^{-x}); requires e > 0
    return e / std::expm1(e) - std::log1p(-std::exp(-e));
}

double bose_energy_scalar(double e) {
    return e / std::expm1(e);
}

void check_mu(double mu) {
    if (std::isnan(mu) || mu > 0.0)
        throw std::domain_error("kernel: chemical potential must be <= 0");
}

// ---- mu = 0 weight profiles --------------------------------------------

// Fermi entropy weight, defining series (valid for larger t):
// (1/t) sum_{n>=0} (2 pi^2 (2n+1)^2 t - 1) exp(-pi^2 (2n+1)^2 t)
double fermi_entropy_weight_direct(double t, const SeriesControl& ctl) {
    double sum = 0.0;
    for (int n = 0; n < ctl.max_terms; ++n) {
        const double b = PI * PI * (2.0 * n + 1.0) * (2.0 * n + 1.0);
        const double term = (2.0 * b * t - 1.0) * std::exp(-b * t);
        sum += term;
        if (std::fabs(term) < 0.25 * std::max(ctl.abs_tol, ctl.rel_tol * std::fabs(sum)))
            return sum / t;
    }
    throw ConvergenceError("laplace_weight: Fermi entropy series stalled");
}

// Modular-transformed form (valid for small t):
// (1/sqrt(pi)) t^{-5/2} sum_{m>=1} (-1)^{m+1} (m^2/4) exp(-m^2/(4t))
double fermi_entropy_weight_inverted(double t, const SeriesControl& ctl) {
    double sum = 0.0;
    for (int m = 1; m <= ctl.max_terms; ++m) {
        const double mag = std::exp(std::log(0.25 * m * m) - 0.25 * m * m / t);
        sum += (m % 2 == 1) ? mag : -mag;
        if (mag < 0.25 * std::max(ctl.abs_tol, ctl.rel_tol * std::fabs(sum)))
            break;
    }
    return sum == 0.0 ? 0.0 : sum * std::pow(t, -2.5) / SQRT_PI;
}

// Bose entropy weight, defining series: (1/(2t)) [1 + 2 sum_{n>=1}
// (1 - 2 (2 pi n)^2 t) exp(-(2 pi n)^2 t)]
double bose_entropy_weight_direct(double t, const SeriesControl& ctl) {
    double sum = 1.0;
    for (int n = 1; n <= ctl.max_terms; ++n) {
        const double b = 4.0 * PI * PI * n * n;
        const double term = 2.0 * (1.0 - 2.0 * b * t) * std::exp(-b * t);
        sum += term;
        if (std::fabs(term) < 0.25 * std::max(ctl.abs_tol, ctl.rel_tol * std::fabs(sum)))
            return sum / (2.0 * t);
    }
    throw ConvergenceError("laplace_weight: Bose entropy series stalled");
}

// Transformed form, all terms positive:
// (1/sqrt(pi)) t^{-5/2} sum_{m>=1} (m^2/4) exp(-m^2/(4t))
double bose_entropy_weight_inverted(double t, const SeriesControl& ctl) {
    double sum = 0.0;
    for (int m = 1; m <= ctl.max_terms; ++m) {
        const double mag = std::exp(std::log(0.25 * m * m) - 0.25 * m * m / t);
        sum += mag;
        if (mag < 0.1 * std::max(ctl.abs_tol, ctl.rel_tol * sum))
            break;
    }
    return sum == 0.0 ? 0.0 : sum * std::pow(t, -2.5) / SQRT_PI;
}

// Shared series for both energy weights:
// sum_n s_n (n^2/4 - t/2) exp(-n^2/(4t)), s_n = (-1)^{n+1} for Fermi, 1 for
// Bose. The summand changes sign at n^2 = 2t, so termination uses the
// envelope (n^2/4 + t/2) exp(-n^2/(4t)) and only past the crossing.
double energy_weight_series(double t, bool alternating, const SeriesControl& ctl) {
    double sum = 0.0;
    const double n_min = std::sqrt(2.0 * t) + 3.0;
    for (int n = 1; n <= ctl.max_terms; ++n) {
        const double q = 0.25 * n * n / t;
        const double core = std::exp(-q);
        const double term = (0.25 * n * n - 0.5 * t) * core;
        sum += (alternating && n % 2 == 0) ? -term : term;
        const double envelope = (0.25 * n * n + 0.5 * t) * core;
        if (n >= n_min && envelope < 0.1 * std::max(ctl.abs_tol, ctl.rel_tol * std::fabs(sum)))
            return sum;
    }
    throw ConvergenceError("laplace_weight: energy series stalled");
}

// d/du of the even theta sum, as E(u) = sum_m (pi^2 m^2 / u^2) exp(-pi^2 m^2 / u);
// only ever called with u <= 1/32 where two or three terms suffice.
double theta_heat_tail(double u) {
    double sum = 0.0;
    for (int m = 1; m <= 64; ++m) {
        const double term = std::exp(2.0 * std::log(PI * m) - 2.0 * std::log(u)
                                     - PI * PI * m * m / u);
        sum += term;
        if (term < 1e-30 * (1.0 + sum))
            break;
    }
    return sum;
}

// Exact large-t evaluation of the energy-series sums via the modular
// transform; the naive series loses all significant digits there because
// the summand is the difference of two near-equal halves.
double energy_weight_series_tail(double t, bool alternating) {
    const double u = 1.0 / (4.0 * t);
    const double ep = theta_heat_tail(u);
    if (alternating) {
        const double ep4 = theta_heat_tail(4.0 * u);
        return -0.25 * t - 0.25 * SQRT_PI / std::sqrt(u) * (ep - 4.0 * ep4);
    }
    return 0.25 * t - 0.25 * SQRT_PI / std::sqrt(u) * ep;
}

double energy_weight(double t, bool alternating, const SeriesControl& ctl) {
    const double s = t < ENERGY_TAIL_SPLIT
                         ? energy_weight_series(t, alternating, ctl)
                         : energy_weight_series_tail(t, alternating);
    return s == 0.0 ? 0.0 : s * std::pow(t, -2.5) / SQRT_PI;
}

} // namespace

double kernel_value(Statistics stat, Quantity qty, Variant var,
                    double mu, double x) {
    check_mu(mu);
    double energy;
    if (var == Variant::SqrtShift) {
        energy = std::sqrt(x * x + mu * mu);
    } else {
        energy = std::fabs(x) - mu;
    }
    if (stat == Statistics::Fermi)
        return qty == Quantity::Entropy ? fermi_entropy_scalar(energy)
                                        : fermi_energy_scalar(energy);
    if (!(energy > 0.0))
        throw std::domain_error("kernel: Bose statistics require a positive one-particle energy");
    return qty == Quantity::Entropy ? bose_entropy_scalar(energy)
                                    : bose_energy_scalar(energy);
}

double laplace_weight(Statistics stat, Quantity qty, double mu, double t,
                      const SeriesControl& ctl) {
    validate(ctl);
    check_mu(mu);
    if (std::isnan(t) || t <= 0.0)
        throw std::domain_error("laplace_weight: requires t > 0");
    if (stat == Statistics::Bose && qty == Quantity::Energy && mu == 0.0)
        throw std::domain_error(
            "laplace_weight: the Bose energy weight diverges at mu = 0; "
            "a strictly negative chemical potential is required");
    if (t < 1e-8)
        return 0.0; // every profile is O(exp(-1/(4t))) here
    const double damp_exp = t * mu * mu;
    if (damp_exp > 750.0)
        return 0.0;
    double base;
    if (qty == Quantity::Entropy) {
        if (stat == Statistics::Fermi)
            base = t >= FERMI_ENTROPY_SPLIT ? fermi_entropy_weight_direct(t, ctl)
                                            : fermi_entropy_weight_inverted(t, ctl);
        else
            base = t >= BOSE_ENTROPY_SPLIT ? bose_entropy_weight_direct(t, ctl)
                                           : bose_entropy_weight_inverted(t, ctl);
    } else {
        base = energy_weight(t, stat == Statistics::Fermi, ctl);
    }
    return std::exp(-damp_exp) * base;
}

double laplace_reconstruct(Statistics stat, Quantity qty, Variant var,
                           double mu, double x,
                           const SeriesControl& sctl,
                           const QuadratureControl& qctl) {
    validate(sctl);
    validate(qctl);
    check_mu(mu);
    double arg;
    if (var == Variant::SqrtShift) {
        arg = x * x;
    } else {
        const double y = std::fabs(x) - mu;
        arg = y * y - mu * mu; // = x^2 - 2|x|mu >= 0
    }
    if (stat == Statistics::Bose && arg == 0.0 && mu == 0.0)
        throw std::domain_error(
            "laplace_reconstruct: integral diverges at zero one-particle energy");
    auto integrand = [&](double t) {
        const double w = laplace_weight(stat, qty, mu, t, sctl);
        if (w == 0.0)
            return 0.0;
        const double e = t * arg;
        return e > 750.0 ? 0.0 : std::exp(-e) * w;
    };
    const QuadratureOutcome head = gk_adaptive(integrand, 0.0, qctl.domain_split, qctl);
    const QuadratureOutcome tail = gk_adaptive_upper(integrand, qctl.domain_split, qctl);
    return head.value + tail.value;
}

} // namespace specact
