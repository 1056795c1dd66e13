#include "specact/gibbs.hpp"

#include <cfloat>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace specact {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

// Adjacent-pair reduction; deterministic for a fixed mode order no matter
// how the per-mode work was scheduled.
double tree_sum(std::vector<double>& buf) {
    std::size_t n = buf.size();
    if (n == 0) return 0.0;
    while (n > 1) {
        std::size_t out = 0;
        for (std::size_t i = 0; i + 1 < n; i += 2) buf[out++] = buf[i] + buf[i + 1];
        if (n & 1) buf[out++] = buf[n - 1];
        n = out;
    }
    return buf[0];
}

void check_params(const ThermoParams& p) {
    require(std::isfinite(p.beta) && p.beta > 0.0, "thermo: beta must be positive");
    require(std::isfinite(p.mu) && p.mu <= 0.0, "thermo: mu must be non-positive");
}

} // namespace

double mode_energy(Variant var, Statistics stat, double mu, double lambda) {
    require(std::isfinite(mu) && mu <= 0.0, "mode_energy: mu must be non-positive");
    require(std::isfinite(lambda) && lambda != 0.0, "mode_energy: lambda must be nonzero");
    double eps;
    if (var == Variant::SqrtShift)
        eps = std::hypot(lambda, mu);
    else if (stat == Statistics::Fermi)
        eps = std::fabs(lambda) - mu;
    else
        eps = lambda * lambda - mu;
    // cannot fire when the preconditions hold; loud for hand-built modes
    require(eps > 0.0, "mode_energy: one-particle energy must be positive");
    return eps;
}

ThermoReport thermo(const Spectrum& s, const ThermoParams& p, const TailPolicy& tail) {
    check_params(p);
    require(std::isfinite(tail.guard_factor) && tail.guard_factor > 0.0,
            "thermo: guard_factor must be positive");

    ThermoReport rep;
    if (s.modes.empty()) return rep;

    std::vector<double> lz, sv, ev;
    lz.reserve(s.modes.size());
    sv.reserve(s.modes.size());
    ev.reserve(s.modes.size());

    double eps_max = -std::numeric_limits<double>::infinity();
    double eps_second = -std::numeric_limits<double>::infinity();
    double m_top = 0.0;

    for (const Mode& mode : s.modes) {
        const double eps = mode_energy(p.variant, p.stat, p.mu, mode.lambda);
        const double m = static_cast<double>(mode.multiplicity);
        const double x = p.beta * eps;
        const double e = std::exp(-x);
        if (p.stat == Statistics::Fermi) {
            lz.push_back(m * std::log1p(e));
            sv.push_back(m * (x / (std::exp(x) + 1.0) + std::log1p(e)));
            ev.push_back(m * (eps / (std::exp(x) + 1.0)));
        } else {
            lz.push_back(-m * std::log1p(-e));
            sv.push_back(m * (x / std::expm1(x) - std::log1p(-e)));
            ev.push_back(m * (eps / std::expm1(x)));
        }

        if (eps > eps_max) {
            eps_second = eps_max;
            eps_max = eps;
            m_top = m;
        } else if (eps == eps_max) {
            m_top += m;
        } else if (eps > eps_second) {
            eps_second = eps;
        }
        rep.modes_used += mode.multiplicity;
    }

    rep.log_Z = tree_sum(lz);
    rep.entropy = tree_sum(sv);
    rep.energy = tree_sum(ev);

    // Dropped-tail estimate: pretend the spectrum continues past eps_max
    // with the last observed gap and multiplicity; the one-particle
    // Boltzmann mass of that continuation is a geometric series.
    const double gap = std::isfinite(eps_second) ? eps_max - eps_second : eps_max;
    const double q = std::exp(-p.beta * gap);
    rep.tail_bound = q < 1.0 ? m_top * std::exp(-p.beta * eps_max) * q / (1.0 - q)
                             : std::numeric_limits<double>::infinity();
    rep.reliable = std::exp(-p.beta * eps_max) < DBL_EPSILON * tail.guard_factor;
    return rep;
}

std::pair<double, double> entropy_energy_via_kernels(const Spectrum& s,
                                                     const ThermoParams& p) {
    check_params(p);
    std::vector<double> sv, ev;
    sv.reserve(s.modes.size());
    ev.reserve(s.modes.size());
    const double mu_scaled = p.beta * p.mu;
    const bool square_arg = p.stat == Statistics::Bose && p.variant == Variant::LinearShift;
    for (const Mode& mode : s.modes) {
        (void)mode_energy(p.variant, p.stat, p.mu, mode.lambda); // domain audit
        const double arg = square_arg ? p.beta * mode.lambda * mode.lambda
                                      : p.beta * mode.lambda;
        const double m = static_cast<double>(mode.multiplicity);
        sv.push_back(m * kernel_value(p.stat, Quantity::Entropy, p.variant, mu_scaled, arg));
        ev.push_back(m * kernel_value(p.stat, Quantity::Energy, p.variant, mu_scaled, arg));
    }
    return {tree_sum(sv), tree_sum(ev) / p.beta};
}

} // namespace specact
