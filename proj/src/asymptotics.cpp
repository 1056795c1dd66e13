#include "specact/asymptotics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "specact/specfun.hpp"

namespace specact {

namespace {

CoeffKind kind_for(Statistics stat, Quantity qty) {
    if (stat == Statistics::Fermi)
        return qty == Quantity::Entropy ? CoeffKind::GammaFermiEntropy
                                        : CoeffKind::OmegaFermiEnergy;
    return qty == Quantity::Entropy ? CoeffKind::ChiBoseEntropy
                                    : CoeffKind::KappaBoseEnergy;
}

// Exponential series away from zero scaled potential, disk series inside
// its convergence radius, lattice series beyond it.
Representation expansion_rep(Statistics stat, double mu_scaled) {
    if (std::fabs(mu_scaled) >= 0.05) return Representation::BesselSeries;
    const double radius = stat == Statistics::Fermi ? M_PI : 2.0 * M_PI;
    return std::fabs(mu_scaled) < radius ? Representation::XiSeries
                                         : Representation::PoissonSeries;
}

void check_request(const ExpansionRequest& req, Variant expected, const char* op) {
    const std::string who = op;
    if (req.p.variant != expected)
        throw std::domain_error(who + ": request's variant belongs to the other expansion");
    if (!(std::isfinite(req.p.beta) && req.p.beta > 0.0))
        throw std::domain_error(who + ": beta must be positive");
    if (!(std::isfinite(req.p.mu) && req.p.mu < 0.0))
        throw std::domain_error(who + ": mu must be strictly negative");
    if (req.L < 0 || req.K < 0)
        throw std::domain_error(who + ": L and K must be non-negative");
    validate(req.sctl);
    validate(req.qctl);
}

double coeff_at(const ExpansionRequest& req, CoeffKind kind, double a) {
    const double mu_scaled = req.p.beta * req.p.mu;
    if (req.call_log) req.call_log->push_back({kind, a, mu_scaled});
    return coeff(kind, a, mu_scaled, expansion_rep(req.p.stat, mu_scaled),
                 req.sctl, req.qctl)
        .value;
}

std::string term_context(const char* op, int l, double z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s: term (l=%d, z=%g): ", op, l, z);
    return buf;
}

// Missing zeta data already names its point; everything else gains the
// (l, z) coordinates of the term that failed.
template <typename F>
double guarded(const char* op, int l, double z, F&& body) {
    try {
        return body();
    } catch (const MissingZetaDatum&) {
        throw;
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(term_context(op, l, z) + e.what());
    } catch (const std::domain_error& e) {
        throw std::domain_error(term_context(op, l, z) + e.what());
    }
}

bool nonpositive_integer(double x, long& n) {
    const double r = std::nearbyint(x);
    if (std::fabs(x - r) > 1e-9 || r > 0.5) return false;
    n = std::lround(r);
    return true;
}

void finish(ExpansionResult& out) {
    out.partial_sums.reserve(out.per_term.size());
    double acc = 0.0;
    for (const PsiTerm& t : out.per_term) {
        acc += t.value;
        out.partial_sums.push_back(acc);
    }
    out.total = acc;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxy / sxx;
}

} // namespace

ExpansionResult expand_unprimed(const ExpansionRequest& req) {
    check_request(req, Variant::SqrtShift, "expand_unprimed");
    const CoeffKind kind = kind_for(req.p.stat, req.qty);
    const double en = req.qty == Quantity::Energy ? 1.0 : 0.0;
    ExpansionResult out;
    for (int l = 0; l <= req.L; ++l) {
        double psi = 0.0;
        if (static_cast<std::size_t>(l) < req.h.groups.size())
            for (const HeatCoefficient& c : req.h.groups[l])
                psi += guarded("expand_unprimed", l, c.z, [&] {
                    return c.a * std::pow(req.p.beta, -2.0 * c.z - en)
                           * coeff_at(req, kind, -c.z);
                });
        out.per_term.push_back({l, -1, psi});
    }
    finish(out);
    return out;
}

ExpansionResult expand_primed(const ExpansionRequest& req) {
    check_request(req, Variant::LinearShift, "expand_primed");
    const bool fermi = req.p.stat == Statistics::Fermi;
    const CoeffKind kind = kind_for(req.p.stat, req.qty);
    const double en = req.qty == Quantity::Energy ? 1.0 : 0.0;

    ExpansionResult out;
    for (int l = 0; l <= req.L; ++l) {
        for (int k = 0; k <= req.K; ++k) {
            if (k > 0) {
                // Triangular truncation: group l enters at order k only if
                // its strip bound fits the budget left over from K.
                if (static_cast<std::size_t>(l + 1) >= req.h.scale.size()) continue;
                const double budget =
                    req.h.scale[0]
                    + (fermi ? 0.5 * (req.K - k) : static_cast<double>(req.K - k))
                    + 1e-9;
                if (!(req.h.scale[l + 1] <= budget)) continue;
            }
            double sum = 0.0;
            if (static_cast<std::size_t>(l) < req.h.groups.size()) {
                for (const HeatCoefficient& c : req.h.groups[l]) {
                    const double z = c.z;
                    sum += guarded("expand_primed", l, z, [&] {
                        const double zk = fermi ? z + 0.5 * k : 0.5 * (z + k);
                        const double arg = fermi ? -z + 0.5 * k : 0.5 * (-z + k);
                        const double power = (fermi ? -2.0 * z : -z) + k - en;
                        double front;
                        long n = 0;
                        if (nonpositive_integer(zk, n)) {
                            // Gamma pole: factorial branch on the zeta value
                            const double sign = (-n) % 2 == 0 ? 1.0 : -1.0;
                            front = sign / std::tgamma(1.0 + static_cast<double>(-n))
                                    * req.h.zeta_value_at(z);
                        } else {
                            const double res = req.h.zeta_residue_at(z);
                            if (res == 0.0) return 0.0;
                            front = (fermi ? 1.0 : 0.5) * gamma_fn(zk) * res;
                        }
                        return front * coeff_at(req, kind, arg)
                               * std::pow(req.p.beta, power);
                    });
                }
            }
            double weight = 1.0; // (2 mu)^k / k!
            for (int i = 1; i <= k; ++i) weight *= 2.0 * req.p.mu / static_cast<double>(i);
            out.per_term.push_back({l, k, weight * sum});
        }
    }
    finish(out);
    return out;
}

CompareTable compare_exact(const ExpansionRequest& req, const Spectrum& s,
                           const std::vector<double>& beta_grid) {
    if (beta_grid.empty())
        throw std::domain_error("compare_exact: beta grid must be nonempty");
    CompareTable tab;
    std::vector<double> lx, ly_rel, ly_abs;
    for (double beta : beta_grid) {
        ExpansionRequest r = req;
        r.p.beta = beta;
        const ThermoReport exact = thermo(s, r.p);
        const double ex = r.qty == Quantity::Entropy ? exact.entropy : exact.energy;
        const double ap = (r.p.variant == Variant::SqrtShift ? expand_unprimed(r)
                                                             : expand_primed(r))
                              .total;
        const double abs_err = std::fabs(ex - ap);
        const double rel_err = abs_err / std::max(std::fabs(ex), 1e-300);
        tab.rows.push_back({beta, ex, ap, abs_err, rel_err});
        if (rel_err > MEASUREMENT_FLOOR_REL) {
            lx.push_back(std::log(beta));
            ly_rel.push_back(std::log(rel_err));
            ly_abs.push_back(std::log(std::max(abs_err, 1e-300)));
        }
    }
    tab.points_used = static_cast<int>(lx.size());
    tab.rel_slope = fit_slope(lx, ly_rel);
    tab.abs_slope = fit_slope(lx, ly_abs);
    return tab;
}

} // namespace specact
