#include "specact/verify.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <functional>
#include <stdexcept>
#include <vector>

#include "specact/asymptotics.hpp"
#include "specact/coeffs.hpp"
#include "specact/gibbs.hpp"
#include "specact/kernels.hpp"
#include "specact/quadrature.hpp"
#include "specact/specfun.hpp"
#include "specact/spectra.hpp"

namespace specact {

namespace {

// Accumulates residuals measured against their own tolerances. A residual
// above tolerance (or NaN) fails the whole check.
struct Acc {
    double worst = 0.0;
    bool ok = true;
    int points = 0;

    void add(double resid, double tol) {
        ++points;
        const double r = std::fabs(resid) / tol;
        if (r > worst) worst = r;
        if (!(std::fabs(resid) <= tol)) ok = false;
    }
    // hard condition with no meaningful residual scale
    void require(bool cond) {
        ++points;
        if (!cond) {
            ok = false;
            if (worst < 2.0) worst = 2.0;
        }
    }
};

std::string count_note(const Acc& acc, const char* what) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%d %s", acc.points, what);
    return buf;
}

CheckResult finish(const char* name, const Acc& acc, std::string detail) {
    return CheckResult{name, acc.ok, acc.worst, std::move(detail)};
}

double max3(double a, double b, double c) {
    return std::fmax(std::fmax(std::fabs(a), std::fabs(b)),
                     std::fmax(std::fabs(c), 1e-300));
}

CheckResult check_bedrock() {
    Acc acc;
    // the four ladder identities linking K_{nu-1}, K_nu, K_{nu+1}, K'_nu
    for (double nu : {0.0, 0.5, 1.0, 1.5, 2.5, 4.0}) {
        for (double z : {0.5, 1.0, 2.0, 5.0, 10.0}) {
            const double km = bessel_k(nu - 1.0, z);
            const double k0 = bessel_k(nu, z);
            const double kp = bessel_k(nu + 1.0, z);
            const double kd = bessel_k_deriv(nu, z);
            acc.add(z * km - z * kp + 2.0 * nu * k0, 1e-9 * max3(z * km, z * kp, 2.0 * nu * k0));
            acc.add(km + kp + 2.0 * kd, 1e-9 * max3(km, kp, 2.0 * kd));
            acc.add(z * kd + nu * k0 + z * km, 1e-9 * max3(z * kd, nu * k0, z * km));
            acc.add(z * kd - nu * k0 + z * kp, 1e-9 * max3(z * kd, nu * k0, z * kp));
        }
    }
    // half-integer closed form
    for (double z : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        const double closed = std::sqrt(M_PI / (2.0 * z)) * std::exp(-z);
        acc.add(bessel_k(0.5, z) - closed, 1e-10 * closed);
    }
    // theta inversion as a residual between two independent direct series
    SeriesControl tight{1e-14, 1e-15, 100000};
    for (double t : {0.5, 0.8, 1.2, 2.0}) {
        const double lhs = theta_direct_series(1.0 / t, tight);
        const double rhs = std::sqrt(t) * theta_direct_series(t, tight);
        acc.add(lhs - rhs, 1e-12);
    }
    // completed-zeta anchor values
    acc.add(riemann_xi(0.0) - 0.5, 1e-10 * 0.5);
    acc.add(riemann_xi(2.0) - M_PI / 6.0, 1e-10 * (M_PI / 6.0));
    return finish("bessel-theta-xi-bedrock", acc, count_note(acc, "residuals"));
}

CheckResult check_reconstruction() {
    Acc acc;
    for (auto stat : {Statistics::Fermi, Statistics::Bose})
        for (auto qty : {Quantity::Entropy, Quantity::Energy})
            for (auto var : {Variant::SqrtShift, Variant::LinearShift})
                for (double x : {0.0, 0.5, 1.0, 2.0, 5.0})
                    for (double mu : {-0.25, -1.0, -2.0}) {
                        const double direct = kernel_value(stat, qty, var, mu, x);
                        const double rebuilt = laplace_reconstruct(stat, qty, var, mu, x);
                        acc.add(direct - rebuilt, 1e-8 * (1.0 + std::fabs(direct)));
                    }
    return finish("laplace-reconstruction", acc, count_note(acc, "kernel points"));
}

double weighted_integral(const std::function<double(double)>& f, double nu) {
    QuadratureControl ctl;
    ctl.rel_tol = 1e-12;
    const auto g = [&](double x) { return f(x) * std::pow(x, nu); };
    const double head = gk_adaptive(g, 0.0, 1.0, ctl).value;
    return head + gk_adaptive_upper(g, 1.0, ctl).value;
}

CheckResult check_moments() {
    Acc acc;
    for (double nu : {0.0, 1.0, 2.0, 3.0})
        for (double mu : {-0.5, -1.0, -2.0}) {
            const auto hf = [&](double x) {
                return kernel_value(Statistics::Fermi, Quantity::Entropy,
                                    Variant::SqrtShift, mu, x);
            };
            const auto hb = [&](double x) {
                return kernel_value(Statistics::Bose, Quantity::Entropy,
                                    Variant::SqrtShift, mu, x);
            };
            const double qf = weighted_integral(hf, nu);
            const double qb = weighted_integral(hb, nu);
            acc.add(moment_closed(MomentKind::FermiEntropy, nu, mu) - qf,
                    1e-8 * (1.0 + std::fabs(qf)));
            acc.add(moment_closed(MomentKind::BoseEntropy, nu, mu) - qb,
                    1e-8 * (1.0 + std::fabs(qb)));
        }
    // the two halves of the fermi entropy kernel have their own closed sums
    const double mu = -1.0;
    for (double nu : {0.0, 2.0}) {
        const auto log_part = [&](double x) {
            return std::log1p(std::exp(-std::sqrt(x * x + mu * mu)));
        };
        const auto occ_part = [&](double x) {
            const double e = std::sqrt(x * x + mu * mu);
            return e / (std::exp(e) + 1.0);
        };
        const double ql = weighted_integral(log_part, nu);
        const double qo = weighted_integral(occ_part, nu);
        double sl = 0.0, so = 0.0;
        const double m = -mu;
        for (int n = 1; n <= 60; ++n) {
            const double sgn = (n % 2 == 1) ? 1.0 : -1.0;
            sl += sgn * std::pow(double(n), -0.5 * nu - 1.0)
                  * bessel_k(0.5 * nu + 1.0, n * m);
            so += sgn * (m * std::pow(double(n), -0.5 * nu)
                             * bessel_k(0.5 * nu, n * m)
                         + (1.0 + nu) * std::pow(double(n), -0.5 * nu - 1.0)
                               * bessel_k(0.5 * nu + 1.0, n * m));
        }
        const double pref = gamma_fn(0.5 * (nu + 1.0)) / std::sqrt(M_PI);
        sl *= std::pow(m, 0.5 * nu + 1.0) * std::exp2(0.5 * nu) * pref;
        so *= std::pow(2.0 * m, 0.5 * nu) * pref;
        acc.add(sl - ql, 1e-8 * (1.0 + std::fabs(ql)));
        acc.add(so - qo, 1e-8 * (1.0 + std::fabs(qo)));
        acc.add(moment_closed(MomentKind::FermiEntropy, nu, mu) - (ql + qo),
                1e-8 * (1.0 + std::fabs(ql + qo)));
    }
    return finish("kernel-moments", acc, count_note(acc, "moment identities"));
}

bool poisson_singular(CoeffKind k, double a) {
    const bool entropy = k == CoeffKind::GammaFermiEntropy || k == CoeffKind::ChiBoseEntropy;
    const bool integer = std::fabs(a - std::nearbyint(a)) < 1e-12;
    if (entropy) return integer && a <= 0.0;
    const bool half = std::fabs(a - std::nearbyint(a - 0.5) - 0.5) < 1e-12;
    return (half && a <= 0.5) || (integer && a < 0.0);
}

bool xi_singular(CoeffKind k, double a) {
    switch (k) {
        case CoeffKind::GammaFermiEntropy: return false;
        case CoeffKind::ChiBoseEntropy:
            return std::fabs(a - std::nearbyint(a)) < 1e-12 && a <= 0.0;
        default:
            return std::fabs(a - std::nearbyint(a - 0.5) - 0.5) < 1e-12 && a <= 0.5;
    }
}

CheckResult check_representations() {
    Acc acc;
    const CoeffKind kinds[] = {CoeffKind::GammaFermiEntropy, CoeffKind::OmegaFermiEnergy,
                               CoeffKind::ChiBoseEntropy, CoeffKind::KappaBoseEnergy};
    for (CoeffKind k : kinds)
        for (double mu : {-0.5, -1.0, -2.0, -4.0})
            for (int i = 0; i <= 12; ++i) {
                const double a = -3.0 + 0.5 * i;
                const CoeffResult b = coeff(k, a, mu, Representation::BesselSeries);
                const CoeffResult p = coeff(k, a, mu, Representation::PoissonSeries);
                if (poisson_singular(k, a))
                    acc.add(p.value - b.value, 1e-6 * (1.0 + std::fabs(b.value)));
                else
                    acc.add(p.value - b.value, b.est_error + p.est_error);
            }
    // power-series representation inside its disk
    for (CoeffKind k : kinds) {
        const bool bose = k == CoeffKind::ChiBoseEntropy || k == CoeffKind::KappaBoseEnergy;
        const std::vector<double> mus = bose ? std::vector<double>{-1.0, -3.0, -5.0}
                                             : std::vector<double>{-0.5, -1.0, -2.0};
        for (double mu : mus)
            for (int i = 0; i <= 12; ++i) {
                const double a = -3.0 + 0.5 * i;
                const CoeffResult b = coeff(k, a, mu, Representation::BesselSeries);
                const CoeffResult x = coeff(k, a, mu, Representation::XiSeries);
                const double tol = xi_singular(k, a) ? 1e-6 : 1e-8;
                acc.add(x.value - b.value, tol * (1.0 + std::fabs(b.value)));
            }
    }
    // and a hard rejection outside it
    bool threw = false;
    try {
        (void)coeff(CoeffKind::GammaFermiEntropy, 0.3, -4.0, Representation::XiSeries);
    } catch (const std::domain_error&) {
        threw = true;
    }
    acc.require(threw);
    threw = false;
    try {
        (void)coeff(CoeffKind::ChiBoseEntropy, 0.3, -6.5, Representation::XiSeries);
    } catch (const std::domain_error&) {
        threw = true;
    }
    acc.require(threw);
    return finish("representation-equivalence", acc, count_note(acc, "pairings"));
}

CheckResult check_small_potential() {
    Acc acc;
    for (double a : {-1.0, 0.5, 1.0, 2.0}) {
        const double lim = limit_coeff(CoeffKind::GammaFermiEntropy, a);
        double prev = std::numeric_limits<double>::infinity();
        double gap = prev;
        for (double mu : {-1e-1, -1e-2, -1e-3}) {
            const Representation rep =
                choose_representation(CoeffKind::GammaFermiEntropy, a, mu);
            gap = std::fabs(coeff(CoeffKind::GammaFermiEntropy, a, mu, rep).value - lim);
            acc.require(gap < prev);
            prev = gap;
        }
        acc.add(gap, 1e-4);
    }
    acc.add(limit_coeff(CoeffKind::GammaFermiEntropy, 0.0) - M_LN2, 1e-10 * M_LN2);
    const double half = 0.5 / std::sqrt(M_PI);
    acc.add(limit_coeff(CoeffKind::GammaFermiEntropy, 0.5) - half, 1e-10 * half);
    return finish("small-potential-limit", acc, count_note(acc, "limit points"));
}

CheckResult check_thermodynamics() {
    Acc acc;
    const Spectrum circle = circle_spectrum(120);
    for (auto stat : {Statistics::Fermi, Statistics::Bose})
        for (auto var : {Variant::SqrtShift, Variant::LinearShift})
            for (double beta : {0.25, 1.0, 4.0})
                for (double mu : {0.0, -1.0}) {
                    const ThermoParams p{beta, mu, stat, var};
                    const ThermoReport r = thermo(circle, p);
                    acc.add(r.entropy - (beta * r.energy + r.log_Z),
                            1e-12 * std::fmax(1.0, std::fabs(r.entropy)));
                }
    // additivity under direct sum
    const Spectrum a = circle_spectrum(100);
    const Spectrum b = torus_spectrum(2, 15);
    const Spectrum ab = direct_sum(a, b);
    for (auto stat : {Statistics::Fermi, Statistics::Bose}) {
        const ThermoParams p{0.7, -0.5, stat, Variant::SqrtShift};
        const ThermoReport ra = thermo(a, p), rb = thermo(b, p), rab = thermo(ab, p);
        acc.add(rab.log_Z - (ra.log_Z + rb.log_Z),
                1e-12 * std::fmax(1.0, std::fabs(rab.log_Z)));
        acc.add(rab.entropy - (ra.entropy + rb.entropy),
                1e-12 * std::fmax(1.0, std::fabs(rab.entropy)));
        acc.add(rab.energy - (ra.energy + rb.energy),
                1e-12 * std::fmax(1.0, std::fabs(rab.energy)));
    }
    // energy as the beta-derivative of -log Z
    const double h = 1e-4;
    for (auto pick : {ThermoParams{1.0, -1.0, Statistics::Fermi, Variant::SqrtShift},
                      ThermoParams{0.7, -0.5, Statistics::Bose, Variant::LinearShift}}) {
        ThermoParams lo = pick, hi = pick;
        lo.beta -= h;
        hi.beta += h;
        const double fd = -(thermo(circle, hi).log_Z - thermo(circle, lo).log_Z) / (2.0 * h);
        const double ex = thermo(circle, pick).energy;
        acc.add(fd - ex, 1e-6 * std::fabs(ex));
    }
    // one fermionic mode at vanishing beta*energy carries log 2 of entropy
    Spectrum single;
    single.modes = {Mode{1.0, 1}};
    single.label = "single";
    const ThermoReport r = thermo(single, ThermoParams{1e-5, 0.0, Statistics::Fermi,
                                                       Variant::SqrtShift});
    acc.add(r.entropy - M_LN2, 1e-9);
    return finish("exact-thermodynamics", acc, count_note(acc, "identities"));
}

// Relative scale below which the truncated reference sum cannot resolve a
// comparison row. The entropy tail carries roughly a (beta eps + 1) weight
// on the plain occupation tail, and log(tail_bound) tracks -beta eps_top,
// so the weight is recovered from the bound itself; the factor 10 is slack.
double reference_floor(const Spectrum& s, const ThermoParams& p, double exact) {
    const double tb = thermo(s, p).tail_bound;
    const double noise =
        10.0 * (std::fabs(std::log(std::max(tb, 1e-300))) + 4.0) * tb;
    return std::max(MEASUREMENT_FLOOR_REL, noise / std::max(std::fabs(exact), 1e-300));
}

// Decreasing-remainder and positive-rate gates over a comparison table,
// waiving rows the reference cannot resolve. Returns false when fewer than
// two rows carry signal, so the rate gate was waived.
bool compare_gates(Acc& acc, const CompareTable& tab, const Spectrum& s,
                   const ThermoParams& base) {
    std::vector<double> res_floor(tab.rows.size());
    for (std::size_t i = 0; i < tab.rows.size(); ++i) {
        ThermoParams p = base;
        p.beta = tab.rows[i].beta;
        res_floor[i] = reference_floor(s, p, tab.rows[i].exact);
    }
    for (std::size_t i = 1; i < tab.rows.size(); ++i) {
        const bool below_floor = tab.rows[i].rel_err < res_floor[i];
        acc.require(below_floor || tab.rows[i].rel_err < tab.rows[i - 1].rel_err);
    }
    // the last kept term is beta-independent, so the remainder must vanish
    // with a positive fitted rate; fit only rows above their floor
    int pts = 0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < tab.rows.size(); ++i) {
        if (!(tab.rows[i].rel_err > res_floor[i])) continue;
        const double x = std::log(tab.rows[i].beta);
        const double y = std::log(tab.rows[i].rel_err);
        ++pts;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    if (pts < 2) return false;
    acc.require((pts * sxy - sx * sy) / (pts * sxx - sx * sx) > 0.0);
    return true;
}

CheckResult check_expansion(int n_max) {
    Acc acc;
    std::string notes;
    const Spectrum s = circle_spectrum(n_max);
    for (auto stat : {Statistics::Fermi, Statistics::Bose}) {
        ExpansionRequest req;
        req.h = circle_heat_expansion();
        req.p = ThermoParams{1.0, -1.0, stat, Variant::SqrtShift};
        req.qty = Quantity::Entropy;
        req.L = 1;
        const CompareTable tab = compare_exact(req, s, {0.2, 0.1, 0.05, 0.025});
        acc.add(tab.rows[0].rel_err, 5e-2);
        if (!compare_gates(acc, tab, s, req.p)) {
            notes += (stat == Statistics::Fermi) ? " fermi" : " bose";
            notes += " slope waived (comparison at its resolution floor);";
        }
    }
    return finish("expansion-vs-exact", acc, count_note(acc, "grid conditions") + notes);
}

CheckResult check_linear_shift(int n_max) {
    Acc acc;
    // the k = 0 column against the plain expansion near mu = 0-
    ExpansionRequest primed;
    primed.h = circle_heat_expansion();
    primed.p = ThermoParams{0.1, -1e-6, Statistics::Fermi, Variant::LinearShift};
    primed.qty = Quantity::Entropy;
    primed.L = 1;
    primed.K = 2;
    ExpansionRequest plain = primed;
    plain.p.variant = Variant::SqrtShift;
    plain.K = 0;
    const ExpansionResult rp = expand_primed(primed);
    const ExpansionResult ru = expand_unprimed(plain);
    for (const PsiTerm& t : rp.per_term) {
        if (t.k != 0) continue;
        bool found = false;
        for (const PsiTerm& u : ru.per_term)
            if (u.l == t.l) {
                acc.add(t.value - u.value, 1e-6 * (1.0 + std::fabs(u.value)));
                found = true;
            }
        acc.require(found);
    }
    // shifted-spectrum comparison improves under grid refinement
    ExpansionRequest req;
    req.h = circle_heat_expansion();
    req.p = ThermoParams{1.0, -1.0, Statistics::Fermi, Variant::LinearShift};
    req.qty = Quantity::Entropy;
    req.L = 1;
    req.K = 2;
    const Spectrum s = circle_spectrum(n_max);
    const CompareTable tab = compare_exact(req, s, {0.2, 0.1, 0.05, 0.025});
    compare_gates(acc, tab, s, req.p);
    return finish("linear-shift-consistency", acc, count_note(acc, "term checks"));
}

CheckResult check_zero_potential() {
    Acc acc;
    bool threw = false;
    try {
        (void)laplace_weight(Statistics::Bose, Quantity::Energy, 0.0, 1.0);
    } catch (const std::domain_error&) {
        threw = true;
    }
    acc.require(threw);
    threw = false;
    try {
        (void)coeff(CoeffKind::KappaBoseEnergy, -1.0, 0.0, Representation::Quadrature);
    } catch (const std::domain_error&) {
        threw = true;
    }
    acc.require(threw);
    // the fermi energy route stays finite at mu = 0
    const double w = laplace_weight(Statistics::Fermi, Quantity::Energy, 0.0, 1.0);
    acc.require(std::isfinite(w));
    const double q =
        coeff(CoeffKind::OmegaFermiEnergy, 0.25, 0.0, Representation::Quadrature).value;
    const double lim = limit_coeff(CoeffKind::OmegaFermiEnergy, 0.25);
    acc.add(q - lim, 1e-6 * (1.0 + std::fabs(lim)));
    return finish("bose-zero-potential-rejection", acc, count_note(acc, "domain rules"));
}

} // namespace

std::vector<CheckResult> run_verification(int n_max) {
    std::vector<CheckResult> out;
    out.push_back(check_bedrock());
    out.push_back(check_reconstruction());
    out.push_back(check_moments());
    out.push_back(check_representations());
    out.push_back(check_small_potential());
    out.push_back(check_thermodynamics());
    out.push_back(check_expansion(n_max));
    out.push_back(check_linear_shift(n_max));
    out.push_back(check_zero_potential());
    return out;
}

std::string to_line(const CheckResult& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "[%s] %s (worst residual %.3g of tolerance)",
                  r.pass ? "PASS" : "FAIL", r.name.c_str(), r.worst);
    std::string line = buf;
    if (!r.detail.empty()) {
        line += ": ";
        line += r.detail;
    }
    return line;
}

} // namespace specact
