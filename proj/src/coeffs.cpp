#include "specact/coeffs.hpp"

#include "specact/kernels.hpp"
#include "specact/quadrature.hpp"
#include "specact/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>

namespace specact {

namespace {

constexpr double SQRT_PI = 1.7724538509055160273;

bool is_fermi(CoeffKind k) {
    return k == CoeffKind::GammaFermiEntropy || k == CoeffKind::OmegaFermiEnergy;
}

bool is_energy(CoeffKind k) {
    return k == CoeffKind::OmegaFermiEnergy || k == CoeffKind::KappaBoseEnergy;
}

Statistics kind_stat(CoeffKind k) {
    return is_fermi(k) ? Statistics::Fermi : Statistics::Bose;
}

Quantity kind_qty(CoeffKind k) {
    return is_energy(k) ? Quantity::Energy : Quantity::Entropy;
}

bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-9; }

// ---------------------------------------------------------------- Bessel ---

// gamma/chi:  pref * sum_n s_n n^{a+1/2} K_{3/2-a}(n m),
//             pref = 2^{1/2-a} m^{3/2-a} / sqrt(pi)
// omega/kappa: pref * sum_n s_n [ n^{a+1/2} m K_{-a-1/2}(n m)
//                                 - 2a n^{a-1/2} K_{-a+1/2}(n m) ],
//             pref = 2^{1/2-a} m^{1/2-a} / sqrt(pi)
// s_n = (-1)^{n+1} for the Fermi kinds, +1 for the Bose kinds.
double bessel_term(CoeffKind kind, double a, double m, int n,
                   const QuadratureControl& qctl) {
    const double z = n * m;
    double t;
    if (!is_energy(kind)) {
        t = std::pow(double(n), a + 0.5) * bessel_k(1.5 - a, z, qctl);
    } else {
        t = std::pow(double(n), a + 0.5) * m * bessel_k(-a - 0.5, z, qctl)
            - 2.0 * a * std::pow(double(n), a - 0.5) * bessel_k(-a + 0.5, z, qctl);
    }
    if (is_fermi(kind) && n % 2 == 0) t = -t;
    return t;
}

double bessel_prefactor(CoeffKind kind, double a, double m) {
    const double expo = is_energy(kind) ? 0.5 - a : 1.5 - a;
    return std::exp2(0.5 - a) * std::pow(m, expo) / SQRT_PI;
}

// Upper bound for the magnitude of term n, from
// K_nu(z) <= sqrt(pi/(2z)) e^{-z} e^{nu^2/(2z)} once z is past the turning
// region; only trusted for z >= nu_eff^2 + 1.
double bessel_term_bound(CoeffKind kind, double a, double m, int n,
                         double nu_eff) {
    const double z = n * m;
    const double envelope =
        std::sqrt(M_PI / (2.0 * z)) * std::exp(-z + nu_eff * nu_eff / (2.0 * z));
    const double alg = is_energy(kind)
                           ? std::pow(double(n), a + 0.5) * (m + 2.0 * std::abs(a) / n)
                           : std::pow(double(n), a + 0.5);
    return alg * envelope;
}

CoeffResult bessel_plain(CoeffKind kind, double a, double mu,
                         const SeriesControl& sctl,
                         const QuadratureControl& qctl) {
    const double m = -mu;
    const double pref = bessel_prefactor(kind, a, m);
    const double nu_eff = std::abs(a) + 1.5;

    double sum = 0.0;
    double abs_acc = 0.0;
    double prev_bound = std::numeric_limits<double>::infinity();
    double tail = 0.0;
    int n = 0;
    for (;;) {
        ++n;
        if (n > sctl.max_terms)
            throw ConvergenceError("coeff: Bessel series exceeded max_terms");
        const double t = bessel_term(kind, a, m, n, qctl);
        sum += t;
        abs_acc += std::abs(t);
        const double bound = bessel_term_bound(kind, a, m, n + 1, nu_eff);
        const double tol =
            0.25 * std::max(sctl.abs_tol / std::abs(pref), sctl.rel_tol * std::abs(sum));
        if ((n + 1) * m >= nu_eff * nu_eff + 1.0 && bound < prev_bound && bound < tol) {
            const double q = std::min(0.9, bound / prev_bound);
            tail = bound / (1.0 - q);
            break;
        }
        prev_bound = bound;
    }

    CoeffResult out;
    out.value = pref * sum;
    out.rep = Representation::BesselSeries;
    out.terms_used = n;
    out.est_error = std::abs(pref) * tail
                    + std::abs(pref) * abs_acc * (4.0 * qctl.rel_tol + 1e-14)
                    + 3e-14 * std::abs(out.value);
    return out;
}

// --------------------------------------------------------------- Poisson ---

// Analytic continuation of the lattice tails through the Riemann zeta
// function: zeta_H(s, N) and zeta_H(s, N + 1/2) reduce to zeta(s) plus a
// short explicit sum, which keeps every piece O(term scale) and lets the
// trivial zeros cancel the would-be huge contributions at negative s.
double lattice_zeta(double s, bool odd, int N, const SeriesControl& sctl) {
    // Far to the right the continuation below would cancel two 2^s-sized
    // quantities; there the tail is an ordinary convergent Hurwitz sum.
    if (s > 1.5)
        return hurwitz_zeta(s, odd ? N + 0.5 : std::max(N, 1) + 0.0, sctl);
    double v;
    if (odd) {
        v = (std::pow(2.0, s) - 1.0) * riemann_zeta(s, sctl);
        for (int k = 0; k < N; ++k) v -= std::pow(k + 0.5, -s);
    } else {
        v = riemann_zeta(s, sctl);
        for (int k = 1; k < N; ++k) v -= std::pow(double(k), -s);
    }
    return v;
}

struct LatticeSum {
    double value = 0.0;    // sum over the half lattice n >= n0, continued
    double est = 0.0;      // truncation bound for the binomial tail
    double max_piece = 0.0;
    int terms = 0;
};

// Half-lattice sum of T(w_n) where
//   entropy family: T(w) = ((2a-1) w^2 - mu^2) (w^2 + mu^2)^{-a-1}
//   energy family:  T(w) = w^2 (w^2 + mu^2)^{-a-1}
// over w_n = (2n+1)pi (odd, n >= 0) or w_n = 2 pi n (even, n >= 1).
// The first N terms are summed directly; the rest, expanded binomially in
// (mu/w)^2, is a finite-looking stack of zeta values.
LatticeSum lattice_sum(bool energy, bool odd, double a, double m2, int N,
                       const SeriesControl& sctl) {
    LatticeSum out;
    for (int n = odd ? 0 : 1; n < N; ++n) {
        const double w = odd ? (2.0 * n + 1.0) * M_PI : 2.0 * M_PI * n;
        const double w2 = w * w;
        const double core = std::pow(w2 + m2, -a - 1.0);
        const double t = energy ? w2 * core : ((2.0 * a - 1.0) * w2 - m2) * core;
        out.value += t;
        out.max_piece = std::max(out.max_piece, std::abs(t));
        ++out.terms;
    }

    double b = 1.0;      // binom(-a-1, j)
    double b_prev = 0.0; // binom(-a-1, j-1)
    double m2j = 1.0;    // mu^{2j}
    double last = 0.0;
    int small_run = 0;
    for (int j = 0; j <= 120; ++j) {
        if (j > 0) {
            b_prev = b;
            b *= (-a - j) / j;
            m2j *= m2;
            if (b == 0.0 && b_prev == 0.0) { small_run = 2; break; }
        }
        const double cj = energy ? b * m2j
                                 : (j == 0 ? 2.0 * a - 1.0
                                           : m2j * ((2.0 * a - 1.0) * b - b_prev));
        ++out.terms;
        const double sj = 2.0 * a + 2.0 * j;
        if (std::abs(sj - 1.0) < 1e-9) {
            if (cj != 0.0)
                throw std::domain_error(
                    "coeff: PoissonSeries tail hits the zeta pole at this order; "
                    "evaluate through the paired-limit procedure");
            // The coefficient zero meets the zeta pole: the product has the
            // finite limit c_j'(a) / (4 pi), with residue 1 in s = 2a + 2j.
            double harm = 0.0, harm_prev = 0.0;
            for (int i = 1; i <= j; ++i) {
                const double d = 1.0 / (-a - i);
                harm += d;
                if (i < j) harm_prev += d;
            }
            const double bd = -b * harm;
            const double bd_prev = -b_prev * harm_prev;
            const double cd =
                j == 0 ? 2.0
                       : m2j * (2.0 * b + (2.0 * a - 1.0) * bd - bd_prev);
            const double piece = cd / (4.0 * M_PI);
            out.value += piece;
            out.max_piece = std::max(out.max_piece, std::abs(piece));
            continue;
        }
        if (cj == 0.0) continue;
        const double piece =
            cj * std::pow(2.0 * M_PI, -sj) * lattice_zeta(sj, odd, N, sctl);
        out.value += piece;
        out.max_piece = std::max(out.max_piece, std::abs(piece));
        last = std::abs(piece);
        const double tol =
            0.25 * std::max(sctl.abs_tol, sctl.rel_tol * std::abs(out.value));
        if (j >= 4 && last < tol) {
            if (++small_run >= 2) break;
        } else {
            small_run = 0;
        }
    }
    if (small_run < 2)
        throw ConvergenceError("coeff: PoissonSeries binomial tail did not converge");
    out.est = last;
    return out;
}

int poisson_partial_count(double m, bool odd) {
    // Smallest N keeping the binomial ratio (m/w_min)^2 <= 1/2.25, so the
    // tail converges briskly while the direct partial stays tiny (which is
    // what protects the strongly negative orders from cancellation).
    if (odd) {
        int N = 0;
        while ((2.0 * N + 1.0) * M_PI < 1.5 * m) ++N;
        return N;
    }
    int N = 1;
    while (2.0 * M_PI * N < 1.5 * m) ++N;
    return N;
}

CoeffResult poisson_plain(CoeffKind kind, double a, double mu,
                          const SeriesControl& sctl) {
    const double m = -mu;
    const double m2 = m * m;
    const bool odd = is_fermi(kind);
    const bool energy = is_energy(kind);
    const int N = poisson_partial_count(m, odd);
    const LatticeSum ls = lattice_sum(energy, odd, a, m2, N, sctl);

    CoeffResult out;
    out.rep = Representation::PoissonSeries;
    out.terms_used = ls.terms;
    double pref;
    double closure = 0.0;
    switch (kind) {
    case CoeffKind::GammaFermiEntropy:
        pref = gamma_fn(a);
        out.value = pref * ls.value;
        break;
    case CoeffKind::ChiBoseEntropy: {
        pref = gamma_fn(a);
        const double center = -std::pow(m2, -a); // T(0) = -mu^{-2a}
        out.value = -0.5 * pref * (center + 2.0 * ls.value);
        break;
    }
    case CoeffKind::OmegaFermiEnergy:
        pref = 2.0 * gamma_fn(a + 1.0);
        closure = -std::pow(m, 1.0 - 2.0 * a) * gamma_fn(a - 0.5) / (4.0 * SQRT_PI);
        out.value = pref * ls.value + closure;
        break;
    case CoeffKind::KappaBoseEnergy:
        pref = -2.0 * gamma_fn(a + 1.0);
        closure = std::pow(m, 1.0 - 2.0 * a) * gamma_fn(a - 0.5) / (4.0 * SQRT_PI);
        out.value = pref * ls.value + closure;
        break;
    default:
        throw std::logic_error("coeff: unknown kind");
    }
    out.est_error = std::abs(pref) * (ls.est + 5e-15 * ls.max_piece)
                    + 1e-14 * std::abs(closure) + 3e-14 * std::abs(out.value);
    return out;
}

// -------------------------------------------------------------------- Xi ---

CoeffResult xi_plain(CoeffKind kind, double a, double mu,
                     const SeriesControl& sctl) {
    const double m = -mu;
    const double m2 = m * m;

    CoeffResult out;
    out.rep = Representation::XiSeries;

    double sum = 0.0;
    double abs_acc = 0.0;
    double f = 1.0; // m^{2k} / k!
    double last = 0.0;
    int k = 0;
    int small_run = 0;
    for (;; ++k) {
        if (k > sctl.max_terms)
            throw ConvergenceError("coeff: XiSeries exceeded max_terms");
        const double base = limit_coeff(kind, a + k);
        if (!std::isfinite(base))
            throw ConvergenceError("coeff: XiSeries term overflowed before convergence; "
                                   "use BesselSeries at this mu");
        double t = base * f;
        const bool negate = is_fermi(kind) ? (k % 2 == 1) : (k % 2 == 0);
        if (negate) t = -t;
        sum += t;
        abs_acc += std::abs(t);
        last = std::abs(t);
        const double tol =
            0.5 * std::max(sctl.abs_tol, sctl.rel_tol * std::abs(sum));
        if (k + 1.0 > m2 && last < tol) {
            if (++small_run >= 2) break;
        } else {
            small_run = 0;
        }
        f *= m2 / (k + 1.0);
    }

    double closure = 0.0;
    switch (kind) {
    case CoeffKind::GammaFermiEntropy:
        break;
    case CoeffKind::OmegaFermiEnergy:
        closure = -gamma_fn(a - 0.5) * std::pow(m, 1.0 - 2.0 * a) / (4.0 * SQRT_PI);
        break;
    case CoeffKind::ChiBoseEntropy:
        closure = 0.5 * gamma_fn(a) * std::pow(m, -2.0 * a);
        break;
    case CoeffKind::KappaBoseEnergy:
        closure = gamma_fn(a - 0.5) * std::pow(m, 1.0 - 2.0 * a) / (4.0 * SQRT_PI);
        break;
    }
    out.value = sum + closure;
    out.terms_used = k + 1;
    out.est_error = 2.0 * last + (abs_acc + std::abs(closure)) * 1e-14
                    + 3e-14 * std::abs(out.value);
    return out;
}

double xi_radius(CoeffKind kind) { return is_fermi(kind) ? M_PI : 2.0 * M_PI; }

// ------------------------------------------------------------ Quadrature ---

CoeffResult quadrature_plain(CoeffKind kind, double a, double mu,
                             const SeriesControl& sctl,
                             const QuadratureControl& qctl) {
    if (mu == 0.0) {
        switch (kind) {
        case CoeffKind::GammaFermiEntropy:
            break; // weight decays exponentially; every order converges
        case CoeffKind::OmegaFermiEnergy:
            if (a >= 0.5 - 1e-12)
                throw std::domain_error(
                    "coeff: Quadrature for OmegaFermiEnergy at mu = 0 needs a < 1/2");
            break;
        case CoeffKind::ChiBoseEntropy:
            if (a >= -1e-12)
                throw std::domain_error(
                    "coeff: Quadrature for ChiBoseEntropy at mu = 0 needs a < 0");
            break;
        case CoeffKind::KappaBoseEnergy:
            throw std::domain_error(
                "coeff: the Bose energy weight diverges at mu = 0; "
                "no quadrature value exists");
        }
    }
    const Statistics stat = kind_stat(kind);
    const Quantity qty = kind_qty(kind);
    const auto integrand = [&](double t) {
        if (t <= 0.0) return 0.0;
        const double w = laplace_weight(stat, qty, mu, t, sctl);
        return w == 0.0 ? 0.0 : std::pow(t, a) * w;
    };
    const double split = qctl.domain_split;
    const QuadratureOutcome head = gk_adaptive(integrand, 0.0, split, qctl);
    // Tail in u = log t, which turns even the algebraically decaying mu = 0
    // weights into exponentially decaying integrands.
    const auto tail_integrand = [&](double u) {
        const double t = std::exp(u);
        if (!std::isfinite(t)) return 0.0;
        const double g = integrand(t);
        return g == 0.0 ? 0.0 : g * t;
    };
    const QuadratureOutcome tail =
        gk_adaptive_upper(tail_integrand, std::log(split), qctl);

    CoeffResult out;
    out.value = head.value + tail.value;
    out.rep = Representation::Quadrature;
    out.terms_used = head.panels + tail.panels;
    out.est_error = head.est_error + tail.est_error + 1e-14 * std::abs(out.value);
    return out;
}

// ------------------------------------------------- singular-point limits ---

bool poisson_singular(CoeffKind kind, double a) {
    if (!is_energy(kind)) // Gamma(a) prefactor
        return near_integer(a) && std::round(a) <= 0.0;
    if (near_integer(a) && std::round(a) <= -1.0) return true; // Gamma(a+1)
    const double t = 0.5 - a; // Gamma(a-1/2) paired against the zeta pole
    return near_integer(t) && std::round(t) >= 0.0;
}

bool xi_singular(CoeffKind kind, double a) {
    switch (kind) {
    case CoeffKind::GammaFermiEntropy:
        return false; // entire in a
    case CoeffKind::ChiBoseEntropy:
        return near_integer(a) && std::round(a) <= 0.0;
    case CoeffKind::OmegaFermiEnergy:
    case CoeffKind::KappaBoseEnergy: {
        const double t = 0.5 - a;
        return near_integer(t) && std::round(t) >= 0.0;
    }
    }
    return false;
}

// Symmetric evaluation beside a paired singularity with one Richardson
// step: the odd terms cancel in the average, the h^2 term cancels between
// the two averages.
template <typename Plain>
CoeffResult richardson_pair(const Plain& plain, double a) {
    // h trades the O(h^4) extrapolation remainder against the series noise
    // of the near-pole evaluations, which their own tolerances put at
    // ~1e-10 |value| ~ 1e-10 P/h; 1e-3 keeps both comfortably under 1e-7 P
    const double h = 1e-3;
    const CoeffResult rp = plain(a + h);
    const CoeffResult rm = plain(a - h);
    const CoeffResult sp = plain(a + 0.5 * h);
    const CoeffResult sm = plain(a - 0.5 * h);
    const double avg_h = 0.5 * (rp.value + rm.value);
    const double avg_h2 = 0.5 * (sp.value + sm.value);

    CoeffResult out;
    out.value = (4.0 * avg_h2 - avg_h) / 3.0;
    out.est_error = std::abs(out.value - avg_h2)
                    + std::max({rp.est_error, rm.est_error, sp.est_error, sm.est_error})
                    + 1e-12 * std::abs(out.value);
    out.terms_used =
        rp.terms_used + rm.terms_used + sp.terms_used + sm.terms_used;
    return out;
}

} // namespace

const char* to_string(CoeffKind k) {
    switch (k) {
    case CoeffKind::GammaFermiEntropy: return "GammaFermiEntropy";
    case CoeffKind::OmegaFermiEnergy: return "OmegaFermiEnergy";
    case CoeffKind::ChiBoseEntropy: return "ChiBoseEntropy";
    case CoeffKind::KappaBoseEnergy: return "KappaBoseEnergy";
    }
    return "?";
}

const char* to_string(Representation r) {
    switch (r) {
    case Representation::BesselSeries: return "BesselSeries";
    case Representation::PoissonSeries: return "PoissonSeries";
    case Representation::XiSeries: return "XiSeries";
    case Representation::Quadrature: return "Quadrature";
    }
    return "?";
}

double limit_coeff(CoeffKind kind, double a) {
    if (!std::isfinite(a))
        throw std::domain_error("limit_coeff: a must be finite");
    switch (kind) {
    case CoeffKind::GammaFermiEntropy: {
        if (a == 0.0) return M_LN2; // analytic limit of (1-2^{-2a})/a * xi(2a) pi^{-a}
        const double f = -std::expm1(-2.0 * a * M_LN2) / a; // (1 - 2^{-2a})/a
        return f * std::pow(M_PI, -a) * riemann_xi(2.0 * a);
    }
    case CoeffKind::OmegaFermiEnergy: {
        if (std::abs(2.0 * a - 1.0) < 1e-12)
            throw std::domain_error("limit_coeff: OmegaFermiEnergy has a pole at a = 1/2");
        const double f = -std::expm1(-2.0 * a * M_LN2); // 1 - 2^{-2a}
        return 2.0 * f * riemann_xi(2.0 * a) / ((2.0 * a - 1.0) * std::pow(M_PI, a));
    }
    case CoeffKind::ChiBoseEntropy:
        if (std::abs(a) < 1e-12)
            throw std::domain_error("limit_coeff: ChiBoseEntropy has a pole at a = 0");
        return riemann_xi(2.0 * a) / (std::pow(4.0 * M_PI, a) * a);
    case CoeffKind::KappaBoseEnergy:
        if (std::abs(2.0 * a - 1.0) < 1e-12)
            throw std::domain_error("limit_coeff: KappaBoseEnergy has a pole at a = 1/2");
        return 2.0 * riemann_xi(2.0 * a) / (std::pow(4.0 * M_PI, a) * (2.0 * a - 1.0));
    }
    throw std::logic_error("limit_coeff: unknown kind");
}

Representation choose_representation(CoeffKind, double, double mu) {
    if (mu == 0.0) return Representation::Quadrature;
    if (std::abs(mu) >= 0.05) return Representation::BesselSeries;
    return Representation::XiSeries;
}

CoeffResult coeff(CoeffKind kind, double a, double mu, Representation rep,
                  const SeriesControl& sctl, const QuadratureControl& qctl) {
    validate(sctl);
    validate(qctl);
    if (!std::isfinite(a) || !std::isfinite(mu))
        throw std::domain_error("coeff: a and mu must be finite");
    if (mu > 0.0)
        throw std::domain_error("coeff: mu must be non-positive");

    if (rep == Representation::Quadrature)
        return quadrature_plain(kind, a, mu, sctl, qctl);

    if (mu == 0.0)
        throw std::domain_error(
            "coeff: series representations need mu < 0; use Quadrature or limit_coeff");

    if (rep == Representation::BesselSeries) {
        if (-mu >= 0.05) return bessel_plain(kind, a, mu, sctl, qctl);
        std::clog << "coeff: |mu| = " << -mu
                  << " is below the BesselSeries floor 0.05; "
                     "falling back to PoissonSeries\n";
        rep = Representation::PoissonSeries;
    }

    if (rep == Representation::PoissonSeries) {
        const auto plain = [&](double aa) { return poisson_plain(kind, aa, mu, sctl); };
        CoeffResult out = poisson_singular(kind, a) ? richardson_pair(plain, a)
                                                    : plain(a);
        out.rep = Representation::PoissonSeries;
        return out;
    }

    // XiSeries
    if (-mu >= xi_radius(kind))
        throw std::domain_error(
            "coeff: XiSeries needs |mu| inside the convergence disk "
            "(pi for the Fermi kinds, 2 pi for the Bose kinds)");
    const auto plain = [&](double aa) { return xi_plain(kind, aa, mu, sctl); };
    CoeffResult out = xi_singular(kind, a) ? richardson_pair(plain, a) : plain(a);
    out.rep = Representation::XiSeries;
    return out;
}

std::vector<double> bessel_series_terms(CoeffKind kind, double a, double mu,
                                        int count,
                                        const QuadratureControl& qctl) {
    if (!(mu < 0.0))
        throw std::domain_error("bessel_series_terms: mu must be negative");
    if (count < 1)
        throw std::domain_error("bessel_series_terms: count must be >= 1");
    const double m = -mu;
    const double pref = bessel_prefactor(kind, a, m);
    std::vector<double> terms;
    terms.reserve(count);
    for (int n = 1; n <= count; ++n)
        terms.push_back(pref * bessel_term(kind, a, m, n, qctl));
    return terms;
}

double moment_closed(MomentKind kind, double nu, double mu,
                     const SeriesControl& sctl) {
    validate(sctl);
    if (!(nu > -1.0))
        throw std::domain_error("moment_closed: nu must exceed -1");
    if (!(mu < 0.0))
        throw std::domain_error("moment_closed: mu must be negative");

    const double m = -mu;
    const bool alternating = kind == MomentKind::FermiEntropy;
    const double order = 0.5 * nu + 2.0;
    const double pref = std::exp2(0.5 * nu) / SQRT_PI * gamma_fn(0.5 * (nu + 1.0))
                        * std::pow(m, order);
    const QuadratureControl kctl{}; // defaults for the K evaluations

    double sum = 0.0;
    double prev_bound = std::numeric_limits<double>::infinity();
    for (int n = 1;; ++n) {
        if (n > sctl.max_terms)
            throw ConvergenceError("moment_closed: series exceeded max_terms");
        double t = std::pow(double(n), -0.5 * nu) * bessel_k(order, n * m, kctl);
        if (alternating && n % 2 == 0) t = -t;
        sum += t;
        const double z = (n + 1.0) * m;
        const double bound = std::pow(n + 1.0, -0.5 * nu)
                             * std::sqrt(M_PI / (2.0 * z))
                             * std::exp(-z + order * order / (2.0 * z));
        const double tol =
            0.25 * std::max(sctl.abs_tol / std::abs(pref), sctl.rel_tol * std::abs(sum));
        if (z >= order * order + 1.0 && bound < prev_bound && bound < tol) break;
        prev_bound = bound;
    }
    return pref * sum;
}

double mellin_coeff_oracle(CoeffKind kind, double a, double mu,
                           const QuadratureControl& qctl) {
    validate(qctl);
    if (!(a < 0.0))
        throw std::domain_error("mellin_coeff_oracle: a must be strictly negative");
    if (!(mu < 0.0))
        throw std::domain_error("mellin_coeff_oracle: mu must be negative");
    const Statistics stat = kind_stat(kind);
    const Quantity qty = kind_qty(kind);
    const auto f = [&](double x) {
        if (x <= 0.0) return 0.0;
        const double k = kernel_value(stat, qty, Variant::SqrtShift, mu, x);
        return k == 0.0 ? 0.0 : k * std::pow(x, -2.0 * a - 1.0);
    };
    const QuadratureOutcome head = gk_adaptive(f, 0.0, 1.0, qctl);
    const QuadratureOutcome tail = gk_adaptive_upper(f, 1.0, qctl);
    return 2.0 / gamma_fn(-a) * (head.value + tail.value);
}

} // namespace specact
