#include "specact/specfun.hpp"
#include "specact/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace specact {
namespace {

constexpr double PI = 3.14159265358979323846264338327950288;

// Lanczos approximation, g = 607/128, 15 coefficients. Good to ~1e-15
// relative on the positive axis away from the poles.
constexpr double lanczos_g = 607.0 / 128.0;
constexpr std::array<double, 15> lanczos_c = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    3.3994649984811888699e-5,
    4.6523628927048575665e-5,
    -9.8374475304879564677e-5,
    1.5808870322491248884e-4,
    -2.1026444172410488319e-4,
    2.1743961811521264320e-4,
    -1.6431810653676389022e-4,
    8.4418223983852743293e-5,
    -2.6190838401581408670e-5,
    3.6899182659531622704e-6};

double lanczos_series(double x) {
    double s = lanczos_c[0];
    for (std::size_t k = 1; k < lanczos_c.size(); ++k)
        s += lanczos_c[k] / (x + static_cast<double>(k) - 1.0);
    return s;
}

bool near_nonpositive_integer(double x, double tol = 1e-13) {
    if (x > 0.5)
        return false;
    return std::fabs(x - std::round(x)) < tol;
}

// eta-to-zeta acceleration (Borwein's algorithm 2) with n = 48 Chebyshev
// terms. For real s >= 1/2 the truncation error is ~3/8^48, decades below
// double precision, so the budget check is about honesty, not tuning.
constexpr int borwein_n = 48;

const std::array<double, borwein_n + 1>& borwein_d() {
    static const std::array<double, borwein_n + 1> d = [] {
        std::array<double, borwein_n + 1> out{};
        std::array<double, borwein_n + 1> t{};
        t[0] = 1.0 / borwein_n;
        for (int i = 0; i + 1 <= borwein_n; ++i)
            t[i + 1] = t[i] * 4.0 * (borwein_n + i) * (borwein_n - i)
                       / ((2.0 * i + 1.0) * (2.0 * i + 2.0));
        double run = 0.0; // d_k = n * sum_{i<=k} t_i
        for (int k = 0; k <= borwein_n; ++k) {
            run += t[k];
            out[k] = borwein_n * run;
        }
        return out;
    }();
    return d;
}

double zeta_core(double s, const SeriesControl& ctl) {
    // valid for s >= 0.5, s != 1
    if (ctl.max_terms < borwein_n)
        throw ConvergenceError("riemann_zeta: max_terms below the fixed acceleration order");
    const auto& d = borwein_d();
    double sum = 0.0;
    for (int k = 0; k < borwein_n; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        sum += sign * (d[k] - d[borwein_n]) * std::pow(k + 1.0, -s);
    }
    const double denom = -std::expm1((1.0 - s) * std::log(2.0)); // 1 - 2^{1-s}
    return -sum / (d[borwein_n] * denom);
}

// Stieltjes constants gamma_0..gamma_5 for the Laurent window of
// (s-1) zeta(s) about s = 1.
constexpr std::array<double, 6> stieltjes = {
    0.57721566490153286061,
    -0.072815845483676724861,
    -0.0096903631928723184845,
    0.0020538344203033458662,
    0.0023253700654673000575,
    0.00079332381730106270175};

double zeta_times_smin1(double s) {
    // (s-1)*zeta(s), analytic at s=1; use only for |s-1| small.
    const double e = s - 1.0;
    double sum = 1.0;
    double epow = 1.0; // e^{n+1} built incrementally
    double fact = 1.0;
    for (std::size_t n = 0; n < stieltjes.size(); ++n) {
        epow *= e;
        if (n > 0)
            fact *= static_cast<double>(n);
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        sum += sign * stieltjes[n] * epow / fact;
    }
    return sum;
}

} // namespace

double sin_pi(double x) {
    // reduce on x so the period is exact in floating point
    double r = std::fmod(x, 2.0);
    if (r < -1.0)
        r += 2.0;
    else if (r > 1.0)
        r -= 2.0;
    // r in [-1, 1]; fold to [-1/2, 1/2] where sin(pi r) is well conditioned
    if (r > 0.5)
        r = 1.0 - r;
    else if (r < -0.5)
        r = -1.0 - r;
    return std::sin(PI * r);
}

double log_gamma_pos(double x) {
    if (!(x > 0.0))
        throw std::domain_error("log_gamma_pos: requires x > 0");
    if (x < 0.5) {
        // shift up once; keeps the Lanczos base point away from 0
        return log_gamma_pos(x + 1.0) - std::log(x);
    }
    const double base = x + lanczos_g - 0.5;
    return 0.5 * std::log(2.0 * PI) + (x - 0.5) * std::log(base) - base
           + std::log(lanczos_series(x));
}

double gamma_fn(double x) {
    if (std::isnan(x))
        throw std::domain_error("gamma_fn: NaN argument");
    if (near_nonpositive_integer(x))
        throw std::domain_error("gamma_fn: pole at non-positive integer argument");
    if (x >= 0.5) {
        if (x > 171.62)
            return std::numeric_limits<double>::infinity();
        if (x > 130.0)
            return std::exp(log_gamma_pos(x)); // direct product would overflow in pow
        const double base = x + lanczos_g - 0.5;
        return std::sqrt(2.0 * PI) * std::pow(base, x - 0.5) * std::exp(-base)
               * lanczos_series(x);
    }
    // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return PI / (sin_pi(x) * gamma_fn(1.0 - x));
}

double riemann_zeta(double s, const SeriesControl& ctl) {
    validate(ctl);
    if (std::isnan(s))
        throw std::domain_error("riemann_zeta: NaN argument");
    if (std::fabs(s - 1.0) < 1e-6)
        throw std::domain_error("riemann_zeta: pole at s = 1");
    if (s == 0.0)
        return -0.5;
    if (s >= 0.5)
        return zeta_core(s, ctl);
    // trivial zeros
    if (s < 0.0 && std::fabs(s - 2.0 * std::round(s / 2.0)) < 1e-13)
        return 0.0;
    // functional equation: zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
    const double z1 = zeta_core(1.0 - s, ctl);
    const double sp = sin_pi(0.5 * s);
    const double lg = log_gamma_pos(1.0 - s);
    const double logmag = s * std::log(2.0) + (s - 1.0) * std::log(PI) + lg
                          + std::log(std::fabs(sp) * std::fabs(z1));
    double sign = 1.0;
    if (sp < 0.0)
        sign = -sign;
    if (z1 < 0.0)
        sign = -sign;
    return sign * std::exp(logmag);
}

double riemann_xi(double s) {
    if (std::isnan(s))
        throw std::domain_error("riemann_xi: NaN argument");
    if (s < 0.5)
        return riemann_xi(1.0 - s); // xi(s) = xi(1-s), made exact by construction
    SeriesControl tight{1e-14, 1e-15, 200000};
    if (std::fabs(s - 1.0) < 0.05) {
        // xi = (s/2) pi^{-s/2} Gamma(s/2) * [(s-1) zeta(s)]; the bracket is
        // analytic through the pole.
        return 0.5 * s * std::pow(PI, -0.5 * s) * gamma_fn(0.5 * s)
               * zeta_times_smin1(s);
    }
    return 0.5 * s * (s - 1.0) * std::pow(PI, -0.5 * s) * gamma_fn(0.5 * s)
           * riemann_zeta(s, tight);
}

namespace {

// Truncation point for the cosh-integral K representation: smallest T with
// z(cosh T - 1) - nuT >= -log(tau), found by bisection on (0, 100].
double bessel_cutoff(double nu, double z, double tau) {
    const double target = -std::log(tau);
    auto excess = [&](double T) { return z * (std::cosh(T) - 1.0) - nu * T - target; };
    double lo = 0.0, hi = 100.0;
    if (excess(hi) < 0.0)
        throw ConvergenceError("bessel_k: truncation point beyond supported range");
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) >= 0.0 ? hi : lo) = mid;
    }
    return hi;
}

} // namespace

double bessel_k(double nu, double z, const QuadratureControl& ctl) {
    validate(ctl);
    if (!(z > 0.0))
        throw std::domain_error("bessel_k: requires z > 0");
    const double anu = std::fabs(nu); // K_{-nu} = K_nu
    const double tau = std::max(std::min(ctl.rel_tol, ctl.abs_tol) / 100.0, 1e-300);
    const double T = bessel_cutoff(anu, z, tau);
    auto g = [anu, z](double u) {
        return std::exp(-z * (std::cosh(u) - 1.0)) * std::cosh(anu * u);
    };
    const QuadratureOutcome q = gk_adaptive(g, 0.0, T, ctl);
    return std::exp(-z) * q.value;
}

double bessel_k_deriv(double nu, double z, const QuadratureControl& ctl) {
    validate(ctl);
    if (!(z > 0.0))
        throw std::domain_error("bessel_k_deriv: requires z > 0");
    const double anu = std::fabs(nu);
    const double tau = std::max(std::min(ctl.rel_tol, ctl.abs_tol) / 100.0, 1e-300);
    const double T = bessel_cutoff(anu + 1.0, z, tau);
    auto g = [anu, z](double u) {
        return std::cosh(u) * std::exp(-z * (std::cosh(u) - 1.0)) * std::cosh(anu * u);
    };
    const QuadratureOutcome q = gk_adaptive(g, 0.0, T, ctl);
    return -std::exp(-z) * q.value;
}

double theta_direct_series(double t, const SeriesControl& ctl) {
    validate(ctl);
    if (!(t > 0.0))
        throw std::domain_error("theta: requires t > 0");
    double sum = 1.0;
    for (int n = 1; n <= ctl.max_terms; ++n) {
        const double term = 2.0 * std::exp(-PI * n * n * t);
        sum += term;
        if (term < 0.5 * std::max(ctl.abs_tol, ctl.rel_tol * sum))
            return sum;
    }
    throw ConvergenceError("theta: series did not converge within max_terms");
}

double theta_prime_direct_series(double t, const SeriesControl& ctl) {
    validate(ctl);
    if (!(t > 0.0))
        throw std::domain_error("theta_prime: requires t > 0");
    double sum = 0.0;
    for (int n = 1; n <= ctl.max_terms; ++n) {
        const double term = -2.0 * PI * n * n * std::exp(-PI * n * n * t);
        sum += term;
        if (std::fabs(term) < 0.5 * std::max(ctl.abs_tol, ctl.rel_tol * std::fabs(sum)))
            return sum;
    }
    throw ConvergenceError("theta_prime: series did not converge within max_terms");
}

double theta(double t, const SeriesControl& ctl) {
    validate(ctl);
    if (!(t > 0.0))
        throw std::domain_error("theta: requires t > 0");
    if (t >= 1.0)
        return theta_direct_series(t, ctl);
    return theta_direct_series(1.0 / t, ctl) / std::sqrt(t);
}

double theta_prime(double t, const SeriesControl& ctl) {
    validate(ctl);
    if (!(t > 0.0))
        throw std::domain_error("theta_prime: requires t > 0");
    if (t >= 1.0)
        return theta_prime_direct_series(t, ctl);
    // differentiate theta(t) = t^{-1/2} theta(1/t)
    const double inv = 1.0 / t;
    return -0.5 * std::pow(t, -1.5) * theta_direct_series(inv, ctl)
           - std::pow(t, -2.5) * theta_prime_direct_series(inv, ctl);
}

namespace {

// B_{2j} / (2j)! for the Euler-Maclaurin tail, j = 1..8.
constexpr std::array<double, 8> bernoulli_over_fact = {
    8.3333333333333333333e-02,  // 1/12
    -1.3888888888888888889e-03, // -1/720
    3.3068783068783068783e-05,  // 1/30240
    -8.2671957671957671958e-07, // -1/1209600
    2.0876756987868098979e-08,  // 1/47900160
    -5.2841901386874931848e-10, // -691/1307674368000
    1.3382536530684678833e-11,  // 1/74724249600
    -3.3896802963225828668e-13};// -3617/10670622842880000

} // namespace

double hurwitz_zeta(double s, double q, const SeriesControl& ctl) {
    validate(ctl);
    if (!(q > 0.0))
        throw std::domain_error("hurwitz_zeta: requires q > 0");
    if (std::fabs(s - 1.0) < 1e-12)
        throw std::domain_error("hurwitz_zeta: pole at s = 1");
    const int shift = q >= 24.0 ? 0 : static_cast<int>(std::ceil(24.0 - q));
    if (shift + 1 > ctl.max_terms)
        throw ConvergenceError("hurwitz_zeta: max_terms below the required shift");
    double head = 0.0;
    for (int k = 0; k < shift; ++k)
        head += std::pow(q + k, -s);
    const double Q = q + shift;
    const double Qms = std::pow(Q, -s);
    double tail = Q * Qms / (s - 1.0) + 0.5 * Qms;
    double poch = s;          // (s)_{2j-1} accumulated
    double Qpow = Qms / Q;    // Q^{-s-2j+1} accumulated
    for (std::size_t j = 1; j <= bernoulli_over_fact.size(); ++j) {
        tail += bernoulli_over_fact[j - 1] * poch * Qpow;
        poch *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
        Qpow /= Q * Q;
    }
    return head + tail;
}

} // namespace specact
