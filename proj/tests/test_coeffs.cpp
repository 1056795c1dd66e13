#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specact/coeffs.hpp"
#include "specact/kernels.hpp"
#include "specact/quadrature.hpp"
#include "specact/specfun.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

using namespace specact;

namespace {

doctest::Approx rel(double v, double eps = 1e-13) {
    return doctest::Approx(v).epsilon(eps);
}

double value(CoeffKind k, double a, double mu, Representation r) {
    return coeff(k, a, mu, r).value;
}

constexpr auto GAMMA = CoeffKind::GammaFermiEntropy;
constexpr auto OMEGA = CoeffKind::OmegaFermiEnergy;
constexpr auto CHI = CoeffKind::ChiBoseEntropy;
constexpr auto KAPPA = CoeffKind::KappaBoseEnergy;

} // namespace

TEST_CASE("limit functions against fixed reference values") {
    CHECK(limit_coeff(GAMMA, -1.5) == rel(17.09779384576334272605711));
    CHECK(limit_coeff(GAMMA, -0.5) == rel(1.856109332277235948428273));
    CHECK(limit_coeff(GAMMA, 0.25) == rel(0.4374654465633328078367975));
    CHECK(limit_coeff(GAMMA, 0.75) == rel(0.1858220426113526957232316));
    CHECK(limit_coeff(GAMMA, 1.5) == rel(0.06012545807606323955591907));
    CHECK(limit_coeff(GAMMA, 2.5) == rel(0.0174544851218470952355852));

    CHECK(limit_coeff(OMEGA, -1.5) == rel(12.82334538432250704454283));
    CHECK(limit_coeff(OMEGA, 0.25) == rel(-0.4374654465633328078367975));
    CHECK(limit_coeff(OMEGA, 1.5) == rel(0.09018818711409485933387861));

    CHECK(limit_coeff(CHI, -1.5) == rel(-19.54033582372953454406527));
    CHECK(limit_coeff(CHI, 0.25) == rel(1.056135014162800548733736));
    CHECK(limit_coeff(CHI, 1.5) == rel(0.008589351153723319936559868));

    CHECK(limit_coeff(KAPPA, -1.5) == rel(-14.65525186779715090804895));
    CHECK(limit_coeff(KAPPA, 0.25) == rel(-1.056135014162800548733736));
    CHECK(limit_coeff(KAPPA, 1.5) == rel(0.0128840267305849799048398));
}

TEST_CASE("limit functions: closed rational points and the removable origin") {
    CHECK(limit_coeff(GAMMA, 0.0) == rel(std::log(2.0), 1e-15));
    CHECK(limit_coeff(GAMMA, 0.5) == rel(0.5 / std::sqrt(M_PI), 1e-12));
    CHECK(limit_coeff(GAMMA, 1.0) == rel(0.125, 1e-12));
    CHECK(limit_coeff(GAMMA, 2.0) == rel(0.03125, 1e-12));
    CHECK(limit_coeff(OMEGA, 1.0) == rel(0.25, 1e-12));
    CHECK(limit_coeff(CHI, 1.0) == rel(1.0 / 24.0, 1e-12));
    CHECK(limit_coeff(KAPPA, 1.0) == rel(1.0 / 12.0, 1e-12));

    // continuity across the removable point of gamma
    CHECK(limit_coeff(GAMMA, 1e-9) == rel(std::log(2.0), 1e-8));
    CHECK(limit_coeff(GAMMA, -1e-9) == rel(std::log(2.0), 1e-8));
}

TEST_CASE("limit functions: energy and entropy members are tied by 2a/(2a-1)") {
    for (double a : {-2.3, -1.1, -0.4, 0.2, 0.8, 1.6, 3.1}) {
        const double factor = 2.0 * a / (2.0 * a - 1.0);
        CHECK(limit_coeff(OMEGA, a) == rel(limit_coeff(GAMMA, a) * factor, 1e-12));
        CHECK(limit_coeff(KAPPA, a) == rel(limit_coeff(CHI, a) * factor, 1e-12));
    }
}

TEST_CASE("limit functions: genuine poles raise domain errors") {
    CHECK_THROWS_AS(limit_coeff(OMEGA, 0.5), std::domain_error);
    CHECK_THROWS_AS(limit_coeff(CHI, 0.0), std::domain_error);
    CHECK_THROWS_AS(limit_coeff(KAPPA, 0.5), std::domain_error);
    CHECK_NOTHROW(limit_coeff(GAMMA, 0.5));
}

TEST_CASE("Bessel representation against fixed reference values") {
    CHECK(value(GAMMA, 0.3, -1.0, Representation::BesselSeries)
          == rel(0.329968483029782423784834, 1e-9));
    CHECK(value(GAMMA, -0.7, -1.0, Representation::BesselSeries)
          == rel(2.455383968068655962284256, 1e-9));
    CHECK(value(GAMMA, 1.7, -0.4, Representation::BesselSeries)
          == rel(0.0436786022479899964178057, 1e-9));
    CHECK(value(GAMMA, 2.0, -0.3, Representation::BesselSeries)
          == rel(0.03033015329631353679615783, 1e-9));

    CHECK(value(OMEGA, 0.3, -1.0, Representation::BesselSeries)
          == rel(0.1038989088169353817164611, 1e-9));
    CHECK(value(OMEGA, -0.7, -1.0, Representation::BesselSeries)
          == rel(1.620698626550755179722793, 1e-9));
    CHECK(value(OMEGA, 1.7, -0.4, Representation::BesselSeries)
          == rel(-1.105446211863167294303772, 1e-9));

    CHECK(value(CHI, 0.3, -1.0, Representation::BesselSeries)
          == rel(0.7354191181033806825970879, 1e-9));
    CHECK(value(CHI, -0.7, -1.0, Representation::BesselSeries)
          == rel(3.169799820889010755282808, 1e-9));
    CHECK(value(CHI, 1.7, -0.4, Representation::BesselSeries)
          == rel(10.23660654474755043539283, 1e-9));

    CHECK(value(KAPPA, 0.3, -1.0, Representation::BesselSeries)
          == rel(0.3674802739730766013499699, 1e-9));
    CHECK(value(KAPPA, -0.7, -1.0, Representation::BesselSeries)
          == rel(2.155665598960509674954236, 1e-9));
    CHECK(value(KAPPA, 1.7, -0.4, Representation::BesselSeries)
          == rel(1.16100060176148831573662, 1e-9));
    CHECK(value(KAPPA, 0.8, -2.5, Representation::BesselSeries)
          == rel(0.04453225111854484045353631, 1e-9));
}

TEST_CASE("order-one and order-zero closed forms hold at finite mu") {
    for (double mu : {-0.5, -1.0, -2.0}) {
        const double m = -mu;
        CHECK(value(GAMMA, 1.0, mu, Representation::BesselSeries)
              == rel(1.0 / (8.0 * std::pow(std::cosh(0.5 * mu), 2)), 1e-9));
        CHECK(value(CHI, 1.0, mu, Representation::BesselSeries)
              == rel(1.0 / (8.0 * std::pow(std::sinh(0.5 * m), 2)), 1e-9));
        // order zero reproduces the kernels at the bottom of the spectrum
        CHECK(value(CHI, 0.0, mu, Representation::BesselSeries)
              == rel(kernel_value(Statistics::Bose, Quantity::Entropy,
                                  Variant::SqrtShift, mu, 0.0), 1e-10));
        CHECK(value(KAPPA, 0.0, mu, Representation::BesselSeries)
              == rel(kernel_value(Statistics::Bose, Quantity::Energy,
                                  Variant::SqrtShift, mu, 0.0), 1e-10));
    }
}

TEST_CASE("representations agree at regular orders") {
    for (CoeffKind k : {GAMMA, OMEGA, CHI, KAPPA}) {
        for (double a : {-1.3, 0.3, 1.7}) {
            const double mu = -1.0;
            const CoeffResult b = coeff(k, a, mu, Representation::BesselSeries);
            const CoeffResult p = coeff(k, a, mu, Representation::PoissonSeries);
            const CoeffResult x = coeff(k, a, mu, Representation::XiSeries);
            const CoeffResult q = coeff(k, a, mu, Representation::Quadrature);
            CAPTURE(to_string(k));
            CAPTURE(a);
            CHECK(std::abs(b.value - p.value) <= b.est_error + p.est_error);
            CHECK(p.value == rel(b.value, 1e-9));
            CHECK(x.value == rel(b.value, 1e-9));
            CHECK(std::abs(q.value - b.value) <= 1e-8 * (1.0 + std::abs(b.value)));
        }
    }
}

TEST_CASE("paired-limit evaluation at the documented singular orders") {
    const double mu = -1.0;
    // Gamma-prefactor poles of the Poisson form (entropy kinds)
    for (double a : {0.0, -1.0, -2.0, -3.0}) {
        for (CoeffKind k : {GAMMA, CHI}) {
            const CoeffResult b = coeff(k, a, mu, Representation::BesselSeries);
            const CoeffResult p = coeff(k, a, mu, Representation::PoissonSeries);
            CAPTURE(to_string(k));
            CAPTURE(a);
            CHECK(std::abs(p.value - b.value) <= 1e-6 * (1.0 + std::abs(b.value)));
        }
    }
    // half-integer pairings and negative-integer poles of the energy kinds
    for (double a : {0.5, -0.5, -1.5, -1.0, -2.0}) {
        for (CoeffKind k : {OMEGA, KAPPA}) {
            const CoeffResult b = coeff(k, a, mu, Representation::BesselSeries);
            const CoeffResult p = coeff(k, a, mu, Representation::PoissonSeries);
            CAPTURE(to_string(k));
            CAPTURE(a);
            CHECK(std::abs(p.value - b.value) <= 1e-6 * (1.0 + std::abs(b.value)));
        }
    }
    // the same pairings inside the power-series representation
    for (double a : {0.5, -0.5, -1.5}) {
        for (CoeffKind k : {OMEGA, KAPPA}) {
            const CoeffResult b = coeff(k, a, mu, Representation::BesselSeries);
            const CoeffResult x = coeff(k, a, mu, Representation::XiSeries);
            CHECK(std::abs(x.value - b.value) <= 1e-6 * (1.0 + std::abs(b.value)));
        }
    }
    for (double a : {0.0, -1.0, -2.0}) {
        const CoeffResult b = coeff(CHI, a, mu, Representation::BesselSeries);
        const CoeffResult x = coeff(CHI, a, mu, Representation::XiSeries);
        CHECK(std::abs(x.value - b.value) <= 1e-6 * (1.0 + std::abs(b.value)));
    }
}

TEST_CASE("lattice form at a = 1/2: leading zeta pole is removable") {
    // the j = 0 tail coefficient vanishes exactly at a = 1/2 and the
    // surviving limit term must be kept for the value to come out right
    for (double mu : {-0.5, -1.0, -2.0}) {
        const CoeffResult p = coeff(GAMMA, 0.5, mu, Representation::PoissonSeries);
        const CoeffResult b = coeff(GAMMA, 0.5, mu, Representation::BesselSeries);
        CHECK(p.value == rel(b.value, 1e-9));
    }
}

TEST_CASE("strongly negative orders survive the lattice continuation") {
    // Conditioning check: the analytic tail must not lose the value to
    // cancellation where the raw lattice terms grow like w^{-2a}.
    for (double a : {-2.5, -3.0}) {
        for (double mu : {-0.5, -4.0}) {
            const CoeffResult b = coeff(CHI, a, mu, Representation::BesselSeries);
            const CoeffResult p = coeff(CHI, a, mu, Representation::PoissonSeries);
            CAPTURE(a);
            CAPTURE(mu);
            CHECK(std::abs(p.value - b.value) <= 1e-6 * (1.0 + std::abs(b.value)));
            CHECK(std::abs(p.value - b.value) <= b.est_error + p.est_error);
        }
    }
}

TEST_CASE("power-series representation respects its convergence disk") {
    CHECK_THROWS_AS(coeff(GAMMA, 0.3, -4.0, Representation::XiSeries),
                    std::domain_error);
    CHECK_THROWS_AS(coeff(OMEGA, 0.3, -3.2, Representation::XiSeries),
                    std::domain_error);
    // the Bose disk is twice as wide
    CHECK_NOTHROW(coeff(CHI, 0.3, -4.0, Representation::XiSeries));
    CHECK_THROWS_AS(coeff(CHI, 0.3, -6.5, Representation::XiSeries),
                    std::domain_error);

    for (double mu : {-1.0, -3.0, -5.0}) {
        const CoeffResult b = coeff(CHI, 0.7, mu, Representation::BesselSeries);
        const CoeffResult x = coeff(CHI, 0.7, mu, Representation::XiSeries);
        CHECK(x.value == rel(b.value, 1e-8));
    }
}

TEST_CASE("small-mu Bessel requests fall back to the lattice form") {
    const CoeffResult r = coeff(GAMMA, 0.7, -0.01, Representation::BesselSeries);
    CHECK(r.rep == Representation::PoissonSeries);
    const CoeffResult x = coeff(GAMMA, 0.7, -0.01, Representation::XiSeries);
    CHECK(r.value == rel(x.value, 1e-9));
}

TEST_CASE("automatic representation choice") {
    CHECK(choose_representation(GAMMA, 0.3, -1.0) == Representation::BesselSeries);
    CHECK(choose_representation(GAMMA, 0.3, -0.05) == Representation::BesselSeries);
    CHECK(choose_representation(GAMMA, 0.3, -0.01) == Representation::XiSeries);
    CHECK(choose_representation(GAMMA, 0.3, 0.0) == Representation::Quadrature);
}

TEST_CASE("coefficients converge to their limits as mu vanishes") {
    for (double a : {-1.0, 0.5, 1.0, 2.0}) {
        const double base = limit_coeff(GAMMA, a);
        double prev = std::numeric_limits<double>::infinity();
        for (double mu : {-1e-1, -1e-2, -1e-3}) {
            const Representation r = choose_representation(GAMMA, a, mu);
            const double gap = std::abs(coeff(GAMMA, a, mu, r).value - base);
            CAPTURE(a);
            CAPTURE(mu);
            CHECK(gap < prev);
            prev = gap;
        }
        CHECK(prev < 1e-4);
    }
}

TEST_CASE("quadrature representation at mu = 0: convergent kinds match limits") {
    CHECK(coeff(GAMMA, 0.5, 0.0, Representation::Quadrature).value
          == rel(0.5 / std::sqrt(M_PI), 1e-9));
    CHECK(coeff(GAMMA, -1.0, 0.0, Representation::Quadrature).value
          == rel(limit_coeff(GAMMA, -1.0), 1e-9));
    CHECK(coeff(OMEGA, -1.0, 0.0, Representation::Quadrature).value
          == rel(limit_coeff(OMEGA, -1.0), 1e-8));
    // algebraic-tail case: still below the a < 1/2 divergence threshold
    CHECK(coeff(OMEGA, 0.25, 0.0, Representation::Quadrature).value
          == rel(limit_coeff(OMEGA, 0.25), 1e-7));
    // the mu -> 0- limit of the Bose entropy coefficient flips sign
    CHECK(coeff(CHI, -0.7, 0.0, Representation::Quadrature).value
          == rel(-limit_coeff(CHI, -0.7), 1e-8));
}

TEST_CASE("quadrature representation at mu = 0: divergent kinds are rejected") {
    CHECK_THROWS_AS(coeff(KAPPA, -1.0, 0.0, Representation::Quadrature),
                    std::domain_error);
    CHECK_THROWS_AS(coeff(OMEGA, 0.5, 0.0, Representation::Quadrature),
                    std::domain_error);
    CHECK_THROWS_AS(coeff(OMEGA, 1.5, 0.0, Representation::Quadrature),
                    std::domain_error);
    CHECK_THROWS_AS(coeff(CHI, 0.0, 0.0, Representation::Quadrature),
                    std::domain_error);
    CHECK_THROWS_AS(coeff(CHI, 0.3, 0.0, Representation::Quadrature),
                    std::domain_error);
}

TEST_CASE("domain rules: positive mu and mu = 0 series requests") {
    CHECK_THROWS_AS(coeff(GAMMA, 0.3, 0.5, Representation::BesselSeries),
                    std::domain_error);
    CHECK_THROWS_AS(coeff(GAMMA, 0.3, 0.0, Representation::BesselSeries),
                    std::domain_error);
    CHECK_THROWS_AS(coeff(CHI, 0.3, 0.0, Representation::PoissonSeries),
                    std::domain_error);
    CHECK_THROWS_AS(coeff(CHI, 0.3, 0.0, Representation::XiSeries),
                    std::domain_error);
}

TEST_CASE("the two entropy kinds differ only by the alternating sign") {
    const auto tg = bessel_series_terms(GAMMA, 0.6, -1.2, 10);
    const auto tc = bessel_series_terms(CHI, 0.6, -1.2, 10);
    const auto tw = bessel_series_terms(OMEGA, -0.4, -0.9, 10);
    const auto tk = bessel_series_terms(KAPPA, -0.4, -0.9, 10);
    REQUIRE(tg.size() == 10);
    for (int i = 0; i < 10; ++i) {
        const double sign = (i % 2 == 0) ? 1.0 : -1.0; // term n = i + 1
        CHECK(tg[i] == rel(sign * tc[i], 1e-14));
        CHECK(tw[i] == rel(sign * tk[i], 1e-14));
    }
}

TEST_CASE("moments against fixed reference values") {
    CHECK(moment_closed(MomentKind::FermiEntropy, 0.7, -1.0)
          == rel(1.897675518506648104015232, 1e-9));
    CHECK(moment_closed(MomentKind::BoseEntropy, 0.7, -1.0)
          == rel(2.346254501818888596367986, 1e-9));
    CHECK(moment_closed(MomentKind::FermiEntropy, 2.0, -2.0)
          == rel(5.065678897665514946700719, 1e-9));
    CHECK(moment_closed(MomentKind::BoseEntropy, 0.0, -0.5)
          == rel(2.56673338371858338684793, 1e-9));

    CHECK_THROWS_AS(moment_closed(MomentKind::FermiEntropy, -1.0, -1.0),
                    std::domain_error);
    CHECK_THROWS_AS(moment_closed(MomentKind::FermiEntropy, 1.0, 0.0),
                    std::domain_error);
}

namespace {

// integral_0^inf f(x) x^nu dx with an exponentially decaying f
double weighted_integral(const std::function<double(double)>& f, double nu) {
    QuadratureControl qctl;
    const auto g = [&](double x) {
        if (x <= 0.0) return 0.0;
        const double v = f(x);
        return v == 0.0 ? 0.0 : v * std::pow(x, nu);
    };
    return gk_adaptive(g, 0.0, 1.0, qctl).value + gk_adaptive_upper(g, 1.0, qctl).value;
}

} // namespace

TEST_CASE("moments agree with direct quadrature of the kernels") {
    for (double nu : {0.0, 1.0, 2.0, 3.0}) {
        for (double mu : {-0.5, -1.0, -2.0}) {
            const auto hf = [&](double x) {
                return kernel_value(Statistics::Fermi, Quantity::Entropy,
                                    Variant::SqrtShift, mu, x);
            };
            const auto hb = [&](double x) {
                return kernel_value(Statistics::Bose, Quantity::Entropy,
                                    Variant::SqrtShift, mu, x);
            };
            CAPTURE(nu);
            CAPTURE(mu);
            const double qf = weighted_integral(hf, nu);
            const double qb = weighted_integral(hb, nu);
            CHECK(std::abs(moment_closed(MomentKind::FermiEntropy, nu, mu) - qf)
                  <= 1e-8 * (1.0 + std::abs(qf)));
            CHECK(std::abs(moment_closed(MomentKind::BoseEntropy, nu, mu) - qb)
                  <= 1e-8 * (1.0 + std::abs(qb)));
        }
    }
}

TEST_CASE("the two pieces of the Fermi entropy moment split off correctly") {
    // The entropy kernel splits into a log part and an occupation part whose
    // closed sums are separately known; both are pinned at mu = -1.
    const double mu = -1.0;
    const double m = 1.0;
    const auto log_part = [&](double x) {
        return std::log1p(std::exp(-std::sqrt(x * x + mu * mu)));
    };
    const auto occ_part = [&](double x) {
        const double e = std::sqrt(x * x + mu * mu);
        return e / (std::exp(e) + 1.0);
    };

    const double log0 = weighted_integral(log_part, 0.0);
    const double log2 = weighted_integral(log_part, 2.0);
    const double occ0 = weighted_integral(occ_part, 0.0);
    const double occ2 = weighted_integral(occ_part, 2.0);
    CHECK(log0 == rel(0.5428738332391529, 1e-8));
    CHECK(log2 == rel(1.567320254793488, 1e-8));
    CHECK(occ0 == rel(0.8763473742418962, 1e-8));
    CHECK(occ2 == rel(5.244834597619347, 1e-8));

    // closed Bessel-sum forms of the same two pieces
    const auto closed_log = [&](double nu) {
        double s = 0.0;
        for (int n = 1; n <= 40; ++n) {
            const double t = std::pow(double(n), -0.5 * nu - 1.0)
                             * bessel_k(0.5 * nu + 1.0, n * m);
            s += (n % 2 == 1) ? t : -t;
        }
        return std::pow(m, 0.5 * nu + 1.0) * std::exp2(0.5 * nu) / std::sqrt(M_PI)
               * gamma_fn(0.5 * (nu + 1.0)) * s;
    };
    const auto closed_occ = [&](double nu) {
        double s = 0.0;
        for (int n = 1; n <= 40; ++n) {
            const double t = m * std::pow(double(n), -0.5 * nu)
                                 * bessel_k(0.5 * nu, n * m)
                             + (1.0 + nu) * std::pow(double(n), -0.5 * nu - 1.0)
                                   * bessel_k(0.5 * nu + 1.0, n * m);
            s += (n % 2 == 1) ? t : -t;
        }
        return std::pow(2.0 * m, 0.5 * nu) / std::sqrt(M_PI)
               * gamma_fn(0.5 * (nu + 1.0)) * s;
    };
    CHECK(closed_log(0.0) == rel(log0, 1e-8));
    CHECK(closed_log(2.0) == rel(log2, 1e-8));
    CHECK(closed_occ(0.0) == rel(occ0, 1e-8));
    CHECK(closed_occ(2.0) == rel(occ2, 1e-8));

    // and their sum is the full moment
    CHECK(moment_closed(MomentKind::FermiEntropy, 0.0, mu) == rel(log0 + occ0, 1e-9));
    CHECK(moment_closed(MomentKind::FermiEntropy, 2.0, mu) == rel(log2 + occ2, 1e-9));
}

TEST_CASE("Mellin-transform oracle recovers the coefficients") {
    CHECK(std::abs(mellin_coeff_oracle(KAPPA, -0.5, -1.0)
                   - value(KAPPA, -0.5, -1.0, Representation::BesselSeries))
          <= 1e-7);
    for (CoeffKind k : {GAMMA, OMEGA, CHI}) {
        const double b = value(k, -0.7, -1.0, Representation::BesselSeries);
        CAPTURE(to_string(k));
        CHECK(std::abs(mellin_coeff_oracle(k, -0.7, -1.0) - b)
              <= 1e-7 * (1.0 + std::abs(b)));
    }
    CHECK_THROWS_AS(mellin_coeff_oracle(GAMMA, 0.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(mellin_coeff_oracle(GAMMA, 0.5, -1.0), std::domain_error);
    CHECK_THROWS_AS(mellin_coeff_oracle(GAMMA, -0.5, 0.0), std::domain_error);
}

TEST_CASE("estimated errors are honest at the reference points") {
    const CoeffResult r = coeff(GAMMA, 0.3, -1.0, Representation::BesselSeries);
    CHECK(r.est_error > 0.0);
    CHECK(std::abs(r.value - 0.329968483029782423784834)
          <= 5.0 * std::max(r.est_error, 1e-15));
    CHECK(r.terms_used > 0);
}
