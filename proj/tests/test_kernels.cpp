#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specact/kernels.hpp"

#include <cmath>

using namespace specact;

namespace {
doctest::Approx rel(double v, double eps = 1e-13) {
    return doctest::Approx(v).epsilon(eps);
}

double eps_sqrt(double x, double mu) { return std::sqrt(x * x + mu * mu); }
} // namespace

TEST_CASE("kernel reference values at x=0.5, mu=-1.5") {
    CHECK(kernel_value(Statistics::Fermi, Quantity::Entropy, Variant::SqrtShift, -1.5, 0.5)
          == rel(0.456890483115090679594458));
    CHECK(kernel_value(Statistics::Bose, Quantity::Entropy, Variant::SqrtShift, -1.5, 0.5)
          == rel(0.6399149339012017348303565));
    CHECK(kernel_value(Statistics::Fermi, Quantity::Energy, Variant::SqrtShift, -1.5, 0.5)
          == rel(0.269796448495318094921334));
    CHECK(kernel_value(Statistics::Bose, Quantity::Energy, Variant::SqrtShift, -1.5, 0.5)
          == rel(0.4095696861565489095909307));
}

TEST_CASE("shifted-argument kernels evaluate the scalar profile at |x|-mu") {
    const double mu = -1.5, x = 0.5;
    const double y = std::fabs(x) - mu; // 2.0
    CHECK(kernel_value(Statistics::Fermi, Quantity::Entropy, Variant::LinearShift, mu, x)
          == rel(y / (std::exp(y) + 1.0) + std::log1p(std::exp(-y))));
    CHECK(kernel_value(Statistics::Fermi, Quantity::Energy, Variant::LinearShift, mu, x)
          == rel(y / (1.0 + std::exp(y))));
    CHECK(kernel_value(Statistics::Bose, Quantity::Entropy, Variant::LinearShift, mu, x)
          == rel(y / std::expm1(y) - std::log1p(-std::exp(-y))));
    CHECK(kernel_value(Statistics::Bose, Quantity::Energy, Variant::LinearShift, mu, x)
          == rel(y / std::expm1(y)));
    // evenness in x for both variants
    for (auto var : {Variant::SqrtShift, Variant::LinearShift})
        for (auto stat : {Statistics::Fermi, Statistics::Bose})
            for (auto qty : {Quantity::Entropy, Quantity::Energy})
                CHECK(kernel_value(stat, qty, var, -0.7, 1.3)
                      == rel(kernel_value(stat, qty, var, -0.7, -1.3)));
}

TEST_CASE("entropy kernels decompose exactly into energy part plus log term") {
    for (double mu : {-0.25, -1.0, -2.0})
        for (double x : {0.0, 0.5, 2.0, 5.0}) {
            const double e = eps_sqrt(x, mu);
            const double h = kernel_value(Statistics::Fermi, Quantity::Entropy,
                                          Variant::SqrtShift, mu, x);
            const double u = kernel_value(Statistics::Fermi, Quantity::Energy,
                                          Variant::SqrtShift, mu, x);
            CHECK(h == rel(u + std::log1p(std::exp(-e)), 1e-14));

            const double k = kernel_value(Statistics::Bose, Quantity::Entropy,
                                          Variant::SqrtShift, mu, x);
            const double p = kernel_value(Statistics::Bose, Quantity::Energy,
                                          Variant::SqrtShift, mu, x);
            CHECK(k == rel(p - std::log1p(-std::exp(-e)), 1e-14));
        }
}

TEST_CASE("bose entropy profile has derivative -x/(4 sinh^2(x/2))") {
    for (double x : {0.5, 1.0, 3.0}) {
        const double h = 1e-5;
        auto k0 = [](double v) {
            return v / std::expm1(v) - std::log1p(-std::exp(-v));
        };
        const double fd = (k0(x + h) - k0(x - h)) / (2.0 * h);
        const double sh = std::sinh(0.5 * x);
        CHECK(fd == rel(-x / (4.0 * sh * sh), 1e-8));
    }
}

TEST_CASE("kernel domain rules") {
    CHECK_THROWS_AS(kernel_value(Statistics::Fermi, Quantity::Entropy,
                                 Variant::SqrtShift, 0.5, 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(kernel_value(Statistics::Bose, Quantity::Entropy,
                                 Variant::SqrtShift, 0.0, 0.0),
                    std::domain_error);
    CHECK_THROWS_AS(kernel_value(Statistics::Bose, Quantity::Energy,
                                 Variant::LinearShift, 0.0, 0.0),
                    std::domain_error);
    // Bose at mu = 0 is fine away from x = 0
    CHECK(kernel_value(Statistics::Bose, Quantity::Entropy, Variant::SqrtShift, 0.0, 1.0)
          == rel(1.0 / std::expm1(1.0) - std::log1p(-std::exp(-1.0))));
    // Fermi tolerates a vanishing energy
    CHECK(kernel_value(Statistics::Fermi, Quantity::Entropy, Variant::SqrtShift, 0.0, 0.0)
          == rel(std::log(2.0)));
}

TEST_CASE("laplace weight reference values at mu = 0") {
    CHECK(laplace_weight(Statistics::Fermi, Quantity::Entropy, 0.0, 0.05)
          == rel(1.700071240278573365814923, 1e-12));
    CHECK(laplace_weight(Statistics::Fermi, Quantity::Entropy, 0.0, 0.5)
          == rel(0.1275783205299176853420397, 1e-12));
    CHECK(laplace_weight(Statistics::Fermi, Quantity::Entropy, 0.0, 3.0)
          == rel(2.685276741463734163349101e-12, 1e-12));
    CHECK(laplace_weight(Statistics::Bose, Quantity::Entropy, 0.0, 0.05)
          == rel(1.70007540072956348932465, 1e-12));
    CHECK(laplace_weight(Statistics::Bose, Quantity::Entropy, 0.0, 0.5)
          == rel(0.9999997941183029350458816, 1e-12));
    CHECK(laplace_weight(Statistics::Bose, Quantity::Entropy, 0.0, 3.0)
          == rel(1.0 / 6.0, 1e-14));
    CHECK(laplace_weight(Statistics::Fermi, Quantity::Energy, 0.0, 0.3)
          == rel(0.1635762367585614178662948, 1e-12));
    CHECK(laplace_weight(Statistics::Fermi, Quantity::Energy, 0.0, 2.0)
          == rel(-0.04986773224211082296684383, 1e-12));
    CHECK(laplace_weight(Statistics::Bose, Quantity::Energy, -1e-300, 0.3)
          == rel(0.8578198165569157584897866, 1e-12));
    CHECK(laplace_weight(Statistics::Bose, Quantity::Energy, -1e-300, 2.0)
          == rel(0.04986778505017908474249326, 1e-12));
}

TEST_CASE("laplace weight with chemical potential carries exp(-t mu^2)") {
    CHECK(laplace_weight(Statistics::Fermi, Quantity::Entropy, -1.5, 0.5)
          == rel(0.04141861654147218054308268, 1e-12));
    CHECK(laplace_weight(Statistics::Bose, Quantity::Energy, -0.8, 0.7)
          == rel(0.1538700462302142044348367, 1e-12));
}

TEST_CASE("weight representations agree across their crossovers") {
    SeriesControl tight{1e-13, 1e-15, 100000};
    // entropy weights: compare values straddling the split point
    for (auto stat : {Statistics::Fermi, Statistics::Bose}) {
        const double split = stat == Statistics::Fermi ? 0.15915494309189533577
                                                       : 0.07957747154594766788;
        const double lo = laplace_weight(stat, Quantity::Entropy, 0.0,
                                         split * (1.0 - 1e-9), tight);
        const double hi = laplace_weight(stat, Quantity::Entropy, 0.0,
                                         split * (1.0 + 1e-9), tight);
        CHECK(lo == rel(hi, 1e-7)); // weights are smooth; the reps must agree
    }
    // energy weights: series and transformed tail overlap near t = 8
    for (auto stat : {Statistics::Fermi, Statistics::Bose}) {
        const double mu = stat == Statistics::Bose ? -1e-300 : 0.0;
        const double lo = laplace_weight(stat, Quantity::Energy, mu, 8.0 * (1.0 - 1e-9), tight);
        const double hi = laplace_weight(stat, Quantity::Energy, mu, 8.0 * (1.0 + 1e-9), tight);
        CHECK(lo == rel(hi, 1e-9));
    }
}

TEST_CASE("laplace weight domain rules") {
    CHECK_THROWS_AS(laplace_weight(Statistics::Bose, Quantity::Energy, 0.0, 0.5),
                    std::domain_error);
    CHECK_THROWS_AS(laplace_weight(Statistics::Fermi, Quantity::Entropy, 0.1, 0.5),
                    std::domain_error);
    CHECK_THROWS_AS(laplace_weight(Statistics::Fermi, Quantity::Entropy, 0.0, 0.0),
                    std::domain_error);
    CHECK_THROWS_AS(laplace_weight(Statistics::Fermi, Quantity::Entropy, 0.0, -1.0),
                    std::domain_error);
    // Fermi energy weight is fine at mu = 0
    CHECK(laplace_weight(Statistics::Fermi, Quantity::Energy, 0.0, 0.7)
          == laplace_weight(Statistics::Fermi, Quantity::Energy, -0.0, 0.7));
}

TEST_CASE("transform inversion reconstructs the kernels") {
    // spot checks; the full grid runs in the acceptance suite
    for (auto stat : {Statistics::Fermi, Statistics::Bose})
        for (auto qty : {Quantity::Entropy, Quantity::Energy})
            for (auto var : {Variant::SqrtShift, Variant::LinearShift})
                for (double x : {0.0, 1.0}) {
                    const double mu = -1.0;
                    const double direct = kernel_value(stat, qty, var, mu, x);
                    const double rebuilt = laplace_reconstruct(stat, qty, var, mu, x);
                    CHECK(std::fabs(direct - rebuilt) < 1e-8 * (1.0 + std::fabs(direct)));
                }
    // Bose entropy weight remains integrable at mu = 0 for positive energy
    const double direct = kernel_value(Statistics::Bose, Quantity::Entropy,
                                       Variant::SqrtShift, 0.0, 1.0);
    const double rebuilt = laplace_reconstruct(Statistics::Bose, Quantity::Entropy,
                                               Variant::SqrtShift, 0.0, 1.0);
    CHECK(std::fabs(direct - rebuilt) < 1e-8 * (1.0 + std::fabs(direct)));
}

TEST_CASE("lattice sum identity behind the occupation derivative") {
    // sum over n in Z of ((2 pi n)^2 - x) / (((2 pi n)^2 + x)^2)
    // equals -1 / (4 sinh^2(sqrt(x)/2)); each |n| > N term is positive and
    // below (2 pi n)^-2, so the two-sided tail is under 1/(2 pi^2 N).
    for (double x : {0.5, 1.0, 4.0}) {
        const double target = -1.0 / (4.0 * std::pow(std::sinh(0.5 * std::sqrt(x)), 2));
        double partial = -1.0 / x;  // n = 0 term
        double prev_gap = std::numeric_limits<double>::infinity();
        for (int n = 1; n <= 4096; ++n) {
            const double a = std::pow(2.0 * M_PI * n, 2);
            partial += 2.0 * (a - x) / std::pow(a + x, 2);
            if ((n & (n - 1)) == 0 && n >= 16) {
                const double tail = 1.0 / (2.0 * M_PI * M_PI * n);
                const double gap = std::fabs(partial - target);
                CHECK(gap < tail);
                CHECK(gap <= prev_gap * 1.0001);
                prev_gap = gap;
            }
        }
    }
}
