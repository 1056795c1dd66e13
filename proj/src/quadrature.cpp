#include "specact/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace specact {
namespace {

// 15-point Kronrod nodes on [-1,1] (non-negative half) with Kronrod weights,
// and the weights of the embedded 7-point Gauss rule.
constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double k15;
    double err; // |K15 - G7|
};

PanelResult gk15_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * xgk[i]);
        fv[14 - i] = f(c + h * xgk[i]);
    }
    fv[7] = f(c);
    double k15 = wgk[7] * fv[7];
    double g7 = wg[3] * fv[7];
    for (int i = 0; i < 7; ++i)
        k15 += wgk[i] * (fv[i] + fv[14 - i]);
    for (int i = 0; i < 3; ++i) {
        const int j = 2 * i + 1; // Gauss nodes sit at the odd Kronrod indices
        g7 += wg[i] * (fv[j] + fv[14 - j]);
    }
    k15 *= h;
    g7 *= h;
    return {k15, std::fabs(k15 - g7)};
}

struct AdaptiveState {
    const std::function<double(double)>& f;
    int panels_left;
    double value = 0.0;
    double err = 0.0;
    int panels = 0;
};

void refine(AdaptiveState& st, double a, double b, double tol, const PanelResult& pr) {
    if (pr.err <= tol || !(b - a > 1e-15 * (std::fabs(a) + std::fabs(b)))) {
        st.value += pr.k15;
        st.err += pr.err;
        st.panels += 1;
        return;
    }
    if (st.panels_left <= 0)
        throw ConvergenceError("gk_adaptive: subdivision budget exhausted");
    st.panels_left -= 1;
    const double c = 0.5 * (a + b);
    const PanelResult left = gk15_panel(st.f, a, c);
    const PanelResult right = gk15_panel(st.f, c, b);
    refine(st, a, c, 0.5 * tol, left);
    refine(st, c, b, 0.5 * tol, right);
}

QuadratureOutcome run_adaptive(const std::function<double(double)>& f,
                               double a, double b,
                               const QuadratureControl& ctl) {
    AdaptiveState st{f, ctl.max_subdivisions};
    const PanelResult whole = gk15_panel(f, a, b);
    const double tol = std::max(ctl.abs_tol, ctl.rel_tol * std::fabs(whole.k15));
    refine(st, a, b, tol, whole);
    return {st.value, st.err, st.panels};
}

} // namespace

QuadratureOutcome gk_adaptive(const std::function<double(double)>& f,
                              double a, double b,
                              const QuadratureControl& ctl) {
    validate(ctl);
    if (!(b > a))
        throw std::domain_error("gk_adaptive: requires b > a");
    return run_adaptive(f, a, b, ctl);
}

QuadratureOutcome gk_adaptive_upper(const std::function<double(double)>& f,
                                    double a,
                                    const QuadratureControl& ctl) {
    validate(ctl);
    auto mapped = [&f, a](double w) {
        const double t = a + (1.0 - w) / w;
        if (!std::isfinite(t))
            return 0.0; // integrands here decay exponentially
        const double v = f(t);
        return v == 0.0 ? 0.0 : v / (w * w);
    };
    return run_adaptive(mapped, 0.0, 1.0, ctl);
}

} // namespace specact
