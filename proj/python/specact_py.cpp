// Python bindings for the main operations: special functions, kernel
// weights, coefficient evaluation, exact thermodynamics, the small-beta
// expansions, and the verification suite. Thin wrappers only; the C++
// exceptions map to the usual ValueError/RuntimeError.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "specact/asymptotics.hpp"
#include "specact/coeffs.hpp"
#include "specact/gibbs.hpp"
#include "specact/kernels.hpp"
#include "specact/specfun.hpp"
#include "specact/spectra.hpp"
#include "specact/verify.hpp"

namespace py = pybind11;
using namespace specact;

PYBIND11_MODULE(specact, m) {
    m.doc() = "spectral thermodynamics toolkit";

    py::enum_<Statistics>(m, "Statistics")
        .value("Fermi", Statistics::Fermi)
        .value("Bose", Statistics::Bose);
    py::enum_<Quantity>(m, "Quantity")
        .value("Entropy", Quantity::Entropy)
        .value("Energy", Quantity::Energy);
    py::enum_<Variant>(m, "Variant")
        .value("SqrtShift", Variant::SqrtShift)
        .value("LinearShift", Variant::LinearShift);
    py::enum_<CoeffKind>(m, "CoeffKind")
        .value("GammaFermiEntropy", CoeffKind::GammaFermiEntropy)
        .value("OmegaFermiEnergy", CoeffKind::OmegaFermiEnergy)
        .value("ChiBoseEntropy", CoeffKind::ChiBoseEntropy)
        .value("KappaBoseEnergy", CoeffKind::KappaBoseEnergy);
    py::enum_<Representation>(m, "Representation")
        .value("BesselSeries", Representation::BesselSeries)
        .value("PoissonSeries", Representation::PoissonSeries)
        .value("XiSeries", Representation::XiSeries)
        .value("Quadrature", Representation::Quadrature);

    // special functions
    m.def("riemann_zeta", [](double s) { return riemann_zeta(s); }, py::arg("s"));
    m.def("riemann_xi", [](double s) { return riemann_xi(s); }, py::arg("s"));
    m.def("hurwitz_zeta", [](double s, double q) { return hurwitz_zeta(s, q); },
          py::arg("s"), py::arg("q"));
    m.def("bessel_k", [](double nu, double z) { return bessel_k(nu, z); },
          py::arg("nu"), py::arg("z"));
    m.def("theta", [](double t) { return theta(t); }, py::arg("t"));
    m.def("gamma_fn", &gamma_fn, py::arg("x"));

    // kernels and their Laplace data
    m.def("kernel_value", &kernel_value, py::arg("stat"), py::arg("qty"),
          py::arg("variant"), py::arg("mu"), py::arg("x"));
    m.def("laplace_weight",
          [](Statistics stat, Quantity qty, double mu, double t) {
              return laplace_weight(stat, qty, mu, t);
          },
          py::arg("stat"), py::arg("qty"), py::arg("mu"), py::arg("t"));
    m.def("laplace_reconstruct",
          [](Statistics stat, Quantity qty, Variant var, double mu, double x) {
              return laplace_reconstruct(stat, qty, var, mu, x);
          },
          py::arg("stat"), py::arg("qty"), py::arg("variant"), py::arg("mu"),
          py::arg("x"));

    // coefficient functions
    py::class_<CoeffResult>(m, "CoeffResult")
        .def_readonly("value", &CoeffResult::value)
        .def_readonly("rep", &CoeffResult::rep)
        .def_readonly("est_error", &CoeffResult::est_error)
        .def_readonly("terms_used", &CoeffResult::terms_used)
        .def("__repr__", [](const CoeffResult& r) {
            return "CoeffResult(value=" + std::to_string(r.value) +
                   ", rep=" + to_string(r.rep) + ")";
        });
    m.def("coeff",
          [](CoeffKind kind, double a, double mu, Representation rep) {
              return coeff(kind, a, mu, rep);
          },
          py::arg("kind"), py::arg("a"), py::arg("mu"), py::arg("rep"));
    m.def("coeff",
          [](CoeffKind kind, double a, double mu) {
              return coeff(kind, a, mu, choose_representation(kind, a, mu));
          },
          py::arg("kind"), py::arg("a"), py::arg("mu"));
    m.def("choose_representation", &choose_representation, py::arg("kind"),
          py::arg("a"), py::arg("mu"));
    m.def("limit_coeff", &limit_coeff, py::arg("kind"), py::arg("a"));

    // spectra and heat data
    py::class_<Mode>(m, "Mode")
        .def_readonly("lam", &Mode::lambda)
        .def_readonly("multiplicity", &Mode::multiplicity);
    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("modes", &Spectrum::modes)
        .def_readonly("label", &Spectrum::label)
        .def("__len__", [](const Spectrum& s) { return s.modes.size(); });
    py::class_<HeatExpansion>(m, "HeatExpansion");
    m.def("circle_spectrum", &circle_spectrum, py::arg("n_max"));
    m.def("torus_spectrum", &torus_spectrum, py::arg("d"), py::arg("n_max"));
    m.def("spectrum_from_file", &spectrum_from_file, py::arg("path"));
    m.def("direct_sum", &direct_sum, py::arg("s1"), py::arg("s2"));
    m.def("circle_heat_expansion", &circle_heat_expansion);
    m.def("torus_heat_expansion", &torus_heat_expansion, py::arg("d"));
    m.def("heat_expansion_from_file", &heat_expansion_from_file, py::arg("path"));

    // exact thermodynamics
    py::class_<ThermoParams>(m, "ThermoParams")
        .def(py::init([](double beta, double mu, Statistics stat, Variant variant) {
                 return ThermoParams{beta, mu, stat, variant};
             }),
             py::arg("beta"), py::arg("mu"), py::arg("stat"), py::arg("variant"))
        .def_readwrite("beta", &ThermoParams::beta)
        .def_readwrite("mu", &ThermoParams::mu)
        .def_readwrite("stat", &ThermoParams::stat)
        .def_readwrite("variant", &ThermoParams::variant);
    py::class_<ThermoReport>(m, "ThermoReport")
        .def_readonly("log_Z", &ThermoReport::log_Z)
        .def_readonly("entropy", &ThermoReport::entropy)
        .def_readonly("energy", &ThermoReport::energy)
        .def_readonly("modes_used", &ThermoReport::modes_used)
        .def_readonly("tail_bound", &ThermoReport::tail_bound)
        .def_readonly("reliable", &ThermoReport::reliable);
    m.def("thermo",
          [](const Spectrum& s, const ThermoParams& p) { return thermo(s, p); },
          py::arg("spectrum"), py::arg("params"));

    // small-beta expansions
    py::class_<PsiTerm>(m, "PsiTerm")
        .def_readonly("l", &PsiTerm::l)
        .def_readonly("k", &PsiTerm::k)
        .def_readonly("value", &PsiTerm::value);
    py::class_<ExpansionResult>(m, "ExpansionResult")
        .def_readonly("per_term", &ExpansionResult::per_term)
        .def_readonly("partial_sums", &ExpansionResult::partial_sums)
        .def_readonly("total", &ExpansionResult::total);
    py::class_<CompareRow>(m, "CompareRow")
        .def_readonly("beta", &CompareRow::beta)
        .def_readonly("exact", &CompareRow::exact)
        .def_readonly("expansion", &CompareRow::expansion)
        .def_readonly("abs_err", &CompareRow::abs_err)
        .def_readonly("rel_err", &CompareRow::rel_err);
    py::class_<CompareTable>(m, "CompareTable")
        .def_readonly("rows", &CompareTable::rows)
        .def_readonly("rel_slope", &CompareTable::rel_slope)
        .def_readonly("abs_slope", &CompareTable::abs_slope)
        .def_readonly("points_used", &CompareTable::points_used);
    const auto make_request = [](const HeatExpansion& h, const ThermoParams& p,
                                 Quantity qty, int L, int K) {
        ExpansionRequest req;
        req.h = h;
        req.p = p;
        req.qty = qty;
        req.L = L;
        req.K = K;
        return req;
    };
    m.def("expand",
          [make_request](const HeatExpansion& h, const ThermoParams& p, Quantity qty,
                         int L, int K) {
              const ExpansionRequest req = make_request(h, p, qty, L, K);
              return p.variant == Variant::SqrtShift ? expand_unprimed(req)
                                                     : expand_primed(req);
          },
          py::arg("heat"), py::arg("params"), py::arg("quantity"), py::arg("L"),
          py::arg("K") = 0);
    m.def("compare_exact",
          [make_request](const HeatExpansion& h, const ThermoParams& p, Quantity qty,
                         int L, int K, const Spectrum& s,
                         const std::vector<double>& betas) {
              return compare_exact(make_request(h, p, qty, L, K), s, betas);
          },
          py::arg("heat"), py::arg("params"), py::arg("quantity"), py::arg("L"),
          py::arg("K"), py::arg("spectrum"), py::arg("betas"));

    // verification
    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("pass_", &CheckResult::pass)
        .def_readonly("worst", &CheckResult::worst)
        .def_readonly("detail", &CheckResult::detail)
        .def("__repr__", [](const CheckResult& r) { return to_line(r); });
    m.def("run_verification", &run_verification, py::arg("n_max") = 2000);
    m.def("to_line", &to_line, py::arg("check"));
}
