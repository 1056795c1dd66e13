#include "specact/spectra.hpp"
#include "specact/specfun.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace specact {
namespace {

constexpr double SQRT_PI = 1.77245385090551602729816748334114518;

void normalize(Spectrum& s) {
    for (const Mode& m : s.modes) {
        if (m.lambda == 0.0)
            throw std::domain_error("spectrum: zero eigenvalue (operator kernel must be trivial)");
        if (!std::isfinite(m.lambda))
            throw std::domain_error("spectrum: non-finite eigenvalue");
        if (m.multiplicity < 1)
            throw std::domain_error("spectrum: multiplicity must be >= 1");
    }
    std::sort(s.modes.begin(), s.modes.end(),
              [](const Mode& a, const Mode& b) { return a.lambda < b.lambda; });
    std::vector<Mode> merged;
    merged.reserve(s.modes.size());
    for (const Mode& m : s.modes) {
        if (!merged.empty() && merged.back().lambda == m.lambda)
            merged.back().multiplicity += m.multiplicity;
        else
            merged.push_back(m);
    }
    s.modes = std::move(merged);
}

void validate_scale(const HeatExpansion& h) {
    if (h.scale.size() != h.groups.size() + 1)
        throw std::domain_error("heat expansion: scale must have one more entry than groups");
    for (std::size_t i = 0; i + 1 < h.scale.size(); ++i)
        if (!(h.scale[i] < h.scale[i + 1]))
            throw std::domain_error("heat expansion: scale thresholds must increase strictly");
    for (std::size_t l = 0; l < h.groups.size(); ++l)
        for (const HeatCoefficient& c : h.groups[l])
            if (!(h.scale[l] < -c.z && -c.z < h.scale[l + 1]))
                throw std::domain_error("heat expansion: exponent outside its strip");
}

int spinor_dim(int d) { return d >= 2 ? 2 : 1; }

} // namespace

MissingZetaDatum::MissingZetaDatum(double p)
    : std::runtime_error("heat expansion: no tabulated zeta value at point " + std::to_string(p)),
      point(p) {}

double HeatExpansion::zeta_value_at(double point) const {
    for (const ZetaValue& v : zeta_values)
        if (std::fabs(v.point - point) < 1e-9)
            return v.value;
    throw MissingZetaDatum(point);
}

double HeatExpansion::zeta_residue_at(double pole) const {
    for (const ZetaPole& p : zeta_residues)
        if (std::fabs(p.pole - pole) < 1e-9)
            return p.residue;
    return 0.0;
}

Spectrum circle_spectrum(int n_max) {
    if (n_max < 1)
        throw std::domain_error("circle_spectrum: n_max must be >= 1");
    Spectrum s;
    s.label = "circle(" + std::to_string(n_max) + ")";
    s.modes.reserve(2 * static_cast<std::size_t>(n_max));
    for (int n = n_max; n >= 1; --n)
        s.modes.push_back({static_cast<double>(-n), 1});
    for (int n = 1; n <= n_max; ++n)
        s.modes.push_back({static_cast<double>(n), 1});
    normalize(s);
    return s;
}

HeatExpansion circle_heat_expansion() {
    HeatExpansion h;
    h.groups = {{{0.5, SQRT_PI}}, {{0.0, -1.0}}};
    h.scale = {-0.75, -0.25, 0.25};
    h.zeta_residues = {{0.5, 1.0}};
    h.zeta_values = {{0.0, -1.0}, {-1.0, 0.0}, {-2.0, 0.0}, {-3.0, 0.0}};
    validate_scale(h);
    return h;
}

Spectrum torus_spectrum(int d, int n_max) {
    if (d < 1 || d > 3)
        throw std::domain_error("torus_spectrum: dimension must be 1, 2, or 3");
    if (n_max < 1)
        throw std::domain_error("torus_spectrum: n_max must be >= 1");
    // lattice-point counts per squared norm over the box |k_i| <= n_max
    std::map<std::int64_t, std::int64_t> counts;
    const int lo = -n_max, hi = n_max;
    for (int k1 = lo; k1 <= hi; ++k1) {
        if (d == 1) {
            if (k1 != 0)
                counts[static_cast<std::int64_t>(k1) * k1] += 1;
            continue;
        }
        for (int k2 = lo; k2 <= hi; ++k2) {
            if (d == 2) {
                if (k1 != 0 || k2 != 0)
                    counts[static_cast<std::int64_t>(k1) * k1
                           + static_cast<std::int64_t>(k2) * k2] += 1;
                continue;
            }
            for (int k3 = lo; k3 <= hi; ++k3) {
                if (k1 == 0 && k2 == 0 && k3 == 0)
                    continue;
                counts[static_cast<std::int64_t>(k1) * k1
                       + static_cast<std::int64_t>(k2) * k2
                       + static_cast<std::int64_t>(k3) * k3] += 1;
            }
        }
    }
    Spectrum s;
    s.label = "torus(" + std::to_string(d) + "," + std::to_string(n_max) + ")";
    // total degeneracy count * 2^{floor(d/2)} is split between the two signs
    const std::int64_t spin = spinor_dim(d);
    for (const auto& [sq, count] : counts) {
        const std::int64_t per_sign = count * spin / 2;
        const double lambda = std::sqrt(static_cast<double>(sq));
        s.modes.push_back({-lambda, per_sign});
        s.modes.push_back({lambda, per_sign});
    }
    normalize(s);
    return s;
}

HeatExpansion torus_heat_expansion(int d) {
    if (d < 1 || d > 3)
        throw std::domain_error("torus_heat_expansion: dimension must be 1, 2, or 3");
    const double spin = spinor_dim(d);
    const double hd = 0.5 * d;
    HeatExpansion h;
    h.groups = {{{hd, spin * std::pow(M_PI, hd)}}, {{0.0, -spin}}};
    h.scale = {-hd - 0.25, -0.25 * d, 0.25};
    h.zeta_residues = {{hd, spin * std::pow(M_PI, hd) / gamma_fn(hd)}};
    h.zeta_values = {{0.0, -spin}, {-1.0, 0.0}, {-2.0, 0.0}, {-3.0, 0.0}};
    validate_scale(h);
    return h;
}

Spectrum spectrum_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("spectrum_from_file: cannot open " + path);
    Spectrum s;
    s.label = path;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        // trim
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos)
            continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("spectrum_from_file: line " + std::to_string(lineno)
                                     + ": expected \"lambda,multiplicity\"");
        try {
            std::size_t used = 0;
            const double lambda = std::stod(line.substr(0, comma), &used);
            std::string rest = line.substr(comma + 1);
            std::size_t used2 = 0;
            const long long mult = std::stoll(rest, &used2);
            // reject trailing garbage in either field
            const std::string f1 = line.substr(0, comma);
            if (f1.find_first_not_of(" \t", used) != std::string::npos
                || rest.find_first_not_of(" \t", used2) != std::string::npos)
                throw std::invalid_argument("trailing characters");
            if (lambda == 0.0)
                throw std::domain_error("zero eigenvalue");
            if (mult < 1)
                throw std::domain_error("multiplicity must be >= 1");
            s.modes.push_back({lambda, mult});
        } catch (const std::domain_error& err) {
            throw std::runtime_error("spectrum_from_file: line " + std::to_string(lineno)
                                     + ": " + err.what());
        } catch (const std::exception&) {
            throw std::runtime_error("spectrum_from_file: line " + std::to_string(lineno)
                                     + ": cannot parse \"" + line + "\"");
        }
    }
    normalize(s);
    return s;
}

HeatExpansion heat_expansion_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("heat_expansion_from_file: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("heat_expansion_from_file: " + path + ": " + e.what());
    }
    HeatExpansion h;
    try {
        for (const auto& group : j.at("groups")) {
            std::vector<HeatCoefficient> g;
            for (const auto& item : group)
                g.push_back({item.at("z").get<double>(), item.at("a_z").get<double>()});
            if (g.empty())
                throw std::runtime_error("empty exponent group");
            h.groups.push_back(std::move(g));
        }
        if (j.contains("zeta_residues"))
            for (const auto& item : j.at("zeta_residues"))
                h.zeta_residues.push_back(
                    {item.at("pole").get<double>(), item.at("residue").get<double>()});
        if (j.contains("zeta_values"))
            for (const auto& item : j.at("zeta_values"))
                h.zeta_values.push_back(
                    {item.at("point").get<double>(), item.at("value").get<double>()});
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("heat_expansion_from_file: " + path + ": " + e.what());
    }
    if (h.groups.empty())
        throw std::runtime_error("heat_expansion_from_file: " + path + ": no exponent groups");
    // derive the strip thresholds from the exponents themselves
    std::vector<double> lo(h.groups.size()), hi(h.groups.size());
    for (std::size_t l = 0; l < h.groups.size(); ++l) {
        lo[l] = hi[l] = -h.groups[l][0].z;
        for (const HeatCoefficient& c : h.groups[l]) {
            lo[l] = std::min(lo[l], -c.z);
            hi[l] = std::max(hi[l], -c.z);
        }
    }
    for (std::size_t l = 0; l + 1 < h.groups.size(); ++l)
        if (!(hi[l] < lo[l + 1]))
            throw std::runtime_error(
                "heat_expansion_from_file: groups are not ordered by decreasing exponent");
    h.scale.push_back(lo.front() - 0.25);
    for (std::size_t l = 0; l + 1 < h.groups.size(); ++l)
        h.scale.push_back(0.5 * (hi[l] + lo[l + 1]));
    h.scale.push_back(hi.back() + 0.25);
    validate_scale(h);
    return h;
}

Spectrum direct_sum(const Spectrum& s1, const Spectrum& s2) {
    Spectrum out;
    out.label = s1.label + " + " + s2.label;
    out.modes.reserve(s1.modes.size() + s2.modes.size());
    out.modes.insert(out.modes.end(), s1.modes.begin(), s1.modes.end());
    out.modes.insert(out.modes.end(), s2.modes.begin(), s2.modes.end());
    normalize(out);
    return out;
}

double heat_trace_k(const Spectrum& s, int k, double t) {
    if (!(t > 0.0))
        throw std::domain_error("heat_trace_k: requires t > 0");
    if (k < 0)
        throw std::domain_error("heat_trace_k: requires k >= 0");
    double sum = 0.0;
    for (const Mode& m : s.modes) {
        const double al = std::fabs(m.lambda);
        const double e = t * m.lambda * m.lambda;
        if (e > 750.0)
            continue;
        sum += static_cast<double>(m.multiplicity) * std::pow(al, k) * std::exp(-e);
    }
    return sum;
}

double heat_trace(const Spectrum& s, double t) { return heat_trace_k(s, 0, t); }

double rho_lk(const HeatExpansion& h, std::size_t l, int k, double t) {
    if (l >= h.groups.size())
        throw std::domain_error("rho_lk: group index out of range");
    if (k < 0)
        throw std::domain_error("rho_lk: requires k >= 0");
    if (!(t > 0.0))
        throw std::domain_error("rho_lk: requires t > 0");
    double sum = 0.0;
    for (const HeatCoefficient& c : h.groups[l]) {
        const double zk = c.z + 0.5 * k;
        const double power = std::pow(t, -zk);
        const double zk_round = std::round(zk);
        if (zk < 1e-9 && std::fabs(zk - zk_round) < 1e-9) {
            // Gamma pole: coefficient becomes (-1)^{zk} / (-zk)! * zeta(z)
            const long long n = llround(-zk_round);
            double fact = 1.0;
            for (long long i = 2; i <= n; ++i)
                fact *= static_cast<double>(i);
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            sum += sign / fact * h.zeta_value_at(c.z) * power;
        } else {
            const double res = h.zeta_residue_at(c.z);
            if (res != 0.0)
                sum += gamma_fn(zk) * res * power;
        }
    }
    return sum;
}

} // namespace specact
