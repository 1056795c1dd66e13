// specact: thermodynamic tables, coefficient grids, small-beta expansions,
// and the library's cross-validation suite, as CSV or JSON.
//
// Grids use start:stop:step (stop inclusive up to a half-step rounding
// guard). Spectra come from circle:N, torus:d:N, or file:PATH. Numbers are
// printed with %.17g so identical configurations give byte-identical
// output; SPECACT_THREADS caps the grid workers (the row order never
// depends on scheduling).

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "specact/asymptotics.hpp"
#include "specact/coeffs.hpp"
#include "specact/gibbs.hpp"
#include "specact/kernels.hpp"
#include "specact/spectra.hpp"
#include "specact/verify.hpp"

namespace {

using namespace specact;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ------------------------------------------------------------- parsing ---

double parse_num(const std::string& s, const std::string& flag) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(flag + ": cannot parse \"" + s + "\" as a number");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t from = 0;
    while (true) {
        const auto to = s.find(sep, from);
        out.push_back(s.substr(from, to - from));
        if (to == std::string::npos) return out;
        from = to + 1;
    }
}

std::vector<double> parse_grid(const std::string& s, const std::string& flag) {
    const auto parts = split(s, ':');
    if (parts.size() == 1) return {parse_num(parts[0], flag)};
    if (parts.size() != 3)
        throw ConfigError(flag + ": expected a number or start:stop:step, got \"" + s + "\"");
    const double start = parse_num(parts[0], flag);
    const double stop = parse_num(parts[1], flag);
    const double step = parse_num(parts[2], flag);
    if (!(step > 0.0)) throw ConfigError(flag + ": step must be positive");
    if (stop < start) throw ConfigError(flag + ": stop must not be below start");
    const long n = std::lround(std::floor((stop - start) / step + 0.5e-9 / step + 1e-9));
    std::vector<double> out;
    for (long i = 0; i <= n; ++i) out.push_back(start + double(i) * step);
    return out;
}

Statistics parse_stat(const std::string& s) {
    if (s == "fermi") return Statistics::Fermi;
    if (s == "bose") return Statistics::Bose;
    throw ConfigError("--stat: expected fermi or bose, got \"" + s + "\"");
}

Variant parse_variant(const std::string& s) {
    if (s == "sqrt") return Variant::SqrtShift;
    if (s == "linear") return Variant::LinearShift;
    throw ConfigError("--variant: expected sqrt or linear, got \"" + s + "\"");
}

Quantity parse_quantity(const std::string& s) {
    if (s == "entropy") return Quantity::Entropy;
    if (s == "energy") return Quantity::Energy;
    throw ConfigError("--quantity: expected entropy or energy, got \"" + s + "\"");
}

CoeffKind parse_kind(const std::string& s) {
    if (s == "gamma") return CoeffKind::GammaFermiEntropy;
    if (s == "omega") return CoeffKind::OmegaFermiEnergy;
    if (s == "chi") return CoeffKind::ChiBoseEntropy;
    if (s == "kappa") return CoeffKind::KappaBoseEnergy;
    throw ConfigError("--kind: expected gamma, omega, chi, or kappa, got \"" + s + "\"");
}

// empty result means "auto": resolve per grid point later
std::vector<Representation> parse_reps(const std::string& s) {
    std::vector<Representation> out;
    for (const std::string& part : split(s, ',')) {
        if (part == "auto") {
            if (split(s, ',').size() != 1)
                throw ConfigError("--rep: auto cannot be combined with named representations");
            return {};
        } else if (part == "bessel") {
            out.push_back(Representation::BesselSeries);
        } else if (part == "poisson") {
            out.push_back(Representation::PoissonSeries);
        } else if (part == "xi") {
            out.push_back(Representation::XiSeries);
        } else if (part == "quadrature") {
            out.push_back(Representation::Quadrature);
        } else {
            throw ConfigError("--rep: unknown representation \"" + part + "\"");
        }
    }
    return out;
}

int parse_int(const std::string& s, const std::string& flag) {
    const double v = parse_num(s, flag);
    if (v != std::floor(v) || std::fabs(v) > 1e9)
        throw ConfigError(flag + ": expected an integer, got \"" + s + "\"");
    return int(v);
}

Spectrum load_spectrum(const std::string& src) {
    const auto parts = split(src, ':');
    if (parts[0] == "circle") {
        if (parts.size() != 2)
            throw ConfigError("--spectrum: expected circle:N, got \"" + src + "\"");
        return circle_spectrum(parse_int(parts[1], "--spectrum"));
    }
    if (parts[0] == "torus") {
        if (parts.size() != 3)
            throw ConfigError("--spectrum: expected torus:d:N, got \"" + src + "\"");
        return torus_spectrum(parse_int(parts[1], "--spectrum"),
                              parse_int(parts[2], "--spectrum"));
    }
    if (parts[0] == "file") {
        if (parts.size() < 2)
            throw ConfigError("--spectrum: expected file:PATH, got \"" + src + "\"");
        return spectrum_from_file(src.substr(5));
    }
    throw ConfigError("--spectrum: unknown source \"" + src + "\"");
}

// heat data for the same source string; file: sources read --heat (compare)
// or the spectrum path itself (expand, where no mode list is needed)
HeatExpansion load_heat(const std::string& src, const std::string& heat_file) {
    const auto parts = split(src, ':');
    if (parts[0] == "circle") return circle_heat_expansion();
    if (parts[0] == "torus") {
        if (parts.size() < 2)
            throw ConfigError("--spectrum: expected torus:d or torus:d:N, got \"" + src + "\"");
        return torus_heat_expansion(parse_int(parts[1], "--spectrum"));
    }
    if (parts[0] == "file") {
        if (!heat_file.empty()) return heat_expansion_from_file(heat_file);
        if (parts.size() >= 2) return heat_expansion_from_file(src.substr(5));
        throw ConfigError("--spectrum: file source needs a path (or pass --heat)");
    }
    throw ConfigError("--spectrum: unknown source \"" + src + "\"");
}

// ------------------------------------------------------------ emission ---

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_num(double v) {
    if (!std::isfinite(v)) return "null";
    return fmt(v);
}

std::string json_str(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out += buf;
        } else {
            out += c;
        }
    }
    return out + "\"";
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// cell = serialized value; for JSON, quoted = emit as given (already valid)
struct Cell {
    std::string csv;
    std::string json;
};

Cell num_cell(double v) { return {fmt(v), json_num(v)}; }
Cell int_cell(long long v) { return {std::to_string(v), std::to_string(v)}; }
Cell str_cell(const std::string& s) { return {csv_cell(s), json_str(s)}; }
Cell bool_cell(bool b) { return {b ? "true" : "false", b ? "true" : "false"}; }

struct Table {
    std::vector<std::string> cols;
    std::vector<std::vector<Cell>> rows;

    std::string to_csv() const {
        std::string out;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i) out += ',';
            out += csv_cell(cols[i]);
        }
        out += '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out += ',';
                out += row[i].csv;
            }
            out += '\n';
        }
        return out;
    }

    // one object for a single row, else an array of objects
    std::string to_json() const {
        std::string out;
        const auto obj = [&](const std::vector<Cell>& row) {
            std::string o = "{";
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) o += ", ";
                o += json_str(cols[i]) + ": " + row[i].json;
            }
            return o + "}";
        };
        if (rows.size() == 1) return obj(rows[0]) + "\n";
        out = "[";
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r) out += ",";
            out += "\n  " + obj(rows[r]);
        }
        out += rows.empty() ? "]\n" : "\n]\n";
        return out;
    }
};

void write_out(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("--output: cannot open \"" + path + "\" for writing");
    f << text;
}

// ---------------------------------------------------------- concurrency ---

std::size_t thread_cap() {
    if (const char* env = std::getenv("SPECACT_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v < 1) throw std::invalid_argument(env);
            return std::size_t(v);
        } catch (const std::exception&) {
            throw ConfigError("SPECACT_THREADS: expected a positive integer");
        }
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

// evaluates fn(0..n-1), possibly concurrently; results keep index order
template <typename Fn>
void run_indexed(std::size_t n, const Fn& fn) {
    const std::size_t workers = std::min(thread_cap(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

// ---------------------------------------------------------- subcommands ---

struct CommonOpts {
    std::string format = "csv";
    std::string output;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_terms = 100000;

    SeriesControl sctl() const { return SeriesControl{rel_tol, abs_tol, max_terms}; }
    QuadratureControl qctl() const {
        QuadratureControl q;
        q.rel_tol = rel_tol;
        q.abs_tol = abs_tol;
        return q;
    }
    void emit(const Table& t) const {
        if (format == "csv") write_out(t.to_csv(), output);
        else if (format == "json") write_out(t.to_json(), output);
        else throw ConfigError("--format: expected csv or json, got \"" + format + "\"");
    }
};

int cmd_thermo(const CommonOpts& c, const std::string& stat, const std::string& variant,
               const std::string& spectrum, const std::string& beta, double mu) {
    const ThermoParams base{1.0, mu, parse_stat(stat), parse_variant(variant)};
    const Spectrum s = load_spectrum(spectrum);
    const std::vector<double> grid = parse_grid(beta, "--beta");
    std::vector<ThermoReport> reports(grid.size());
    run_indexed(grid.size(), [&](std::size_t i) {
        ThermoParams p = base;
        p.beta = grid[i];
        reports[i] = thermo(s, p);
    });
    Table t;
    t.cols = {"beta", "log_Z", "entropy", "energy", "tail_bound"};
    for (std::size_t i = 0; i < grid.size(); ++i)
        t.rows.push_back({num_cell(grid[i]), num_cell(reports[i].log_Z),
                          num_cell(reports[i].entropy), num_cell(reports[i].energy),
                          num_cell(reports[i].tail_bound)});
    c.emit(t);
    return 0;
}

int cmd_coeff(const CommonOpts& c, const std::string& kind_s, const std::string& a_s,
              double mu, const std::string& rep_s) {
    const CoeffKind kind = parse_kind(kind_s);
    const std::vector<double> as = parse_grid(a_s, "--a");
    const std::vector<Representation> reps = parse_reps(rep_s);
    struct Job {
        double a;
        Representation rep;
    };
    std::vector<Job> jobs;
    for (double a : as) {
        if (reps.empty()) {
            jobs.push_back({a, choose_representation(kind, a, mu)});
        } else {
            for (Representation r : reps) jobs.push_back({a, r});
        }
    }
    std::vector<CoeffResult> results(jobs.size());
    run_indexed(jobs.size(), [&](std::size_t i) {
        results[i] = coeff(kind, jobs[i].a, mu, jobs[i].rep, c.sctl(), c.qctl());
    });
    Table t;
    t.cols = {"a", "mu", "rep", "value", "est_error", "terms"};
    for (std::size_t i = 0; i < jobs.size(); ++i)
        t.rows.push_back({num_cell(jobs[i].a), num_cell(mu),
                          str_cell(to_string(results[i].rep)), num_cell(results[i].value),
                          num_cell(results[i].est_error), int_cell(results[i].terms_used)});
    c.emit(t);
    return 0;
}

ExpansionRequest build_request(const CommonOpts& c, const std::string& stat,
                               const std::string& variant, const std::string& quantity,
                               const std::string& spectrum, const std::string& heat_file,
                               double beta, double mu, int L, int K) {
    ExpansionRequest req;
    req.h = load_heat(spectrum, heat_file);
    req.p = ThermoParams{beta, mu, parse_stat(stat), parse_variant(variant)};
    req.qty = parse_quantity(quantity);
    req.L = L;
    req.K = K;
    req.sctl = c.sctl();
    req.qctl = c.qctl();
    return req;
}

int cmd_expand(const CommonOpts& c, const std::string& stat, const std::string& variant,
               const std::string& quantity, const std::string& spectrum,
               const std::string& heat_file, const std::string& beta, double mu,
               int L, int K) {
    const std::vector<double> grid = parse_grid(beta, "--beta");
    if (grid.size() != 1)
        throw ConfigError("--beta: expand takes a single value (compare sweeps grids)");
    ExpansionRequest req = build_request(c, stat, variant, quantity, spectrum, heat_file,
                                         grid[0], mu, L, K);
    const ExpansionResult r = req.p.variant == Variant::SqrtShift ? expand_unprimed(req)
                                                                  : expand_primed(req);
    // k = -1 marks terms of the plain (sqrt-shift) expansion
    Table t;
    t.cols = {"l", "k", "value", "partial_sum"};
    for (std::size_t i = 0; i < r.per_term.size(); ++i)
        t.rows.push_back({int_cell(r.per_term[i].l), int_cell(r.per_term[i].k),
                          num_cell(r.per_term[i].value), num_cell(r.partial_sums[i])});
    c.emit(t);
    return 0;
}

int cmd_compare(const CommonOpts& c, const std::string& stat, const std::string& variant,
                const std::string& quantity, const std::string& spectrum,
                const std::string& heat_file, const std::string& beta, double mu,
                int L, int K) {
    ExpansionRequest req = build_request(c, stat, variant, quantity, spectrum, heat_file,
                                         1.0, mu, L, K);
    const Spectrum s = load_spectrum(spectrum);
    const CompareTable tab = compare_exact(req, s, parse_grid(beta, "--beta"));
    Table t;
    t.cols = {"beta", "exact", "expansion", "abs_err", "rel_err",
              "rel_slope", "abs_slope", "points_used"};
    for (const CompareRow& row : tab.rows)
        t.rows.push_back({num_cell(row.beta), num_cell(row.exact), num_cell(row.expansion),
                          num_cell(row.abs_err), num_cell(row.rel_err),
                          num_cell(tab.rel_slope), num_cell(tab.abs_slope),
                          int_cell(tab.points_used)});
    c.emit(t);
    return 0;
}

int cmd_verify(const CommonOpts& c, int n_max, const std::string& format) {
    const std::vector<CheckResult> results = run_verification(n_max);
    bool all = true;
    for (const CheckResult& r : results) all = all && r.pass;
    if (format == "text") {
        std::string out;
        for (const CheckResult& r : results) out += to_line(r) + "\n";
        out += all ? "all checks passed\n" : "some checks FAILED\n";
        write_out(out, c.output);
    } else {
        Table t;
        t.cols = {"name", "pass", "worst", "detail"};
        for (const CheckResult& r : results)
            t.rows.push_back({str_cell(r.name), bool_cell(r.pass), num_cell(r.worst),
                              str_cell(r.detail)});
        CommonOpts cc = c;
        cc.format = format;
        cc.emit(t);
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral thermodynamics toolkit: exact mode sums, kernel "
                 "coefficients, small-beta expansions, cross-validation"};
    app.require_subcommand(1);

    CommonOpts common;
    std::string stat = "fermi", variant = "sqrt", quantity = "entropy";
    std::string spectrum = "circle:500", heat_file;
    std::string beta = "1", a_grid = "0", kind = "gamma", rep = "auto";
    std::string verify_format = "text";
    double mu = 0.0;
    int L = 1, K = 0, n_max = 2000;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", common.format, "csv or json (default csv)");
        sub->add_option("--output", common.output, "output path (default stdout)");
        sub->add_option("--rel-tol", common.rel_tol, "series/quadrature relative tolerance");
        sub->add_option("--abs-tol", common.abs_tol, "series/quadrature absolute tolerance");
        sub->add_option("--max-terms", common.max_terms, "series term budget");
    };

    CLI::App* t = app.add_subcommand("thermo", "exact mode-sum thermodynamics over a beta grid");
    t->add_option("--stat", stat, "fermi or bose")->required();
    t->add_option("--variant", variant, "sqrt or linear")->required();
    t->add_option("--spectrum", spectrum, "circle:N, torus:d:N, or file:PATH")->required();
    t->add_option("--beta", beta, "inverse temperature or start:stop:step")->required();
    t->add_option("--mu", mu, "chemical potential (<= 0)");
    add_common(t);

    CLI::App* co = app.add_subcommand("coeff", "coefficient function on an order grid");
    co->add_option("--kind", kind, "gamma, omega, chi, or kappa")->required();
    co->add_option("--a", a_grid, "order or start:stop:step")->required();
    co->add_option("--mu", mu, "chemical potential")->required();
    co->add_option("--rep", rep, "auto or comma list of bessel,poisson,xi,quadrature");
    add_common(co);

    CLI::App* ex = app.add_subcommand("expand", "small-beta expansion terms at one beta");
    ex->add_option("--stat", stat, "fermi or bose")->required();
    ex->add_option("--variant", variant, "sqrt or linear")->required();
    ex->add_option("--quantity", quantity, "entropy or energy");
    ex->add_option("--spectrum", spectrum, "circle, torus:d, or file:PATH (heat data)")->required();
    ex->add_option("--heat", heat_file, "heat-expansion file overriding --spectrum");
    ex->add_option("--beta", beta, "inverse temperature")->required();
    ex->add_option("--mu", mu, "chemical potential (< 0)")->required();
    ex->add_option("-L,--groups", L, "highest heat-coefficient group (default 1)");
    ex->add_option("-K,--shifts", K, "highest potential-shift order, linear variant only");
    add_common(ex);

    CLI::App* cp = app.add_subcommand("compare", "expansion vs exact mode sums over a beta grid");
    cp->add_option("--stat", stat, "fermi or bose")->required();
    cp->add_option("--variant", variant, "sqrt or linear")->required();
    cp->add_option("--quantity", quantity, "entropy or energy");
    cp->add_option("--spectrum", spectrum, "circle:N, torus:d:N, or file:PATH")->required();
    cp->add_option("--heat", heat_file, "heat-expansion file for file: spectra");
    cp->add_option("--beta", beta, "beta grid start:stop:step or single value")->required();
    cp->add_option("--mu", mu, "chemical potential (< 0)")->required();
    cp->add_option("-L,--groups", L, "highest heat-coefficient group (default 1)");
    cp->add_option("-K,--shifts", K, "highest potential-shift order, linear variant only");
    add_common(cp);

    CLI::App* ve = app.add_subcommand("verify", "run the full cross-validation suite");
    ve->add_option("--n-max", n_max, "circle spectrum depth for the mode sums (default 2000)");
    ve->add_option("--format", verify_format, "text, csv, or json (default text)");
    ve->add_option("--output", common.output, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        (void)thread_cap(); // reject a malformed SPECACT_THREADS up front
        if (t->parsed()) return cmd_thermo(common, stat, variant, spectrum, beta, mu);
        if (co->parsed()) return cmd_coeff(common, kind, a_grid, mu, rep);
        if (ex->parsed())
            return cmd_expand(common, stat, variant, quantity, spectrum, heat_file,
                              beta, mu, L, K);
        if (cp->parsed())
            return cmd_compare(common, stat, variant, quantity, spectrum, heat_file,
                               beta, mu, L, K);
        if (ve->parsed()) return cmd_verify(common, n_max, verify_format);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
