// Command-line front end: eval, verify, transform, spectrum.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chf/checks.hpp"
#include "chf/chtransform.hpp"
#include "chf/hahn.hpp"
#include "chf/mpfun.hpp"
#include "chf/orthopoly.hpp"

using json = nlohmann::json;
using namespace chf;

namespace {

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

Level log_level() {
    const char* env = std::getenv("HAHN_LOG");
    const std::string v = env ? env : "warn";
    if (v == "error") return Level::Error;
    if (v == "info") return Level::Info;
    if (v == "debug") return Level::Debug;
    return Level::Warn;
}

void log(Level l, const std::string& msg) {
    static const Level threshold = log_level();
    static const char* names[] = {"error", "warn", "info", "debug"};
    if (l <= threshold) std::cerr << "[" << names[int(l)] << "] " << msg << "\n";
}

struct Options {
    double k1 = 1.3, k2 = 0.9, t = 0.4, phi = kPi / 2, rho = 0.8;
    int n = 0;
    double lambda = 1.0, eps = 0.3, a = 0.3, b = 0.9, c = 1.2;
    double tol = 0.0;  // 0 keeps each check's own tolerance
    std::string format = "csv";
    std::uint64_t seed = 20261016;
    std::string out;
    std::string config;

    std::string function = "phi";
    std::vector<double> grid;

    std::string suite = "all";
    long n_terms = 100000;
    bool no_tail = false;
    std::string spectral_case = "all";
    int panels = 15;
    double rho_max = 30.0;

    std::string direction = "forward";
    std::string input;
};

// Keys in a --config file override the matching flags.
void apply_config(Options& o) {
    if (o.config.empty()) return;
    std::ifstream in(o.config);
    require(bool(in), "cannot read config file " + o.config);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(ErrorKind::Domain, std::string("config file is not valid JSON: ") + e.what());
    }
    require(j.is_object(), "config file must hold a JSON object");
    auto take = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    try {
        take("k1", o.k1); take("k2", o.k2); take("t", o.t); take("phi", o.phi); take("rho", o.rho);
        take("n", o.n); take("lambda", o.lambda); take("eps", o.eps);
        take("a", o.a); take("b", o.b); take("c", o.c);
        take("tol", o.tol); take("format", o.format); take("seed", o.seed); take("out", o.out);
        take("function", o.function); take("grid", o.grid); take("suite", o.suite);
        take("n_terms", o.n_terms); take("no_tail", o.no_tail); take("case", o.spectral_case);
        take("panels", o.panels); take("rho_max", o.rho_max); take("direction", o.direction); take("input", o.input);
    } catch (const json::exception& e) {
        fail(ErrorKind::Domain, std::string("bad value in config file: ") + e.what());
    }
}

// Output sink: stdout or the --out file.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            require(bool(file_), "cannot open output file " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    json header;

    void write(std::ostream& os, const std::string& format) const {
        if (format == "json") {
            json j;
            j["header"] = header;
            j["columns"] = columns;
            j["rows"] = rows;
            os << j.dump(2) << "\n";
            return;
        }
        for (auto it = header.begin(); it != header.end(); ++it) os << "# " << it.key() << "=" << it.value().dump() << "\n";
        for (size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
        os << "\n";
        for (const auto& r : rows) {
            for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << num(r[i]);
            os << "\n";
        }
    }
};

HahnParams hahn_params(const Options& o) {
    HahnParams p{o.k1, o.k2, o.t, o.phi};
    p.validate();
    return p;
}

json hahn_header(const Options& o) { return {{"k1", o.k1}, {"k2", o.k2}, {"t", o.t}, {"phi", o.phi}}; }

std::vector<double> default_grid(const std::string& fn) {
    if (fn == "weights" || fn == "q_n") return {0.25, 0.5, 1.0, 1.5, 2.0};
    if (fn == "cdh_poly") return {0.0, 0.25, 1.0, 2.25, 4.0};
    return {-2.0, -1.0, 0.0, 1.0, 2.0};
}

int cmd_eval(const Options& o) {
    require(o.format == "csv" || o.format == "json", "format must be csv or json");
    const std::vector<double> grid = o.grid.empty() ? default_grid(o.function) : o.grid;
    Table tab;
    tab.columns = {"point", "value_re", "value_im"};
    auto add = [&](double x, cplx v) { tab.rows.push_back({x, v.real(), v.imag()}); };
    const std::string& f = o.function;
    if (f == "mp_poly") {
        const MPParams p{o.lambda, o.phi};
        p.validate();
        require(o.n >= 0, "n must be non-negative");
        tab.header = {{"function", f}, {"lambda", o.lambda}, {"phi", o.phi}, {"n", o.n}};
        for (double x : grid) add(x, mp_poly(o.n, p, x));
    } else if (f == "cdh_poly") {
        const CDHParams p{o.a, o.b, o.c};
        p.validate();
        require(o.n >= 0, "n must be non-negative");
        tab.header = {{"function", f}, {"a", o.a}, {"b", o.b}, {"c", o.c}, {"n", o.n}};
        for (double y : grid) add(y, cdh_poly(o.n, p, y));
    } else if (f == "mp_function") {
        const MPFunParams p{cplx(-0.5, o.rho), o.eps, o.phi};
        p.validate();
        tab.header = {{"function", f}, {"lambda", "-1/2+i*rho"}, {"rho", o.rho}, {"eps", o.eps}, {"phi", o.phi}, {"n", o.n}};
        for (double x : grid) add(x, mp_function(o.n, p, x));
    } else if (f == "phi" || f == "Phi" || f == "psi") {
        const HahnParams p = hahn_params(o);
        tab.header = hahn_header(o);
        tab.header["function"] = f;
        tab.header["rho"] = o.rho;
        for (double x : grid)
            add(x, f == "phi" ? phi_rho(p, o.rho, x) : f == "Phi" ? Phi_rho(p, o.rho, x) : psi_rho(p, o.rho, x));
    } else if (f == "q_n") {
        const HahnParams p = hahn_params(o);
        tab.header = hahn_header(o);
        tab.header["function"] = f;
        tab.header["n"] = o.n;
        for (double r : grid) add(r, q_n(p, o.n, r));
    } else if (f == "weights") {
        const HahnParams p = hahn_params(o);
        tab.header = hahn_header(o);
        tab.header["function"] = f;
        tab.columns = {"rho", "W0", "W1_re", "W1_im", "W2", "h_re", "h_im", "W"};
        for (double r : grid) {
            require(r >= 0.0, "weights are defined for rho >= 0");
            const SpectralWeights w = spectral_weights(p, r);
            tab.rows.push_back({r, w.W0, w.W1.real(), w.W1.imag(), w.W2, w.h.real(), w.h.imag(), w.W});
        }
    } else {
        fail(ErrorKind::Domain, "unknown function '" + f + "' (mp_poly, cdh_poly, mp_function, phi, Phi, psi, weights, q_n)");
    }
    Sink sink(o.out);
    tab.write(sink.os(), o.format);
    return 0;
}

int cmd_verify(const Options& o) {
    require(o.tol >= 0.0, "tol must be positive");
    // sum_thm31 is kept as an alias of bilinear_sum for existing scripts
    const std::string s = o.suite == "sum_thm31" ? "bilinear_sum" : o.suite;
    SumCheckOptions so;
    so.n_terms = o.n_terms;
    so.tail_model = !o.no_tail;
    std::vector<CheckResult> rs;
    auto run = [&](const char* name, auto&& fn) {
        if (s != "all" && s != name) return;
        log(Level::Info, std::string("running suite ") + name);
        auto part = fn();
        rs.insert(rs.end(), part.begin(), part.end());
    };
    run("orthogonality", [] {
        auto r = check_mp_orthonormality();
        for (auto& v : check_cdh_orthonormality()) r.push_back(v);
        for (auto& v : check_mp_function_orthonormality()) r.push_back(v);
        return r;
    });
    run("eigen", [] {
        auto r = check_mp_difference();
        for (auto& v : check_hahn_eigen()) r.push_back(v);
        return r;
    });
    run("c_expansion", [&] { return check_c_expansion(o.seed); });
    run("wronskian", [] { return check_green_identity(); });
    run("bilinear_sum", [&] { return check_bilinear_sum(so); });
    run("laguerre_limit", [&] { return check_laguerre_limit(so); });
    run("transform_unitarity", [&] {
        auto r = check_q_coefficients();
        for (auto& v : check_transform(o.spectral_case, o.panels)) r.push_back(v);
        return r;
    });
    run("discrete_spectrum", [] {
        auto r = check_discrete_inner();
        for (auto& v : check_discrete_orthogonality()) r.push_back(v);
        return r;
    });
    run("commutators", [] { return check_su11_structure(); });
    require(!rs.empty(), "unknown suite '" + s +
                             "' (orthogonality, eigen, c_expansion, wronskian, bilinear_sum, laguerre_limit, "
                             "transform_unitarity, discrete_spectrum, commutators, all)");
    json report;
    report["header"] = {{"suite", s},          {"seed", o.seed},        {"n_terms", o.n_terms},
                        {"tail_model", !o.no_tail}, {"case", o.spectral_case}, {"panels", o.panels},
                        {"rho_max", 30.0}};
    if (o.tol > 0.0) {
        report["header"]["tolerance_override"] = o.tol;
        for (auto& r : rs) r = make_check(r.check, r.parameters, r.residual, o.tol);
    }
    report["checks"] = json::array();
    for (const auto& r : rs)
        report["checks"].push_back(
            {{"check", r.check}, {"parameters", r.parameters}, {"residual", r.residual}, {"tolerance", r.tolerance}, {"pass", r.pass}});
    const bool ok = all_pass(rs);
    report["pass"] = ok;
    Sink sink(o.out);
    sink.os() << report.dump(2) << "\n";
    return ok ? 0 : 1;
}

// Transform input file:
//   forward: {"q_combination": [[n, re, im], ...], "grid": [x, ...]}
//   inverse: {"polynomial": [[re, im], ...]} (monomial coefficients) or
//            {"samples": [[x, re, im], ...]} on a uniform x grid, plus "grid": [rho, ...]
int cmd_transform(const Options& o) {
    require(!o.input.empty(), "transform needs --input <file>");
    require(o.format == "csv" || o.format == "json", "format must be csv or json");
    std::ifstream in(o.input);
    require(bool(in), "cannot read input file " + o.input);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(ErrorKind::Domain, std::string("input is not valid JSON: ") + e.what());
    }
    require(j.is_object() && !j.empty(), "input file is empty");
    const HahnParams p = hahn_params(o);
    Table tab;
    tab.header = hahn_header(o);
    tab.header["direction"] = o.direction;
    std::vector<double> grid = j.value("grid", o.grid);
    try {
        if (o.direction == "forward") {
            require(j.contains("q_combination") && !j["q_combination"].empty(), "forward input needs a non-empty q_combination");
            std::vector<std::pair<int, cplx>> terms;
            for (const auto& e : j["q_combination"]) terms.push_back({e.at(0).get<int>(), cplx(e.at(1).get<double>(), e.at(2).get<double>())});
            for (const auto& [n, c] : terms) require(n >= 0, "q_n index must be non-negative");
            if (grid.empty()) grid = default_grid("phi");
            tab.header["rho_max"] = o.rho_max;
            tab.header["panels"] = o.panels;
            const SpaceM M(p, o.rho_max, o.panels);
            std::vector<CoeffPair> qs;
            for (const auto& [n, c] : terms) qs.push_back(q_pair(p, n));
            tab.columns = {"x", "value_re", "value_im"};
            for (double x : grid) {
                const auto v = forward_F_batch(qs, M, x);
                cplx s = 0.0;
                for (size_t i = 0; i < terms.size(); ++i) s += terms[i].second * v[i];
                tab.rows.push_back({x, s.real(), s.imag()});
            }
        } else if (o.direction == "inverse") {
            if (grid.empty()) grid = default_grid("q_n");
            tab.columns = {"rho", "g1_re", "g1_im", "g2_re", "g2_im"};
            if (j.contains("polynomial")) {
                std::vector<cplx> coef;
                for (const auto& e : j["polynomial"]) coef.push_back(cplx(e.at(0).get<double>(), e.at(1).get<double>()));
                require(!coef.empty(), "polynomial input is empty");
                auto g = [&](double x) {
                    cplx v = 0.0;
                    for (size_t k = coef.size(); k-- > 0;) v = v * x + coef[k];
                    return v;
                };
                for (double r : grid) {
                    const auto G = inverse_G(g, p, r, int(coef.size()) - 1);
                    tab.rows.push_back({r, G[0].real(), G[0].imag(), G[1].real(), G[1].imag()});
                }
            } else {
                require(j.contains("samples") && j["samples"].size() >= 3, "inverse input needs a polynomial or >= 3 samples");
                std::vector<double> xs;
                std::vector<cplx> gs;
                for (const auto& e : j["samples"]) {
                    xs.push_back(e.at(0).get<double>());
                    gs.push_back(cplx(e.at(1).get<double>(), e.at(2).get<double>()));
                }
                const double h = (xs.back() - xs.front()) / double(xs.size() - 1);
                for (size_t i = 1; i < xs.size(); ++i)
                    require(std::abs(xs[i] - xs[i - 1] - h) < 1e-9 * std::max(1.0, std::abs(h)) && h > 0,
                            "samples must lie on an increasing uniform grid");
                // composite trapezoid rule of g (phi*, phi) w on the sample grid
                for (double r : grid) {
                    cplx g1 = 0.0, g2 = 0.0;
                    for (size_t i = 0; i < xs.size(); ++i) {
                        const double wt = (i == 0 || i + 1 == xs.size()) ? 0.5 * h : h;
                        const double w = weight_w(p, xs[i]).real();
                        g1 += wt * gs[i] * phi_rho_star(p, r, xs[i]) * w;
                        g2 += wt * gs[i] * phi_rho(p, r, xs[i]) * w;
                    }
                    tab.rows.push_back({r, g1.real(), g1.imag(), g2.real(), g2.imag()});
                }
            }
        } else {
            fail(ErrorKind::Domain, "direction must be forward or inverse");
        }
    } catch (const json::exception& e) {
        fail(ErrorKind::Domain, std::string("malformed transform input: ") + e.what());
    }
    Sink sink(o.out);
    tab.write(sink.os(), o.format);
    return 0;
}

int cmd_spectrum(const Options& o) {
    const HahnParams p = hahn_params(o);
    const SpectralData sd = classify_spectrum(p);
    json j;
    j["header"] = hahn_header(o);
    const char* kind = sd.kind == SpectralCase::ContinuousOnly       ? "continuous"
                       : sd.kind == SpectralCase::ComplementaryPoint ? "complementary_point"
                                                                     : "discrete_series_points";
    j["case"] = kind;
    j["points"] = json::array();
    auto point = [&](int n, cplx rho) {
        const cplx a = discrete_inner_closed(p, DiscretePair::PhiPhi, n);
        const cplx b = discrete_inner_closed(p, DiscretePair::PhiStarPhi, n);
        j["points"].push_back({{"label", n < 0 ? std::string("rho_c") : "rho_" + std::to_string(n)},
                               {"rho_im", rho.imag()},
                               {"norm_phi_phi", {a.real(), a.imag()}},
                               {"inner_phistar_phi", {b.real(), b.imag()}}});
    };
    if (sd.has_rho_c) point(-1, sd.rho_c);
    for (int n = 0; n <= sd.n0; ++n) point(n, sd.rho_n[size_t(n)]);
    Sink sink(o.out);
    sink.os() << j.dump(2) << "\n";
    return 0;
}

void common_flags(CLI::App* sub, Options& o) {
    sub->add_option("--k1", o.k1, "k1 > 0");
    sub->add_option("--k2", o.k2, "k2 > 0");
    sub->add_option("--t", o.t, "shift t");
    sub->add_option("--phi", o.phi, "phi in (0, pi)");
    sub->add_option("--rho", o.rho, "spectral parameter");
    sub->add_option("--n", o.n, "degree or index");
    sub->add_option("--tol", o.tol, "verify: replace every check tolerance with this value");
    sub->add_option("--format", o.format, "csv or json");
    sub->add_option("--seed", o.seed, "seed for random check points");
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--config", o.config, "JSON file whose keys override the flags");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuous Hahn functions, their transform and su(1,1) checks"};
    app.require_subcommand(1);
    Options o;

    auto* eval = app.add_subcommand("eval", "Evaluate a function on a grid");
    common_flags(eval, o);
    eval->add_option("function", o.function, "mp_poly | cdh_poly | mp_function | phi | Phi | psi | weights | q_n")->required();
    eval->add_option("--grid", o.grid, "evaluation points")->delimiter(',');
    eval->add_option("--lambda", o.lambda, "Meixner-Pollaczek lambda");
    eval->add_option("--eps", o.eps, "eps of the Meixner-Pollaczek functions");
    eval->add_option("--a", o.a, "continuous dual Hahn a");
    eval->add_option("--b", o.b, "continuous dual Hahn b");
    eval->add_option("--c", o.c, "continuous dual Hahn c");

    auto* verify = app.add_subcommand("verify", "Run a verification suite and print a JSON report");
    common_flags(verify, o);
    verify->add_option("suite", o.suite,
                       "orthogonality | eigen | c_expansion | wronskian | bilinear_sum (alias sum_thm31) | laguerre_limit | "
                       "transform_unitarity | discrete_spectrum | commutators | all");
    verify->add_option("--n-terms", o.n_terms, "terms of the bilinear and Laguerre sums");
    verify->add_flag("--no-tail", o.no_tail, "sum the bilinear series without the tail model");
    verify->add_option("--case", o.spectral_case, "transform case: i, ii, iii or all");
    verify->add_option("--panels", o.panels, "Gauss-Legendre panels of the rho grid");

    auto* transform = app.add_subcommand("transform", "Forward or inverse continuous Hahn transform");
    common_flags(transform, o);
    transform->add_option("--direction", o.direction, "forward or inverse");
    transform->add_option("--input", o.input, "JSON input file");
    transform->add_option("--grid", o.grid, "output grid (x for forward, rho for inverse)")->delimiter(',');
    transform->add_option("--panels", o.panels, "Gauss-Legendre panels of the rho grid");

    auto* spectrum = app.add_subcommand("spectrum", "Classify the spectrum and list the discrete points");
    common_flags(spectrum, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        apply_config(o);
        if (*eval) return cmd_eval(o);
        if (*verify) return cmd_verify(o);
        if (*transform) return cmd_transform(o);
        return cmd_spectrum(o);
    } catch (const Error& e) {
        log(Level::Error, e.what());
        return e.exit_code();
    } catch (const std::exception& e) {
        log(Level::Error, e.what());
        return 2;
    }
}
