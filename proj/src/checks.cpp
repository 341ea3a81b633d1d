#include "chf/checks.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <random>
#include <thread>

#include "chf/chtransform.hpp"
#include "chf/hahn.hpp"
#include "chf/mpfun.hpp"
#include "chf/orthopoly.hpp"
#include "chf/quadrature.hpp"
#include "chf/su11rep.hpp"

namespace chf {

CheckResult make_check(std::string check, std::string parameters, double residual, double tolerance) {
    return {std::move(check), std::move(parameters), residual, tolerance, std::isfinite(residual) && residual < tolerance};
}

bool all_pass(const std::vector<CheckResult>& rs) {
    return std::all_of(rs.begin(), rs.end(), [](const CheckResult& r) { return r.pass; });
}

namespace {

template <class... A>
std::string fmt(const char* f, A... a) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

std::string hahn_str(const HahnParams& p) { return fmt("k1=%g k2=%g t=%g phi=%.6g", p.k1, p.k2, p.t, p.phi); }

// Runs body(i) for i in [0, n) on all hardware threads; body must write only to slot i.
template <class F>
void parallel_for(size_t n, F body) {
    const size_t workers = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (size_t w = 0; w < std::min(workers, n); ++w)
        pool.emplace_back([&] {
            for (size_t i = next++; i < n; i = next++) body(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace

std::vector<CheckResult> check_mp_orthonormality() {
    std::vector<CheckResult> out;
    for (double lam : {0.3, 1.0, 2.5})
        for (double phi : {kPi / 3, kPi / 2, 2 * kPi / 3}) {
            const MPParams p{lam, phi};
            const double X = mp_cutoff(p, 16);
            double worst = 0.0;
            for (int m = 0; m <= 8; ++m)
                for (int n = m; n <= 8; ++n) {
                    const cplx v = integrate_line(
                        [&](double x) { return mp_orthonormal(m, p, x) * std::conj(mp_orthonormal(n, p, x)) * mp_weight(p, x); },
                        X, 1e-13).value;
                    worst = std::max(worst, std::abs(v - (m == n ? 1.0 : 0.0)));
                }
            out.push_back(make_check("mp_orthonormality", fmt("lambda=%g phi=%.6g m,n<=8", lam, phi), worst, 1e-8));
        }
    return out;
}

std::vector<CheckResult> check_cdh_orthonormality() {
    std::vector<CheckResult> out;
    for (CDHParams p : {CDHParams{-0.3, 0.9, 1.2}, CDHParams{0.3, 0.9, 1.2}}) {
        const Measure mu = cdh_measure(p);
        double worst = 0.0;
        for (int m = 0; m <= 6; ++m)
            for (int n = m; n <= 6; ++n) {
                const cplx v = integrate_measure(
                    [&](double y) { return cdh_orthonormal(m, p, y) * std::conj(cdh_orthonormal(n, p, y)); }, mu, 1e-13).value;
                worst = std::max(worst, std::abs(v - (m == n ? 1.0 : 0.0)));
            }
        out.push_back(make_check("cdh_orthonormality",
                                 fmt("a=%g b=%g c=%g masses=%zu m,n<=6", p.a, p.b, p.c, mu.masses.size()), worst, 1e-8));
    }
    return out;
}

std::vector<CheckResult> check_mp_difference() {
    std::vector<CheckResult> out;
    for (const MPParams p : {MPParams{0.7, 1.1}, MPParams{2.5, kPi / 2}}) {
        double worst = 0.0;
        for (int n = 0; n <= 8; ++n)
            for (int j = 0; j < 20; ++j) {
                const cplx x(-3.0 + 0.3 * j, -0.45 + 0.045 * j);
                worst = std::max(worst, std::abs(mp_difference_residual(n, p, x)) / std::max(1.0, std::abs(mp_orthonormal(n, p, x))));
            }
        out.push_back(make_check("mp_difference_equation", fmt("lambda=%g phi=%.6g n<=8, 20 strip points", p.lambda, p.phi),
                                 worst, 1e-10));
    }
    return out;
}

std::vector<CheckResult> check_mp_function_orthonormality() {
    const MPFunParams p{cplx(-0.5, 0.7), 0.3, kPi / 2};
    double worst = 0.0;
    for (int m = -3; m <= 3; ++m)
        for (int n = m; n <= 3; ++n) worst = std::max(worst, std::abs(mp_function_inner(m, n, p) - (m == n ? 1.0 : 0.0)));
    return {make_check("mp_function_orthonormality", "lambda=-1/2+0.7i eps=0.3 phi=pi/2 |m|,|n|<=3", worst, 1e-6)};
}

std::vector<CheckResult> check_hahn_eigen() {
    const HahnParams p{1.3, 0.9, 0.4, kPi / 2};
    const double rho = 0.8;
    const std::vector<std::pair<const char*, StripFn>> fs = {
        {"phi_rho", [&](cplx x) { return phi_rho(p, rho, x); }},
        {"phi*_rho", [&](cplx x) { return phi_rho_star(p, rho, x); }},
        {"Phi_rho", [&](cplx x) { return Phi_rho(p, rho, x); }},
        {"Phi_-rho", [&](cplx x) { return Phi_rho(p, -rho, x); }}};
    std::vector<CheckResult> out;
    for (const auto& [name, f] : fs) {
        double worst = 0.0;
        for (double x : {-2.0, 0.0, 1.5}) {
            const cplx v = f(x);
            worst = std::max(worst, std::abs(lambda_apply(p, f, x) - (rho * rho + 0.25) * v) / std::max(1.0, std::abs(v)));
        }
        out.push_back(make_check(std::string("eigen_") + name, hahn_str(p) + " rho=0.8 x in {-2,0,1.5}", worst, 1e-9));
    }
    return out;
}

std::vector<CheckResult> check_c_expansion(std::uint64_t seed) {
    const HahnParams p{1.3, 0.9, 0.4, kPi / 2};
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> rr(0.1, 3.0), xx(-3.0, 3.0);
    double worst = 0.0;
    for (int j = 0; j < 10; ++j) {
        const double rho = rr(gen), x = xx(gen);
        const cplx v = phi_rho(p, rho, x);
        const cplx d = v - c_function(p, rho) * Phi_rho(p, rho, x) - c_function(p, -rho) * Phi_rho(p, -rho, x);
        worst = std::max(worst, std::abs(d) / std::max(1.0, std::abs(v)));
    }
    return {make_check("c_expansion", hahn_str(p) + fmt(" 10 random (rho,x), seed=%llu", (unsigned long long)seed), worst, 1e-9)};
}

std::vector<CheckResult> check_green_identity() {
    const HahnParams p{1.3, 0.9, 0.4, kPi / 2};
    double worst = 0.0;
    for (int a = 0; a <= 5; ++a)
        for (int b = 0; b <= 5; ++b) {
            const StripFn f = [a](cplx x) { return std::pow(x, a) * cplx(1.0, 0.3); };
            const StripFn g = [b](cplx x) { return std::pow(x, b) + kI; };
            const StripFn Lf = [&](cplx x) { return lambda_apply(p, f, x); };
            const StripFn Lg = [&](cplx x) { return lambda_apply(p, g, x); };
            const cplx d = truncated_inner_w(p, Lf, g, 8, 10) - truncated_inner_w(p, f, Lg, 8, 10) - wronskian(p, f, g, 10) +
                           wronskian(p, f, g, -8);
            worst = std::max(worst, std::abs(d));
        }
    return {make_check("green_identity", hahn_str(p) + " (M,N)=(8,10) degrees<=5", worst, 1e-8)};
}

std::vector<CheckResult> check_bilinear_sum(const SumCheckOptions& opt) {
    std::vector<CheckResult> out;
    const double k1 = 0.8, k2 = 1.1, x1 = 0.4, x2 = -0.2, phi = kPi / 2, rho = 0.6;
    SumOptions so;
    so.n_terms = opt.n_terms;
    so.tail_model = opt.tail_model;
    const std::string base = fmt("k1=%g k2=%g x1=%g x2=%g phi=pi/2 rho=%g", k1, k2, x1, x2, rho);
    const SumCheck s = bilinear_sum_check(k1, k2, 1, x1, x2, phi, rho, so);
    out.push_back(make_check(opt.tail_model ? "bilinear_sum_tail_model" : "bilinear_sum_raw",
                             base + fmt(" p=1 n_terms=%ld", opt.n_terms), s.rel_err, 1e-5));
    if (!opt.tail_model) return out;
    SumOptions raw;
    raw.n_terms = opt.raw_terms;
    raw.tail_model = false;
    const SumCheck r = bilinear_sum_check(k1, k2, 1, x1, x2, phi, rho, raw);
    out.push_back(make_check("bilinear_sum_raw", base + fmt(" p=1 n_terms=%ld", opt.raw_terms), r.rel_err, 5e-3));
    const SumCheck m = bilinear_sum_check(k2, k1, -1, x2, x1, phi, rho, so);
    out.push_back(make_check("bilinear_sum_negative_p", fmt("k1=%g k2=%g x1=%g x2=%g phi=pi/2 rho=%g p=-1", k2, k1, x2, x1, rho),
                             m.rel_err, 1e-5));
    const SumCheck d = bilinear_sum_check(1.6, 0.4, 1, 0.4, -0.2, 1.2, cplx(0.0, 0.7), so);
    out.push_back(make_check("bilinear_sum_mass_point", "k1=1.6 k2=0.4 x1=0.4 x2=-0.2 phi=1.2 rho=0.7i p=1", d.rel_err, 1e-6));
    return out;
}

std::vector<CheckResult> check_laguerre_limit(const SumCheckOptions& opt) {
    SumOptions so;
    so.n_terms = opt.n_terms;
    so.tail_model = opt.tail_model;
    so.orders = 3;
    std::vector<CheckResult> out;
    for (int p : {0, 1, 2}) {
        const SumCheck s = laguerre_limit_check(0.8, 1.1, p, 3.0, 1.0, 0.6, so);
        out.push_back(make_check("laguerre_limit", fmt("k1=0.8 k2=1.1 p=%d x1=3 x2=1 rho=0.6 n_terms=%ld", p, opt.n_terms),
                                 s.rel_err, 1e-4));
    }
    return out;
}

std::vector<CheckResult> check_q_coefficients() {
    std::vector<CheckResult> out;
    for (const HahnParams& p : {HahnParams{1.3, 0.9, 0.4, kPi / 2}, HahnParams{1.6, 0.4, -0.3, 1.1}}) {
        const MPParams mp{p.k2, p.phi};
        double worst = 0.0;
        for (int n = 0; n <= 4; ++n)
            for (double rho : {0.3, 0.9}) {
                const auto G = inverse_G([&](double x) { return mp_poly(n, mp, x); }, p, rho, n);
                const cplx q = q_n(p, n, rho);
                worst = std::max({worst, std::abs(G[0] - std::conj(q)) / std::abs(q), std::abs(G[1] - q) / std::abs(q)});
            }
        out.push_back(make_check("q_coefficients", hahn_str(p) + " n<=4 rho in {0.3,0.9}", worst, 1e-7));
    }
    return out;
}

std::vector<CheckResult> check_transform(const std::string& which, int panels) {
    struct Case {
        const char* name;
        HahnParams p;
    };
    const Case cases[] = {{"i", {0.7, 0.9, 0.3, kPi / 2}}, {"ii", {0.2, 0.25, 0.3, kPi / 2}}, {"iii", {1.6, 0.4, 0.3, kPi / 2}}};
    require(which == "all" || which == "i" || which == "ii" || which == "iii", "check_transform: case must be i, ii, iii or all");
    std::vector<CheckResult> out;
    for (const Case& c : cases) {
        if (which != "all" && which != c.name) continue;
        const HahnParams& p = c.p;
        const SpaceM M(p, 30.0, panels);
        const MPParams mp{p.k2, p.phi};
        std::vector<CoeffPair> qs;
        for (int n = 0; n <= 4; ++n) qs.push_back(q_pair(p, n));

        const double xs[] = {-1.5, -0.5, 0.0, 1.0, 2.0};
        std::vector<double> rep(5, 0.0);
        parallel_for(5, [&](size_t i) {
            const auto v = forward_F_batch(qs, M, xs[i]);
            for (int n = 0; n <= 3; ++n) {
                const cplx pn = mp_poly(n, mp, xs[i]);
                rep[i] = std::max(rep[i], std::abs(v[size_t(n)] - pn) / std::max(1.0, std::abs(pn)));
            }
        });
        const std::string tag = hahn_str(p) + fmt(" case %s panels=%d", c.name, panels);
        out.push_back(make_check(std::string("transform_reproduction_") + c.name, tag + " n<=3, 5 points",
                                 *std::max_element(rep.begin(), rep.end()), 1e-6));

        // Gram matrix of F q_n in L^2(w).  The weight has Gamma poles at distance k1 and k2 from the real
        // axis above x = -t and x = 0, so the 12-point Gauss-Legendre panels shrink near those points.
        const double rate = kPi - std::abs(2.0 * p.phi - kPi);
        double X = 5.0;
        while (std::pow(X, 8.0 + 2.0 * (p.k1 + p.k2)) * std::exp(-rate * X) > 1e-12) X += 0.5;
        const GaussRule gl = gauss_legendre(12);
        std::vector<double> nodes, wts;
        for (double lo = -X; lo < X;) {
            const double dist = std::min(std::hypot(lo + p.t, p.k1), std::hypot(lo, p.k2));
            const double hi = std::min(X, lo + std::min(1.0, 0.5 * dist));
            for (size_t j = 0; j < gl.nodes.size(); ++j) {
                const double x = lo + (hi - lo) * gl.nodes[j];
                nodes.push_back(x);
                wts.push_back((hi - lo) * gl.weights[j] * weight_w(p, x).real());
            }
            lo = hi;
        }
        std::vector<std::vector<cplx>> vals(nodes.size());
        parallel_for(nodes.size(), [&](size_t i) { vals[i] = forward_F_batch(qs, M, nodes[i]); });
        double worst = 0.0;
        for (int a = 0; a <= 4; ++a)
            for (int b = 0; b <= 4; ++b) {
                cplx g = 0.0;
                for (size_t i = 0; i < nodes.size(); ++i) g += wts[i] * vals[i][size_t(a)] * std::conj(vals[i][size_t(b)]);
                worst = std::max(worst, std::abs(g - inner_M(qs[size_t(a)], qs[size_t(b)], M)));
            }
        out.push_back(make_check(std::string("transform_unitarity_") + c.name, tag + " m,n<=4", worst, 1e-6));
    }
    return out;
}

namespace {

struct DiscretePoint {
    HahnParams p;
    int n;
    cplx rho;
};

std::vector<DiscretePoint> discrete_points() {
    std::vector<DiscretePoint> pts;
    for (const HahnParams& q : {HahnParams{0.2, 0.25, 0.3, kPi / 2}, HahnParams{1.6, 0.4, 0.3, kPi / 2},
                                HahnParams{1.6, 0.4, -0.5, 1.1}, HahnParams{2.7, 0.4, -0.2, 1.2}}) {
        const SpectralData sd = classify_spectrum(q);
        if (sd.has_rho_c) pts.push_back({q, -1, sd.rho_c});
        for (int n = 0; n <= sd.n0; ++n) pts.push_back({q, n, sd.rho_n[size_t(n)]});
    }
    return pts;
}

}  // namespace

std::vector<CheckResult> check_discrete_inner() {
    std::vector<CheckResult> out;
    for (const DiscretePoint& d : discrete_points()) {
        const auto ex = power_exponents(2.0 * d.rho.imag() - 1.0, {0.0}, 5);
        const cplx r = d.rho;
        const HahnParams& q = d.p;
        const cplx quadA = integrate_power_tail([&](double x) { return std::norm(phi_rho_weighted(q, r, x)); }, 100.0, ex, ex).value;
        const cplx quadB = integrate_power_tail(
            [&](double x) { return phi_rho_star_weighted(q, r, x) * std::conj(phi_rho_weighted(q, r, x)); }, 100.0, ex, ex).value;
        const std::string tag = hahn_str(q) + (d.n < 0 ? std::string(" rho_c") : fmt(" rho_%d", d.n));
        double quad_err = 0.0, res_err = 0.0;
        for (auto [which, quad] : {std::pair{DiscretePair::PhiPhi, quadA}, std::pair{DiscretePair::PhiStarPhi, quadB}}) {
            const cplx closed = discrete_inner_closed(q, which, d.n);
            const cplx res = discrete_inner_residue(q, which, d.n);
            quad_err = std::max(quad_err, std::abs(quad - closed) / std::abs(closed));
            res_err = std::max(res_err, std::abs(res - closed) / std::abs(closed));
        }
        out.push_back(make_check("discrete_closed_vs_quadrature", tag, quad_err, 1e-7));
        out.push_back(make_check("discrete_closed_vs_residue", tag, res_err, 1e-6));
    }
    return out;
}

std::vector<CheckResult> check_discrete_orthogonality() {
    std::vector<CheckResult> out;
    for (const DiscretePoint& d : discrete_points()) {
        if (d.n < 0) continue;
        for (double sigma : {0.3, 1.0}) {
            const auto ex = power_exponents(d.rho.imag() - 1.0, {sigma, -sigma}, 4);
            const auto v = integrate_power_tail(
                [&](double x) { return phi_rho_weighted(d.p, d.rho, x) * std::conj(phi_rho_weighted(d.p, sigma, x)); }, 400.0, ex, ex);
            out.push_back(make_check("discrete_vs_continuous_orthogonality",
                                     hahn_str(d.p) + fmt(" rho_%d sigma=%g", d.n, sigma), std::abs(v.value), 1e-6));
        }
    }
    return out;
}

std::vector<CheckResult> check_su11_structure() {
    std::vector<CheckResult> out;
    const RepLabel reps[] = {RepLabel::pos(0.7), RepLabel::neg(1.3), RepLabel::principal(0.8, 0.3),
                             RepLabel::complementary(-0.3, 0.2), RepLabel::complementary(-0.4, 0.8)};
    const char* names[] = {"pos k=0.7", "neg k=1.3", "principal rho=0.8 eps=0.3", "complementary lambda=-0.3 eps=0.2",
                           "complementary lambda=-0.4 eps=0.8"};
    for (size_t i = 0; i < std::size(reps); ++i) {
        out.push_back(make_check("commutators", std::string(names[i]) + " N=12", commutator_defect(reps[i], 12), 1e-12));
        out.push_back(make_check("casimir_scalar", std::string(names[i]) + " N=12", casimir_defect(reps[i], 12), 1e-12));
    }
    out.push_back(make_check("mp_eigenvector_pos", "k=0.7 phi=1.1 x=0.8 N=30",
                             mp_eigen_residual(RepLabel::pos(0.7), 1.1, 0.8, 30), 1e-10));
    out.push_back(make_check("mp_eigenvector_neg", "k=0.7 phi=1.1 x=-1.8 N=30",
                             mp_eigen_residual(RepLabel::neg(0.7), 1.1, -1.8, 30), 1e-10));
    out.push_back(make_check("difference_commutators_pos", "k=0.7 phi=1.1 degrees<=5",
                             diff_commutator_defect(Series::Pos, 0.7, 1.1), 1e-12));
    out.push_back(make_check("difference_commutators_neg", "k=1.3 phi=2.0 degrees<=5",
                             diff_commutator_defect(Series::Neg, 1.3, 2.0), 1e-12));
    out.push_back(make_check("coproduct_casimir_matrices", "k1=0.7 k2=1.3 N=6", coproduct_defect(0.7, 1.3, 6), 1e-12));

    // The tensor Casimir against Lambda: three test functions 1, x, x^2 fix the three coefficients.
    const HahnParams hp{1.3, 0.9, 0.4, 1.1};
    double worst = 0.0, realized = 0.0;
    for (int j = 0; j < 20; ++j) {
        const cplx x(-2.5 + 0.27 * j, 0.02 * j - 0.2);
        for (int d = 0; d <= 2; ++d) {
            const StripFn g = [d](cplx z) { return std::pow(z, d); };
            const cplx a = casimir_tensor_apply(hp.k1, hp.k2, hp.phi, [&](cplx z, cplx) { return g(z); }, x, hp.t);
            const cplx b = lambda_apply(hp, g, x);
            worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
        }
        // The same operator from the coproduct of the realizations on F1(x+t) F2(x).
        const StripFn F1 = [](cplx z) { return z * z * z - 0.3 * z + 1.0; };
        const StripFn F2 = [](cplx z) { return z * z + cplx(0.2, 1.0) * z; };
        const cplx a = coproduct_casimir_apply(hp.k1, hp.k2, hp.phi, F1, F2, x + hp.t, x);
        const cplx b = casimir_tensor_apply(hp.k1, hp.k2, hp.phi, [&](cplx z, cplx t) { return F1(z + t) * F2(z); }, x, hp.t);
        realized = std::max(realized, std::abs(a - b) / std::max(1.0, std::abs(b)));
    }
    out.push_back(make_check("tensor_casimir_equals_lambda", hahn_str(hp) + " 20 points", worst, 1e-12));
    out.push_back(make_check("tensor_casimir_from_realizations", hahn_str(hp) + " 20 points", realized, 1e-12));
    return out;
}

}  // namespace chf
