#include "chf/mpfun.hpp"

#include <cmath>

namespace chf {

void MPFunParams::validate() const {
    require(phi > 0.0 && phi < kPi, "MPFunParams: phi must lie in (0, pi)");
    require(eps >= 0.0 && eps < 1.0, "MPFunParams: eps must lie in [0, 1)");
    if (principal()) {
        require(lambda.imag() >= 0.0, "MPFunParams: take rho >= 0 for lambda = -1/2 + i rho");
        require(!(lambda.imag() == 0.0 && eps == 0.5), "MPFunParams: (rho, eps) = (0, 1/2) is excluded");
        return;
    }
    require(lambda.imag() == 0.0, "MPFunParams: lambda must be real or -1/2 + i rho");
    const double l = lambda.real();
    const bool first = -0.5 < l && l < -eps;
    const bool second = -0.5 < l && l < eps - 1.0;
    require(first || second, "MPFunParams: real lambda outside the complementary-series range");
}

bool MPFunParams::principal() const { return std::abs(lambda.real() + 0.5) < 1e-14; }

namespace {

cplx mp_argument(const MPFunParams& p) { return 1.0 / (1.0 - std::exp(-2.0 * kI * p.phi)); }

cplx mp_prefactor(long n, const MPFunParams& p) {
    const double dn = double(n);
    const cplx half_log = 0.5 * (log_gamma(dn + 1.0 + p.eps + p.lambda) + log_gamma(dn + p.eps - p.lambda));
    return std::pow(2.0 * kI * std::sin(p.phi), -dn) * std::exp(half_log);
}

}  // namespace

cplx mp_function(long n, const MPFunParams& p, cplx x) {
    const double dn = double(n);
    const cplx a = dn + 1.0 + p.eps + p.lambda, b = dn + p.eps - p.lambda, c = dn + 1.0 + p.eps - kI * x;
    return mp_prefactor(n, p) * hyp2F1_regularized(a, b, c, mp_argument(p));
}

cplx mp_function_star(long n, const MPFunParams& p, cplx x) { return std::conj(mp_function(n, p, std::conj(x))); }

double jacobi_alpha(long n, const MPFunParams& p) {
    const cplx v = (double(n) + p.eps + p.lambda + 1.0) * (double(n) + p.eps - p.lambda);
    return std::sqrt(std::max(0.0, v.real()));
}

double jacobi_beta(long n, const MPFunParams& p) { return 2.0 * (double(n) + p.eps) * std::cos(p.phi); }

cplx mp_function_recurrence_residual(long n, const MPFunParams& p, cplx x) {
    return 2.0 * x * std::sin(p.phi) * mp_function(n, p, x) -
           (jacobi_alpha(n, p) * mp_function(n + 1, p, x) + jacobi_beta(n, p) * mp_function(n, p, x) +
            jacobi_alpha(n - 1, p) * mp_function(n - 1, p, x));
}

cplx hilbert_w1(const MPFunParams& p, double x) {
    const cplx ix(0.0, x);
    // 1/(Gamma(ix-eps) Gamma(1+eps-ix)) = sin(pi(ix-eps))/pi
    return std::exp(log_gamma(p.lambda + 1.0 + ix) + log_gamma(-p.lambda + ix)) * std::sin(kPi * (ix - p.eps)) / kPi;
}

double hilbert_w0(const MPFunParams& p, double x) {
    return std::pow(2.0 * std::sin(p.phi), -2.0 * p.eps) * std::exp(2.0 * x * (p.phi - kPi / 2));
}

double hilbert_w0_quotient(const MPFunParams& p, double x) {
    const cplx ix(0.0, x);
    const cplx l = p.lambda;
    const double A = std::norm(gamma(l + 1.0 - ix) * gamma(-l - ix));
    const double B = std::norm(gamma(ix - p.eps) * gamma(1.0 + p.eps - ix));
    const cplx den = gamma(-p.eps - l) * gamma(1.0 + l - p.eps) * gamma(1.0 + l + p.eps) * gamma(p.eps - l);
    return (A * B / (B - A) * hilbert_w0(p, x) / den).real();
}

cplx hilbert_inner(const CoeffFn& f, const CoeffFn& g, const MPFunParams& p, double X, double abs_tol) {
    auto integrand = [&](double x) {
        const cplx f1 = f.f1(x), f2 = f.f2(x), g1 = g.f1(x), g2 = g.f2(x);
        const cplx w1 = hilbert_w1(p, x);
        return (std::conj(g1) * (f1 - w1 * f2) + std::conj(g2) * (f2 - std::conj(w1) * f1)) * hilbert_w0(p, x);
    };
    QuadOptions opt;
    opt.abs_tol = abs_tol;
    opt.initial_panels = int(4 * X);
    return integrate(integrand, -X, X, opt).value / (2.0 * kPi);
}

double mp_function_cutoff(long m, long n, const MPFunParams& p, double noise) {
    // Beyond this point the O(eps |u_m||u_n| w0) rounding noise of the
    // matrix-weighted integrand exceeds `noise`; the true integrand decays
    // like e^{-pi|x|} there, so nothing of consequence is discarded.
    double X = 2.0;
    for (; X < 40.0; X += 0.25) {
        double worst = 0.0;
        for (double x : {-X, X}) {
            const double mag = std::abs(mp_function(m, p, x)) * std::abs(mp_function(n, p, x)) * hilbert_w0(p, x);
            worst = std::max(worst, 4.0 * 2.2e-16 * mag);
        }
        if (worst > noise) break;
    }
    return X;
}

cplx mp_function_inner(long m, long n, const MPFunParams& p, double X, double abs_tol) {
    p.validate();
    if (!p.principal()) {
        CoeffFn f{[&](double x) { return mp_function(m, p, x); }, [&](double x) { return mp_function_star(m, p, x); }};
        CoeffFn g{[&](double x) { return mp_function(n, p, x); }, [&](double x) { return mp_function_star(n, p, x); }};
        if (X <= 0.0) X = mp_function_cutoff(m, n, p, 0.1 * abs_tol);
        return hilbert_inner(f, g, p, X, abs_tol);
    }
    if (X <= 0.0) X = 40.0;
    // The kernel [[1,-w1],[-conj w1,1]] has eigenvectors (1, +-e^{-i theta})/sqrt2,
    // theta = arg w1, with eigenvalues 1 -+ |w1|.  For large |x|, (u, conj u)
    // lies almost on the small-eigenvalue direction, so both the eigenvalue and
    // the transverse component are formed without subtraction:
    //   1 - |w1|^2 = (cosh^2 pi rho - sin^2 pi eps) / (sinh^2 pi x + cosh^2 pi rho)
    //   u - e^{i theta} conj u = D + e^{i theta} conj u (1/|w1| - 1),
    // where u = conj(u)/conj(w1) + D and D is the decaying half of the
    // connection formula from z to 1 - z = conj z.
    const double rho = p.lambda.imag();
    const cplx zb = std::conj(mp_argument(p));
    auto decaying = [&](long k, double x) {
        const double dk = double(k);
        const cplx a = dk + 1.0 + p.eps + p.lambda, b = dk + p.eps - p.lambda, c = dk + 1.0 + p.eps - kI * x;
        const cplx T2 = std::pow(zb, c - a - b) * std::exp(log_gamma(a + b - c) - log_gamma(a) - log_gamma(b)) *
                        hyp2F1_cut(c - a, c - b, c - a - b + 1.0, zb);
        return mp_prefactor(k, p) * T2;
    };
    auto integrand = [&](double x) -> cplx {
        const double sh = std::sinh(kPi * x), ch = std::cosh(kPi * rho), se = std::sin(kPi * p.eps);
        const double den = sh * sh + ch * ch;
        const double mod2 = (sh * sh + se * se) / den;
        const double mod = std::sqrt(mod2);
        const double small = (ch * ch - se * se) / den / (1.0 + mod);  // 1 - |w1|
        const cplx ph = std::exp(kI * std::arg(hilbert_w1(p, x)));
        auto comps = [&](long k, cplx& al, cplx& be) {
            const cplx u = mp_function(k, p, x), ub = std::conj(u);
            al = (u + ph * ub) / std::sqrt(2.0);
            be = (decaying(k, x) + ph * ub * (small / mod)) / std::sqrt(2.0);
        };
        cplx am, bm, an, bn;
        comps(m, am, bm);
        comps(n, an, bn);
        return (small * std::conj(an) * am + (1.0 + mod) * std::conj(bn) * bm) * hilbert_w0(p, x);
    };
    QuadOptions opt;
    opt.abs_tol = abs_tol;
    opt.initial_panels = int(4 * X);
    return integrate(integrand, -X, X, opt).value / (2.0 * kPi);
}

}  // namespace chf
