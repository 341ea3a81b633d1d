#include "chf/hahn.hpp"

#include <algorithm>
#include <cmath>

#include "chf/quadrature.hpp"

namespace chf {

namespace {

// Margin below which a 3F2(1) series is refused instead of being continued.
constexpr double kMargin = 0.05;

cplx lg_sum(std::initializer_list<cplx> num, std::initializer_list<cplx> den) {
    cplx s = 0.0;
    for (auto z : num) s += log_gamma(z);
    for (auto z : den) s -= log_gamma(z);
    return s;
}

// Gamma(a + i rho) Gamma(conj(a) - i rho), which is |Gamma(a + i rho)|^2 for real rho.
cplx lg_pair(cplx a, cplx rho) { return log_gamma(a + kI * rho) + log_gamma(std::conj(a) - kI * rho); }

double exp_tilt(const HahnParams& p) { return std::exp(-p.t * (2.0 * p.phi - kPi)); }

void check_margin(cplx s, const char* what) {
    if (s.real() < kMargin)
        fail(ErrorKind::Convergence, std::string(what) + ": 3F2(1) parameter excess too small for a convergent series");
}

}  // namespace

void HahnParams::validate() const {
    require(std::isfinite(k1) && k1 > 0.0, "HahnParams: k1 must be positive");
    require(std::isfinite(k2) && k2 > 0.0, "HahnParams: k2 must be positive");
    require(std::isfinite(t), "HahnParams: t must be finite");
    require(phi > 0.0 && phi < kPi, "HahnParams: phi must lie in (0, pi)");
}

StripFn star(StripFn f) {
    return [f = std::move(f)](cplx x) { return std::conj(f(std::conj(x))); };
}

cplx weight_w(const HahnParams& p, cplx x) {
    const cplx a = p.k1 + kI * p.t + kI * x;
    const cplx l = lg_sum({a, 2.0 * p.k1 - a, p.k2 + kI * x, p.k2 - kI * x}, {});
    return std::exp((2.0 * x + p.t) * (2.0 * p.phi - kPi) + l) / (2.0 * kPi);
}

cplx alpha_minus_w(const HahnParams& p, cplx x) {
    const cplx a = p.k1 + kI * p.t + kI * x;
    const cplx l = lg_sum({a + 1.0, 2.0 * p.k1 - a, p.k2 + 1.0 + kI * x, p.k2 - kI * x}, {});
    return -std::exp(-2.0 * kI * p.phi) * std::exp((2.0 * x + p.t) * (2.0 * p.phi - kPi) + l) / (2.0 * kPi);
}

cplx periodic_p(const HahnParams& p, cplx x) {
    return std::exp(kPi * x) * std::sin(kPi * (p.k1 - kI * p.t - kI * x)) / kPi;
}

cplx alpha_plus(const HahnParams& p, cplx x) {
    return -std::exp(2.0 * kI * p.phi) * (p.k2 - kI * x) * (p.k1 - kI * (p.t + x));
}

cplx alpha_minus(const HahnParams& p, cplx x) {
    return -std::exp(-2.0 * kI * p.phi) * (p.k2 + kI * x) * (p.k1 + kI * (p.t + x));
}

cplx beta_coeff(const HahnParams& p, cplx x) {
    return p.k1 * (1.0 - p.k1) + p.k2 * (1.0 - p.k2) - 2.0 * (p.t + x) * x;
}

// ---------------------------------------------------------------------------

namespace {

cplx phi_series(const HahnParams& p, cplx rho, cplx x) {
    const cplx s = p.k1 + kI * p.t + kI * x;
    check_margin(s, "phi_rho");
    const double d = p.k2 - p.k1 + 0.5;
    return hyp3F2_unit(p.k2 - kI * x, d + kI * rho, d - kI * rho, 2.0 * p.k2, p.k2 - p.k1 + kI * p.t + 1.0);
}

}  // namespace

cplx phi_rho(const HahnParams& p, cplx rho, cplx x) {
    p.validate();
    const cplx a = p.k1 + kI * x + kI * p.t;
    // p(x) Gamma(1 - k1 + it + ix) = e^{pi x} / Gamma(k1 - it - ix)
    const cplx pre = std::exp(-x * (2.0 * p.phi - kPi)) * rgamma(a) * rgamma(2.0 * p.k1 - a);
    return pre * phi_series(p, rho, x);
}

cplx phi_rho_weighted(const HahnParams& p, cplx rho, double x) {
    p.validate();
    const cplx a = p.k1 + kI * x + kI * p.t;
    const double tilt = 0.5 * p.t * (2.0 * p.phi - kPi);
    // -log Gamma(a) - log Gamma(conj a) + (log Gamma(a) + log Gamma(conj a))/2, with the pair real
    const double lw = -log_gamma(a).real() + log_gamma(p.k2 + kI * x).real() - 0.5 * std::log(2.0 * kPi);
    return std::exp(tilt + lw) * phi_series(p, rho, x);
}

cplx phi_rho_star_weighted(const HahnParams& p, cplx rho, double x) {
    return std::conj(phi_rho_weighted(p, std::conj(rho), x));
}

cplx phi_rho_periodic_form(const HahnParams& p, cplx rho, cplx x) {
    p.validate();
    const cplx a = p.k1 + kI * x + kI * p.t;
    const cplx pre = std::exp(-2.0 * p.phi * x) * periodic_p(p, x) * gamma(1.0 - p.k1 + kI * p.t + kI * x) * rgamma(a);
    return pre * phi_series(p, rho, x);
}

cplx phi_rho_star(const HahnParams& p, cplx rho, cplx x) {
    return std::conj(phi_rho(p, std::conj(rho), std::conj(x)));
}

cplx Phi_rho(const HahnParams& p, cplx rho, cplx x, PhiRoute route) {
    p.validate();
    const cplx ir = kI * rho, ix = kI * x, it = kI * p.t;
    const cplx margin_series = p.k1 + it + ix;
    const cplx margin_cont = 0.5 + ir + it;
    if (route == PhiRoute::Automatic) {
        if (margin_series.real() >= kMargin)
            route = PhiRoute::Series;
        else if (margin_cont.real() >= kMargin)
            route = PhiRoute::Continued;
        else
            fail(ErrorKind::Convergence, "Phi_rho: neither series representation converges here");
    }
    const cplx a = p.k1 + ix + it;
    // e^{-2 phi x} p(x) Gamma(1 - k1 + it + ix) / Gamma(k1 + ix + it)
    const cplx base = std::exp(-x * (2.0 * p.phi - kPi)) * rgamma(a) * rgamma(2.0 * p.k1 - a);
    if (route == PhiRoute::Series) {
        check_margin(margin_series, "Phi_rho");
        const cplx d = 1.5 - p.k1 + ix + ir;
        const cplx f = hyp3F2_unit(p.k2 - p.k1 + 0.5 + ir, 1.5 - p.k1 - p.k2 + ir, 0.5 - it + ir, 1.0 + 2.0 * ir, d);
        return base * gamma(1.0 - p.k2 + ix) * rgamma(d) * f;
    }
    check_margin(margin_cont, "Phi_rho");
    const cplx d1 = p.k1 + 0.5 + ix + ir, d2 = 1.5 - p.k1 + ir + ix;
    const cplx f = hyp3F2_unit(0.5 - it + ir, 1.0 - p.k2 + ix, p.k2 + ix, d1, d2);
    const cplx pre = gamma(1.0 - p.k2 + ix) * gamma(1.0 + 2.0 * ir) * rgamma(0.5 + it + ir) * rgamma(d1) * rgamma(d2);
    // This form has no 1/Gamma(k1+ix+it): only e^{pi x}/Gamma(k1-it-ix) survives from p(x) Gamma(1-k1+it+ix).
    return std::exp(-x * (2.0 * p.phi - kPi)) * rgamma(2.0 * p.k1 - a) * pre * f;
}

cplx Phi_rho_star(const HahnParams& p, cplx rho, cplx x) {
    return std::conj(Phi_rho(p, std::conj(rho), std::conj(x)));
}

cplx c_function(const HahnParams& p, cplx rho) {
    p.validate();
    const cplx ir = kI * rho, it = kI * p.t;
    return gamma(2.0 * p.k2) * gamma(p.k2 - p.k1 + it + 1.0) * gamma(-2.0 * ir) * rgamma(p.k1 + p.k2 - 0.5 - ir) *
           rgamma(0.5 + it - ir) * rgamma(p.k2 - p.k1 + 0.5 - ir);
}

cplx psi_rho(const HahnParams& p, cplx rho, cplx x) {
    p.validate();
    const cplx ir = kI * rho, ix = kI * x, it = kI * p.t;
    check_margin(p.k1 + ix + it, "psi_rho");
    const cplx pre = std::exp(-x * (2.0 * p.phi - kPi)) * gamma(0.5 - it - ir) * gamma(0.5 - it + ir) *
                     gamma(2.0 * p.k2) * gamma(p.k2 - p.k1 + it + 1.0) * rgamma(p.k1 + ix + it) * rgamma(p.k2 - ix) *
                     rgamma(p.k1 + p.k2 - it) * rgamma(p.k1 - p.k2 - it + 1.0);
    const cplx f = hyp3F2_unit(0.5 - it + ir, 0.5 - it - ir, p.k1 - ix - it, p.k1 - p.k2 - it + 1.0, p.k1 + p.k2 - it);
    return pre * f;
}

// ---------------------------------------------------------------------------
// Spectral weights.

cplx W0_analytic(const HahnParams& p, cplx rho) {
    const cplx it = kI * p.t;
    const cplx l = lg_pair(p.k2 - p.k1 + 0.5, rho) + lg_pair(p.k1 + p.k2 - 0.5, rho) + lg_pair(0.5 + it, rho) +
                   lg_pair(0.5 - it, rho) - 2.0 * log_gamma(2.0 * p.k2) - lg_pair(p.k2 - p.k1 + 1.0 + it, 0.0) -
                   log_gamma(2.0 * kI * rho) - log_gamma(-2.0 * kI * rho);
    return exp_tilt(p) * std::exp(l) / (2.0 * kPi);
}

cplx W1_analytic(const HahnParams& p, cplx rho) {
    const cplx it = kI * p.t, ir = kI * rho;
    const cplx l = log_gamma(p.k1 - p.k2 + it) + log_gamma(0.5 - it - ir) + log_gamma(0.5 - it + ir) -
                   log_gamma(p.k2 - p.k1 - it + 1.0) - 2.0 * log_gamma(2.0 * p.k2) +
                   lg_pair(p.k2 - p.k1 + 0.5, rho) + lg_pair(p.k1 + p.k2 - 0.5, rho) - log_gamma(2.0 * ir) -
                   log_gamma(-2.0 * ir);
    return exp_tilt(p) * std::exp(l) / (2.0 * kPi);
}

cplx W_analytic(const HahnParams& p, cplx rho) {
    const cplx it = kI * p.t;
    const cplx l = 2.0 * lg_pair(p.k2 - p.k1 + 0.5, rho) + lg_pair(p.k1 - p.k2 + 0.5, rho) +
                   lg_pair(p.k1 + p.k2 - 0.5, rho) - 2.0 * log_gamma(2.0 * p.k2) -
                   lg_pair(p.k2 - p.k1 + 1.0 + it, 0.0) - log_gamma(2.0 * kI * rho) - log_gamma(-2.0 * kI * rho);
    return exp_tilt(p) * std::exp(l) / (2.0 * kPi);
}

cplx h_function(const HahnParams& p, cplx rho) {
    const cplx it = kI * p.t, ir = kI * rho;
    return std::exp(lg_sum({0.5 + it + ir, 0.5 + it - ir}, {p.k1 - p.k2 + it, p.k2 - p.k1 + it + 1.0}));
}

cplx one_minus_h2(const HahnParams& p, cplx rho) {
    const cplx it = kI * p.t;
    return std::exp(lg_pair(0.5 + it, rho) + lg_pair(0.5 - it, rho) - lg_pair(p.k1 - p.k2 + 0.5, rho) -
                    lg_pair(p.k2 - p.k1 + 0.5, rho));
}

SpectralWeights spectral_weights(const HahnParams& p, double rho) {
    p.validate();
    require(rho >= 0.0, "spectral_weights: rho must be non-negative");
    SpectralWeights sw{};
    sw.h = h_function(p, rho);
    if (rho == 0.0) {
        // 1/|Gamma(2 i rho)|^2 vanishes at rho = 0.
        sw.W0 = 0.0;
        sw.W1 = 0.0;
        sw.W2 = 0.0;
        sw.W = 0.0;
        return sw;
    }
    const cplx it = kI * p.t;
    const double tilt = exp_tilt(p) / (2.0 * kPi);
    const cplx r = kI * rho;
    auto lgr = [](cplx z) { return log_gamma(z).real(); };
    const double common = 2.0 * (lgr(p.k1 + p.k2 - 0.5 + r) - lgr(2.0 * p.k2) - lgr(2.0 * r));
    sw.W0 = tilt * std::exp(common + 2.0 * (lgr(p.k2 - p.k1 + 0.5 + r) + lgr(0.5 + it + r) + lgr(0.5 - it + r) -
                                             lgr(p.k2 - p.k1 + it + 1.0)));
    sw.W1 = tilt * std::exp(log_gamma(p.k1 - p.k2 + it) + log_gamma(0.5 - it - r) + log_gamma(0.5 - it + r) -
                            log_gamma(p.k2 - p.k1 - it + 1.0) + common + 2.0 * lgr(p.k2 - p.k1 + 0.5 + r));
    sw.W2 = tilt * std::exp(common + 2.0 * (lgr(p.k1 - p.k2 + 0.5 + r) + lgr(p.k2 - p.k1 + 0.5 + r) -
                                             lgr(p.k2 - p.k1 + it + 1.0)));
    sw.W = tilt * std::exp(common + 2.0 * (2.0 * lgr(p.k2 - p.k1 + 0.5 + r) + lgr(p.k1 - p.k2 + 0.5 + r) -
                                            lgr(p.k2 - p.k1 + it + 1.0)));
    return sw;
}

// ---------------------------------------------------------------------------

cplx lambda_apply(const HahnParams& p, const StripFn& g, cplx x) {
    return alpha_plus(p, x) * g(x + kI) + beta_coeff(p, x) * g(x) + alpha_minus(p, x) * g(x - kI);
}

cplx wronskian(const HahnParams& p, const StripFn& f, const StripFn& g, double y) {
    const auto& gl = gauss_legendre_64();
    const StripFn gs = star(g);
    cplx acc = 0.0;
    for (size_t j = 0; j < gl.nodes.size(); ++j) {
        const cplx x = y + kI * gl.nodes[j];
        const cplx v = (f(x) * gs(x - kI) - f(x - kI) * gs(x)) * alpha_minus_w(p, x);
        acc += gl.weights[j] * v;
    }
    return kI * acc;
}

cplx truncated_inner_w(const HahnParams& p, const StripFn& f, const StripFn& g, double M, double N, double abs_tol) {
    if (M == 0.0 && N == 0.0) return 0.0;
    QuadOptions opt;
    opt.abs_tol = abs_tol;
    opt.initial_panels = std::max(16, int(2.0 * (M + N)));
    return integrate([&](double x) { return f(x) * std::conj(g(x)) * weight_w(p, x).real(); }, -M, N, opt).value;
}

// ---------------------------------------------------------------------------
// Discrete spectrum.

SpectralData classify_spectrum(const HahnParams& p) {
    p.validate();
    const double d = p.k2 - p.k1 + 0.5, s = p.k1 + p.k2 - 0.5;
    if (std::abs(d) < 1e-12 || std::abs(s) < 1e-12)
        fail(ErrorKind::Domain, "classify_spectrum: boundary parameters k2-k1+1/2 = 0 or k1+k2-1/2 = 0");
    SpectralData sd;
    if (s < 0.0) {
        sd.kind = SpectralCase::ComplementaryPoint;
        sd.has_rho_c = true;
        sd.rho_c = kI * s;
    } else if (d < 0.0) {
        sd.kind = SpectralCase::DiscreteSeriesPoints;
        for (int n = 0; d + n < 0.0; ++n) {
            sd.rho_n.push_back(kI * (d + n));
            sd.n0 = n;
        }
    }
    return sd;
}

namespace {

cplx discrete_point(const HahnParams& p, int n) {
    const SpectralData sd = classify_spectrum(p);
    if (n < 0) {
        if (!sd.has_rho_c) fail(ErrorKind::Domain, "discrete point rho_c is absent for these parameters");
        return sd.rho_c;
    }
    if (n > sd.n0) fail(ErrorKind::Domain, "discrete point rho_n is absent for these parameters");
    return sd.rho_n[size_t(n)];
}

}  // namespace

cplx discrete_inner_closed(const HahnParams& p, DiscretePair which, int n) {
    discrete_point(p, n);
    const double k1 = p.k1, k2 = p.k2;
    const cplx it = kI * p.t;
    const double tilt = std::exp(2.0 * p.t * (p.phi - kPi / 2));
    if (n < 0) {
        const cplx g = tilt * gamma(2.0 * k2) * gamma(1.0 - 2.0 * k1 - 2.0 * k2) * rgamma(1.0 - 2.0 * k1);
        if (which == DiscretePair::PhiPhi)
            return g * std::norm(gamma(k2 - k1 + it + 1.0) * rgamma(k1 + k2 + it) * rgamma(1.0 - k1 - k2 + it));
        return g * gamma(k2 - k1 - it + 1.0) * rgamma(k1 + k2 - it) * rgamma(1.0 - k1 - k2 - it) * rgamma(k1 - k2 + it);
    }
    const cplx C = tilt * gamma(2.0 * k2) * gamma(2.0 * k1 - 2.0 * k2 - 1.0) * rgamma(k1 - k2 + it) *
                   rgamma(k1 - k2 - it) * rgamma(2.0 * k1 - 1.0);
    double fact = 1.0;
    for (int j = 2; j <= n; ++j) fact *= j;
    const cplx core = fact * pochhammer(2.0 * k2 - 2.0 * k1 + n + 1.0, n) * pochhammer(2.0 - 2.0 * k1, n) /
                      (pochhammer(2.0 * k2, n) * pochhammer(2.0 * k2 - 2.0 * k1 + 2.0, 2 * n));
    if (which == DiscretePair::PhiPhi) return C * core;
    const double sign = (n % 2) ? -1.0 : 1.0;
    return C * core * sign * pochhammer(k2 - k1 + it + 1.0, n) / pochhammer(k2 - k1 - it + 1.0, n);
}

double residue_radius(const HahnParams& p, cplx rho0) {
    const cplx it = kI * p.t;
    const cplx fam[] = {p.k2 - p.k1 + 0.5, p.k1 + p.k2 - 0.5, 0.5 + it, 0.5 - it};
    double dmin = 1e300;
    for (cplx a : fam)
        for (int m = 0; m <= 40; ++m)
            for (double sgn : {1.0, -1.0}) {
                const cplx pole = sgn * kI * (a + double(m));
                const double d = std::abs(pole - rho0);
                if (d > 1e-9) dmin = std::min(dmin, d);
            }
    return std::min(0.1, 0.5 * dmin);
}

cplx numerical_residue(const std::function<cplx(cplx)>& f, cplx z0, double r) {
    constexpr int K = 64;
    cplx acc = 0.0;
    for (int j = 0; j < K; ++j) {
        const cplx e = std::exp(kI * (2.0 * kPi * (j + 0.5) / K));
        acc += f(z0 + r * e) * e;
    }
    return r * acc / double(K);
}

cplx discrete_inner_residue(const HahnParams& p, DiscretePair which, int n) {
    const cplx rho0 = discrete_point(p, n);
    const double r = residue_radius(p, rho0);
    const cplx res = which == DiscretePair::PhiPhi
                         ? numerical_residue([&](cplx z) { return W0_analytic(p, z); }, rho0, r)
                         : numerical_residue([&](cplx z) { return W1_analytic(p, z); }, rho0, r);
    return 1.0 / (2.0 * kPi * kI * res);
}

}  // namespace chf
