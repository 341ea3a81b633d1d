#include "chf/chtransform.hpp"

#include <cmath>

#include "chf/quadrature.hpp"

namespace chf {

cplx q_n(const HahnParams& p, int n, cplx rho) {
    p.validate();
    require(n >= 0, "q_n: degree must be non-negative");
    const cplx it = kI * p.t, ir = kI * rho;
    const double a = p.k2 - p.k1 + 0.5;
    // (-e^{-i phi}/(1-e^{-2i phi}))^{2k2+n} = (i/(2 sin phi))^{2k2+n}, taken on the branch
    // i^n (2 sin phi)^{-2k2-n}; the principal power would add a spurious e^{i pi k2}.
    const cplx power = std::pow(kI, double(n)) * std::pow(2.0 * std::sin(p.phi), -2.0 * p.k2 - n);
    double fact = 1.0;
    for (int j = 2; j <= n; ++j) fact *= j;
    const cplx pre = std::exp(p.t * (2.0 * p.phi - kPi)) * power * ((n % 2) ? -1.0 : 1.0) *
                     gamma(2.0 * p.k2) * pochhammer(a + ir, n) * pochhammer(a - ir, n) /
                     (fact * pochhammer(p.k2 - p.k1 + it + 1.0, n));
    const cplx z = 1.0 / (1.0 - std::exp(2.0 * kI * p.phi));
    return pre * hyp2F1_cut(n + a + ir, n + a - ir, n + p.k2 - p.k1 + it + 1.0, z);
}

CoeffPair q_pair(const HahnParams& p, int n) {
    return {[p, n](cplx r) { return std::conj(q_n(p, n, std::conj(r))); }, [p, n](cplx r) { return q_n(p, n, r); }};
}

SpaceM::SpaceM(const HahnParams& p, double rho_max, int panels) : p_(p), sd_(classify_spectrum(p)) {
    require(rho_max >= 30.0, "SpaceM: rho_max below the truncation floor 30");
    require(panels > 0, "SpaceM: need at least one panel");
    const GaussRule gl = gauss_legendre(20);
    // Geometric panels toward rho = 0 resolve the peak of W of width |k1+k2-1/2| or |k2-k1+1/2|.
    const double hw = rho_max / panels;
    std::vector<double> breaks{0.0};
    for (double b = hw * std::pow(0.5, 12); b < hw; b *= 2.0) breaks.push_back(b);
    for (int k = 1; k <= panels; ++k) breaks.push_back(hw * k);
    for (size_t k = 0; k + 1 < breaks.size(); ++k) {
        const double lo = breaks[k], w = breaks[k + 1] - lo;
        for (size_t j = 0; j < gl.nodes.size(); ++j) {
            const double r = lo + w * gl.nodes[j];
            const SpectralWeights sw = spectral_weights(p, r);
            nodes_.push_back(r);
            wts_.push_back(w * gl.weights[j] * sw.W);
            h_.push_back(sw.h);
        }
    }
    if (sd_.has_rho_c) {
        // 2 pi i Res W = 2 pi i Res W0 / (1 - |h|^2), both continued to rho_c
        const cplx wt = 1.0 / (discrete_inner_closed(p, DiscretePair::PhiPhi, -1) * one_minus_h2(p, sd_.rho_c));
        disc_.push_back({sd_.rho_c, wt.real(), true});
    }
    for (int n = 0; n <= sd_.n0; ++n) {
        const cplx wt = 0.5 / discrete_inner_closed(p, DiscretePair::PhiPhi, n);
        disc_.push_back({sd_.rho_n[size_t(n)], wt.real(), false});
    }
}

namespace {

// g^* K f with K = [[1, -h], [-conj h, 1]], where g is given through conj(g1), conj(g2).
cplx kernel_form(cplx cg1, cplx cg2, cplx f1, cplx f2, cplx h) {
    return cg1 * (f1 - h * f2) + cg2 * (f2 - std::conj(h) * f1);
}

}  // namespace

cplx inner_M(const CoeffPair& f, const CoeffPair& g, const SpaceM& M) {
    cplx acc = 0.0;
    const auto& r = M.nodes();
    for (size_t j = 0; j < r.size(); ++j) {
        const cplx cg1 = std::conj(g.f1(r[j])), cg2 = std::conj(g.f2(r[j]));
        acc += M.weights()[j] * kernel_form(cg1, cg2, f.f1(r[j]), f.f2(r[j]), M.h_values()[j]);
    }
    for (const auto& d : M.discrete()) {
        const cplx cg1 = std::conj(g.f1(d.rho)), cg2 = std::conj(g.f2(d.rho));
        const cplx f1 = f.f1(d.rho), f2 = f.f2(d.rho);
        acc += d.weight * (d.full_kernel ? kernel_form(cg1, cg2, f1, f2, h_function(M.params(), d.rho))
                                         : cg1 * f1 + cg2 * f2);
    }
    return acc;
}

std::vector<cplx> forward_F_batch(const std::vector<CoeffPair>& fs, const SpaceM& M, double x) {
    const HahnParams& p = M.params();
    std::vector<cplx> out(fs.size(), 0.0);
    const auto& r = M.nodes();
    // For real x and real or purely imaginary rho, conj(phi*_rho(x)) = phi_rho(x).
    for (size_t j = 0; j < r.size(); ++j) {
        const cplx ph = phi_rho(p, r[j], x), phs = std::conj(ph);
        for (size_t i = 0; i < fs.size(); ++i)
            out[i] += M.weights()[j] * kernel_form(ph, phs, fs[i].f1(r[j]), fs[i].f2(r[j]), M.h_values()[j]);
    }
    for (const auto& d : M.discrete()) {
        const cplx ph = phi_rho(p, d.rho, x), phs = phi_rho_star(p, d.rho, x);
        const cplx hd = d.full_kernel ? h_function(p, d.rho) : 0.0;
        for (size_t i = 0; i < fs.size(); ++i)
            out[i] += d.weight * kernel_form(ph, phs, fs[i].f1(d.rho), fs[i].f2(d.rho), hd);
    }
    return out;
}

cplx forward_F(const CoeffPair& f, const SpaceM& M, double x) { return forward_F_batch({f}, M, x)[0]; }

std::array<cplx, 2> inverse_G(const std::function<cplx(double)>& g, const HahnParams& p, cplx rho, int poly_degree,
                              double abs_tol) {
    p.validate();
    require(poly_degree >= 0, "inverse_G: growth degree must be non-negative");
    auto sqrt_w = [&](double x) {
        const double lw = (2.0 * x + p.t) * (2.0 * p.phi - kPi) + 2.0 * log_gamma(p.k1 + kI * (p.t + x)).real() +
                          2.0 * log_gamma(p.k2 + kI * x).real() - std::log(2.0 * kPi);
        return std::exp(0.5 * lw);
    };
    const double rate = kPi - std::abs(2.0 * p.phi - kPi);
    const double X = decay_cutoff(poly_degree + p.k1 + p.k2 + std::abs(rho.imag()) + 2.0, rate, 10.0);
    const auto g1 = integrate_line(
        [&](double x) { return g(x) * phi_rho_star_weighted(p, rho, x) * sqrt_w(x); }, X, abs_tol);
    const auto g2 = integrate_line([&](double x) { return g(x) * phi_rho_weighted(p, rho, x) * sqrt_w(x); }, X, abs_tol);
    return {g1.value, g2.value};
}

}  // namespace chf
