#pragma once

#include <functional>
#include <vector>

#include "chf/numkernel.hpp"

namespace chf {

// Parameters (k1, k2, t, phi) of the weight w, the operator Lambda and the transform.
struct HahnParams {
    double k1;
    double k2;
    double t;
    double phi;
    void validate() const;
};

// Functions analytic in a strip around the real axis.
using StripFn = std::function<cplx(cplx)>;

// f*(x) = conj(f(conj x))
StripFn star(StripFn f);

cplx weight_w(const HahnParams& p, cplx x);
// alpha_-(x) w(x) with the Gamma(k2+ix) pole absorbed, so it is finite on [y, y+i].
cplx alpha_minus_w(const HahnParams& p, cplx x);
cplx periodic_p(const HahnParams& p, cplx x);

cplx alpha_plus(const HahnParams& p, cplx x);
cplx alpha_minus(const HahnParams& p, cplx x);
cplx beta_coeff(const HahnParams& p, cplx x);

// Continuous Hahn function.  The production route writes p(x) Gamma(1-k1+it+ix)
// through the reflection formula, giving an entire prefactor; the literal
// periodic-factor form is kept for cross-checks.
cplx phi_rho(const HahnParams& p, cplx rho, cplx x);
cplx phi_rho_periodic_form(const HahnParams& p, cplx rho, cplx x);
cplx phi_rho_star(const HahnParams& p, cplx rho, cplx x);
// phi_rho(x) sqrt(w(x)) and phi*_rho(x) sqrt(w(x)) for real x, evaluated in the log domain so
// that the e^{pi|x|} growth of phi and the decay of w never meet in floating point.
cplx phi_rho_weighted(const HahnParams& p, cplx rho, double x);
cplx phi_rho_star_weighted(const HahnParams& p, cplx rho, double x);

enum class PhiRoute { Automatic, Series, Continued };
// Second eigenfunction.  Series: 3F2 needing Re(k1+it+ix) > 0; Continued: the
// contiguous form needing Re(1/2+i rho+it) > 0.  Automatic picks whichever has margin.
cplx Phi_rho(const HahnParams& p, cplx rho, cplx x, PhiRoute route = PhiRoute::Automatic);
cplx Phi_rho_star(const HahnParams& p, cplx rho, cplx x);

cplx c_function(const HahnParams& p, cplx rho);
cplx psi_rho(const HahnParams& p, cplx rho, cplx x);

struct SpectralWeights {
    double W0;
    cplx W1;
    double W2;
    cplx h;
    double W;
};
// Values on the continuous spectrum rho >= 0.
SpectralWeights spectral_weights(const HahnParams& p, double rho);
// Meromorphic continuations in rho (|Gamma(a+i rho)|^2 -> Gamma(a+i rho) Gamma(a-i rho)).
cplx W0_analytic(const HahnParams& p, cplx rho);
cplx W1_analytic(const HahnParams& p, cplx rho);
cplx W_analytic(const HahnParams& p, cplx rho);
cplx h_function(const HahnParams& p, cplx rho);
// 1 - |h|^2 from its Gamma-quotient form, continued in rho.
cplx one_minus_h2(const HahnParams& p, cplx rho);

cplx lambda_apply(const HahnParams& p, const StripFn& g, cplx x);
// [f,g](y) as i * int_0^1 of the Wronskian integrand at y + is (64-point Gauss-Legendre).
cplx wronskian(const HahnParams& p, const StripFn& f, const StripFn& g, double y);
// <f, g>_{M,N} = int_{-M}^{N} f conj(g) w dx
cplx truncated_inner_w(const HahnParams& p, const StripFn& f, const StripFn& g, double M, double N,
                       double abs_tol = 1e-13);

enum class SpectralCase { ContinuousOnly, ComplementaryPoint, DiscreteSeriesPoints };

struct SpectralData {
    SpectralCase kind = SpectralCase::ContinuousOnly;
    bool has_rho_c = false;
    cplx rho_c = 0.0;
    std::vector<cplx> rho_n;
    int n0 = -1;
};
SpectralData classify_spectrum(const HahnParams& p);

enum class DiscretePair { PhiPhi, PhiStarPhi };
// Closed forms of <phi_{rho_n}, phi_{rho_n}> and <phi*_{rho_n}, phi_{rho_n}>
// (index n >= 0), or at rho_c when n < 0.  Off-diagonal values vanish.
cplx discrete_inner_closed(const HahnParams& p, DiscretePair which, int n);
// Same quantity as (2 pi i Res W0)^{-1} resp. (2 pi i Res W1)^{-1}, residue taken numerically.
cplx discrete_inner_residue(const HahnParams& p, DiscretePair which, int n);

// Residue of f at z0 from a 64-point trapezoid rule on |z - z0| = r.
cplx numerical_residue(const std::function<cplx(cplx)>& f, cplx z0, double r);
// Circle radius min(0.1, half the distance to the nearest other pole of W0/W1).
double residue_radius(const HahnParams& p, cplx rho0);

}  // namespace chf
