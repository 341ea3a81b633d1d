#pragma once

#include <functional>

#include "chf/numkernel.hpp"
#include "chf/quadrature.hpp"

namespace chf {

struct MPFunParams {
    cplx lambda;
    double eps;
    double phi;

    void validate() const;
    bool principal() const;  // lambda = -1/2 + i rho
};

// Meixner-Pollaczek function u_n(x; lambda, eps, phi), n in Z.
cplx mp_function(long n, const MPFunParams& p, cplx x);
// u_n^*(x) = conj(u_n(conj x))
cplx mp_function_star(long n, const MPFunParams& p, cplx x);

double jacobi_alpha(long n, const MPFunParams& p);
double jacobi_beta(long n, const MPFunParams& p);
// 2x sin(phi) u_n - (alpha_n u_{n+1} + beta_n u_n + alpha_{n-1} u_{n-1})
cplx mp_function_recurrence_residual(long n, const MPFunParams& p, cplx x);

cplx hilbert_w1(const MPFunParams& p, double x);
double hilbert_w0(const MPFunParams& p, double x);
// The unsimplified quotient of Gamma functions for w0.
double hilbert_w0_quotient(const MPFunParams& p, double x);

struct CoeffFn {
    std::function<cplx(double)> f1, f2;
};

// (1/2pi) int (g1,g2)^* [[1,-w1],[-w1^*,1]] (f1,f2) w0 dx over [-X, X]
cplx hilbert_inner(const CoeffFn& f, const CoeffFn& g, const MPFunParams& p, double X = 40.0, double abs_tol = 1e-11);

// Truncation point for <u_m, u_n> where rounding noise of the integrand reaches `noise`.
double mp_function_cutoff(long m, long n, const MPFunParams& p, double noise);

// <(u_m, u_m^*), (u_n, u_n^*)> in H.  Principal series: eigen-split of the
// kernel, X <= 0 means 40.  Otherwise X <= 0 selects mp_function_cutoff.
cplx mp_function_inner(long m, long n, const MPFunParams& p, double X = 0.0, double abs_tol = 1e-9);

}  // namespace chf
