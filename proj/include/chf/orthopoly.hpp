#pragma once

#include "chf/numkernel.hpp"
#include "chf/quadrature.hpp"

namespace chf {

struct MPParams {
    double lambda;
    double phi;
    void validate() const;
};

struct CDHParams {
    double a, b, c;
    void validate() const;
};

// Meixner-Pollaczek polynomial p_n^{(lambda)}(x; phi); zero for n < 0.
cplx mp_poly(long n, const MPParams& p, cplx x);
// Same polynomial from the three-term recurrence (independent route).
cplx mp_poly_recurrence(long n, const MPParams& p, cplx x);
// P_n = sqrt(n!/(2 lambda)_n) p_n
cplx mp_orthonormal(long n, const MPParams& p, cplx x);
double mp_weight(const MPParams& p, double x);
cplx mp_difference_residual(long n, const MPParams& p, cplx x);
// Integration cutoff for products of degree <= deg against the weight.
double mp_cutoff(const MPParams& p, int deg);

// Continuous dual Hahn s_n(y; a,b,c) and its orthonormal version S_n.
cplx cdh_poly(long n, const CDHParams& p, double y);
cplx cdh_orthonormal(long n, const CDHParams& p, double y);
// s_n from the three-term recurrence.
cplx cdh_poly_recurrence(long n, const CDHParams& p, double y);
// Orthogonality measure in the variable y; the continuous part is written in x = sqrt(y).
Measure cdh_measure(const CDHParams& p);

double laguerre(long n, double alpha, double x);

}  // namespace chf
