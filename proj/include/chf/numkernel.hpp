#pragma once

#include <complex>
#include <vector>

#include "chf/errors.hpp"

namespace chf {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr cplx kI{0.0, 1.0};

struct SeriesControl {
    double rel_tol = 1e-13;
    long max_terms = 100000;
    long min_terms = 8;

    void validate() const;
};

// Principal branch for Re z >= 1/2; for Re z < 1/2 the reflection formula is
// continued analytically from the upper (or lower) half plane, so exp() of the
// result is always Gamma(z).
cplx log_gamma(cplx z);
// Qualify as chf::gamma under `using namespace chf`: glibc's ::gamma(double) is log|Gamma|.
cplx gamma(cplx z);
// 1/Gamma(z), entire; exactly zero at the poles of Gamma.
cplx rgamma(cplx z);
cplx pochhammer(cplx a, long n);

// True when z lies within tol of {0, -1, -2, ...}.
bool is_nonpositive_integer(cplx z, double tol = 1e-12);

// Generalized hypergeometric series.  p = q+1 at z = 1 is routed through
// unit_argument_sum (with Thomae selection for 3F2).
cplx hyp_pFq(const std::vector<cplx>& numer, const std::vector<cplx>& denom, cplx z,
             const SeriesControl& ctl = {});

// p = q+1 series at z = 1 summed directly and completed by the asymptotic
// expansion of its tail in inverse powers of n (Hurwitz zeta sums).
cplx unit_argument_sum(const std::vector<cplx>& numer, const std::vector<cplx>& denom,
                       const SeriesControl& ctl = {});

// 3F2(a1,a2,a3; b1,b2; 1).  Among the Thomae-equivalent forms the one with the
// smallest peak term is summed, which avoids cancellation when a parameter is
// large.
cplx hyp3F2_unit(cplx a1, cplx a2, cplx a3, cplx b1, cplx b2, const SeriesControl& ctl = {});

// Analytic continuation of 2F1 to C \ [1, inf).
cplx hyp2F1_cut(cplx a, cplx b, cplx c, cplx z);
// 2F1(a,b;c;z)/Gamma(c), analytic in c.
cplx hyp2F1_regularized(cplx a, cplx b, cplx c, cplx z);

cplx hyp1F1(cplx a, cplx b, cplx z);

// U(a;b;z) = Gamma(1-b)/Gamma(1+a-b) 1F1(a;b;z) + Gamma(b-1)/Gamma(a) z^(1-b) 1F1(1+a-b;2-b;z)
cplx confluent_U(cplx a, cplx b, double z);

// Hurwitz zeta(s, N) for Re s > 1 and N well beyond |s|, by Euler-Maclaurin.
cplx hurwitz_zeta_tail(cplx s, double N);

// Bernoulli numbers B_0..B_n (B_1 = -1/2).
const std::vector<double>& bernoulli_numbers(int n);
cplx bernoulli_poly(int n, cplx x);

}  // namespace chf
