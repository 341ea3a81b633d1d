#include "chf/orthopoly.hpp"

#include <algorithm>
#include <cmath>

namespace chf {

void MPParams::validate() const {
    require(lambda > 0.0, "MPParams: lambda must be positive");
    require(phi > 0.0 && phi < kPi, "MPParams: phi must lie in (0, pi)");
}

void CDHParams::validate() const {
    require(a + b > 0.0 && a + c > 0.0 && b + c > 0.0, "CDHParams: need a+b, a+c, b+c > 0");
}

cplx mp_poly(long n, const MPParams& p, cplx x) {
    if (n < 0) return 0.0;
    // Expanding the 2F1 in powers of 1-e^{-2i phi} cancels badly once 2 sin(phi) > 1; the
    // equivalent convolution sum_k (lambda-ix)_k (lambda+ix)_{n-k} / (k! (n-k)!) e^{i(2k-n)phi}
    // has unimodular phases instead.
    std::vector<cplx> a(size_t(n) + 1), b(size_t(n) + 1);
    a[0] = b[0] = 1.0;
    for (long k = 0; k < n; ++k) {
        a[size_t(k) + 1] = a[size_t(k)] * (p.lambda - kI * x + double(k)) / double(k + 1);
        b[size_t(k) + 1] = b[size_t(k)] * (p.lambda + kI * x + double(k)) / double(k + 1);
    }
    cplx sum = 0.0;
    for (long k = 0; k <= n; ++k) sum += a[size_t(k)] * b[size_t(n - k)] * std::exp(kI * (double(2 * k - n) * p.phi));
    return sum;
}

cplx mp_poly_recurrence(long n, const MPParams& p, cplx x) {
    if (n < 0) return 0.0;
    // (n+1) p_{n+1} = 2[x sin phi + (n+lambda) cos phi] p_n - (n+2 lambda-1) p_{n-1}
    cplx prev = 0.0, cur = 1.0;
    for (long k = 0; k < n; ++k) {
        const double dk = double(k);
        const cplx next = (2.0 * (x * std::sin(p.phi) + (dk + p.lambda) * std::cos(p.phi)) * cur -
                           (dk + 2.0 * p.lambda - 1.0) * prev) / (dk + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

cplx mp_orthonormal(long n, const MPParams& p, cplx x) {
    if (n < 0) return 0.0;
    const double lognorm = std::lgamma(double(n) + 1.0) + std::lgamma(2.0 * p.lambda) - std::lgamma(2.0 * p.lambda + double(n));
    return std::exp(0.5 * lognorm) * mp_poly(n, p, x);
}

double mp_weight(const MPParams& p, double x) {
    const double lg = 2.0 * log_gamma(cplx(p.lambda, x)).real();
    return std::exp(2.0 * p.lambda * std::log(2.0 * std::sin(p.phi)) + (2.0 * p.phi - kPi) * x + lg -
                    std::lgamma(2.0 * p.lambda)) / (2.0 * kPi);
}

cplx mp_difference_residual(long n, const MPParams& p, cplx x) {
    const double lam = p.lambda, ph = p.phi;
    const cplx e = std::exp(kI * ph);
    return e * (lam - kI * x) * mp_orthonormal(n, p, x + kI) +
           2.0 * kI * (x * std::cos(ph) - (double(n) + lam) * std::sin(ph)) * mp_orthonormal(n, p, x) -
           (lam + kI * x) / e * mp_orthonormal(n, p, x - kI);
}

double mp_cutoff(const MPParams& p, int deg) {
    // |Gamma(lambda+ix)|^2 ~ |x|^{2 lambda-1} e^{-pi|x|}, tilted by e^{(2phi-pi)x}
    const double rate = 2.0 * std::min(p.phi, kPi - p.phi);
    return decay_cutoff(2.0 * p.lambda - 1.0 + 2.0 * deg, rate);
}

cplx cdh_poly(long n, const CDHParams& p, double y) {
    if (n < 0) return 0.0;
    const cplx x = std::sqrt(cplx(y));
    const cplx pre = pochhammer(p.a + p.b, n) * pochhammer(p.a + p.c, n);
    return pre * hyp_pFq({cplx(-double(n)), p.a + kI * x, p.a - kI * x}, {cplx(p.a + p.b), cplx(p.a + p.c)}, 1.0);
}

cplx cdh_poly_recurrence(long n, const CDHParams& p, double y) {
    if (n < 0) return 0.0;
    // -(a^2+y) s_n = s_{n+1} - (A_n + C_n) s_n + A_{n-1}... in monic-free form:
    // s_{n+1} = (A_n + C_n - a^2 - y) s_n - C_n A_{n-1} s_{n-1},
    // with A_n = (n+a+b)(n+a+c), C_n = n(n+b+c-1).
    const double a = p.a, b = p.b, c = p.c;
    cplx prev = 0.0, cur = 1.0;
    for (long k = 0; k < n; ++k) {
        const double dk = double(k);
        const double A = (dk + a + b) * (dk + a + c), C = dk * (dk + b + c - 1.0);
        const double Aprev = (dk - 1.0 + a + b) * (dk - 1.0 + a + c);
        const cplx next = (A + C - a * a - y) * cur - C * Aprev * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

cplx cdh_orthonormal(long n, const CDHParams& p, double y) {
    if (n < 0) return 0.0;
    const double lognorm = std::lgamma(double(n) + 1.0) + std::lgamma(p.a + p.b + n) - std::lgamma(p.a + p.b) +
                           std::lgamma(p.a + p.c + n) - std::lgamma(p.a + p.c) + std::lgamma(p.b + p.c + n) -
                           std::lgamma(p.b + p.c);
    const double sign = (n % 2) ? -1.0 : 1.0;
    return sign * std::exp(-0.5 * lognorm) * cdh_poly(n, p, y);
}

Measure cdh_measure(const CDHParams& params) {
    params.validate();
    double v[3] = {params.a, params.b, params.c};
    std::sort(v, v + 3);
    const double a = v[0], b = v[1], c = v[2];
    if (a < 0.0) {
        const double twice = 2.0 * a;
        require(std::abs(twice - std::round(twice)) > 1e-12, "cdh_measure: a must not be a negative half-integer");
    }
    Measure m;
    const double lognorm = std::lgamma(a + b) + std::lgamma(a + c) + std::lgamma(b + c);
    m.density = [a, b, c, lognorm](double x) {
        if (x == 0.0) return 0.0;
        const cplx ix(0.0, x);
        const double l = 2.0 * (log_gamma(a + ix) + log_gamma(b + ix) + log_gamma(c + ix) - log_gamma(2.0 * ix)).real();
        return std::exp(l - lognorm) / (2.0 * kPi);
    };
    m.lo = 0.0;
    m.hi = decay_cutoff(2.0 * (a + b + c) + 12.0, kPi);
    m.y_of_x = [](double x) { return x * x; };
    if (a < 0.0) {
        const double pre = std::exp(std::lgamma(b - a) + std::lgamma(c - a) - std::lgamma(-2.0 * a) - std::lgamma(b + c));
        for (long k = 0; a + double(k) < 0.0; ++k) {
            const cplx r = pochhammer(2.0 * a, k) * pochhammer(a + 1.0, k) * pochhammer(a + b, k) * pochhammer(a + c, k) /
                           (pochhammer(a, k) * pochhammer(a - b + 1.0, k) * pochhammer(a - c + 1.0, k) *
                            std::exp(std::lgamma(double(k) + 1.0)));
            const double w = ((k % 2) ? -1.0 : 1.0) * pre * r.real();
            m.masses.push_back({-(a + double(k)) * (a + double(k)), w});
        }
    }
    return m;
}

double laguerre(long n, double alpha, double x) {
    if (n < 0) return 0.0;
    double prev = 0.0, cur = 1.0;
    for (long k = 0; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace chf
