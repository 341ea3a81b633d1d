#include <cmath>

#include "chf/numkernel.hpp"

namespace chf {

namespace {

constexpr double kDisk = 0.75;

cplx series(cplx a, cplx b, cplx c, cplx z) { return hyp_pFq({a, b}, {c}, z); }

bool near_integer(cplx z) {
    return std::abs(z.imag()) < 1e-12 && std::abs(z.real() - std::round(z.real())) < 1e-12;
}

// Continue (f, f') from z0 to z1 by Taylor steps of the hypergeometric ODE
//   z(1-z) f'' + [c - (a+b+1) z] f' - ab f = 0.
void taylor_step(cplx a, cplx b, cplx c, cplx z0, cplx h, cplx& f, cplx& df) {
    const cplx q = z0 * (1.0 - z0);
    const cplx lin = c - (a + b + 1.0) * z0;
    cplx fk = f, fk1 = df;  // coefficients f_k, f_{k+1}
    cplx val = f + df * h, der = df;
    cplx hk = h;  // h^{k+1}
    int quiet = 0;
    for (int k = 0; k < 2000; ++k) {
        const double dk = double(k);
        const cplx fk2 = -(((1.0 - 2.0 * z0) * dk + lin) * (dk + 1.0) * fk1 - (dk + a) * (dk + b) * fk) /
                         (q * (dk + 2.0) * (dk + 1.0));
        const cplx dv = fk2 * hk * h;
        const cplx dd = (dk + 2.0) * fk2 * hk;
        val += dv;
        der += dd;
        hk *= h;
        fk = fk1;
        fk1 = fk2;
        if (std::abs(dv) <= 1e-17 * std::abs(val) && std::abs(dd) <= 1e-17 * std::abs(der)) {
            if (++quiet >= 3) break;
        } else {
            quiet = 0;
        }
    }
    f = val;
    df = der;
}

cplx taylor_continuation(cplx a, cplx b, cplx c, cplx z) {
    cplx z0 = 0.5 * z / std::abs(z);
    cplx f = series(a, b, c, z0);
    cplx df = a * b / c * series(a + 1.0, b + 1.0, c + 1.0, z0);
    for (int step = 0; step < 10000; ++step) {
        const cplx rem = z - z0;
        if (std::abs(rem) == 0.0) break;
        const double radius = std::min(std::abs(z0), std::abs(1.0 - z0));
        cplx h = rem;
        if (std::abs(h) > 0.5 * radius) h *= 0.5 * radius / std::abs(h);
        taylor_step(a, b, c, z0, h, f, df);
        z0 += h;
        if (std::abs(z - z0) < 1e-15 * std::abs(z)) break;
    }
    return f;
}

}  // namespace

cplx hyp2F1_cut(cplx a, cplx b, cplx c, cplx z) {
    if (z.imag() == 0.0 && z.real() >= 1.0)
        fail(ErrorKind::BranchCut, "hyp2F1_cut: argument on the branch cut [1, inf)");
    // Terminating series are polynomials and valid everywhere.
    if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) return series(a, b, c, z);
    if (is_nonpositive_integer(c)) fail(ErrorKind::Pole, "hyp2F1_cut: c is a non-positive integer");

    if (std::abs(z) <= kDisk) return series(a, b, c, z);
    const cplx w = z / (z - 1.0);
    if (std::abs(w) <= kDisk) return std::pow(1.0 - z, -a) * series(a, c - b, c, w);
    if (std::abs(z) >= 1.0 / kDisk) {
        if (near_integer(a - b))
            fail(ErrorKind::Degenerate, "hyp2F1_cut: a-b is an integer in the 1/z connection formula");
        const cplx mz = -z, iz = 1.0 / z;
        const cplx t1 = gamma(b - a) * rgamma(b) * rgamma(c - a) * std::pow(mz, -a) * series(a, a - c + 1.0, a - b + 1.0, iz);
        const cplx t2 = gamma(a - b) * rgamma(a) * rgamma(c - b) * std::pow(mz, -b) * series(b, b - c + 1.0, b - a + 1.0, iz);
        return gamma(c) * (t1 + t2);
    }
    return taylor_continuation(a, b, c, z);
}

cplx hyp2F1_regularized(cplx a, cplx b, cplx c, cplx z) {
    if (!is_nonpositive_integer(c, 1e-12)) return rgamma(c) * hyp2F1_cut(a, b, c, z);
    const long m = std::lround(-c.real());
    // limit c -> -m: (a)_{m+1}(b)_{m+1}/(m+1)! z^{m+1} 2F1(a+m+1, b+m+1; m+2; z)
    cplx pre = pochhammer(a, m + 1) * pochhammer(b, m + 1) * std::pow(z, double(m + 1));
    for (long k = 2; k <= m + 1; ++k) pre /= double(k);
    if (pre == cplx(0.0)) return 0.0;
    return pre * hyp2F1_cut(a + double(m + 1), b + double(m + 1), double(m + 2), z);
}

}  // namespace chf
