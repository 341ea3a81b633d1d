#include <array>
#include <cmath>

#include "chf/numkernel.hpp"

namespace chf {

namespace {

// Lanczos coefficients for g = 671/128 (14 terms), relative accuracy ~1e-15.
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

cplx lanczos_log_gamma(cplx z) {
    cplx tmp = z + 5.24218750000000000;
    tmp = (z + 0.5) * std::log(tmp) - tmp;
    cplx ser = 0.999999999999997092;
    cplx y = z;
    for (double c : kLanczos) {
        y += 1.0;
        ser += c / y;
    }
    return tmp + std::log(2.5066282746310005 * ser / z);
}

// log sin(pi z) continued analytically through the upper half plane.
cplx log_sin_pi_upper(cplx z) {
    const cplx e = std::exp(2.0 * kPi * kI * z);
    return -kPi * kI * z + std::log(1.0 - e) + std::log(0.5) + kI * (kPi / 2);
}

}  // namespace

bool is_nonpositive_integer(cplx z, double tol) {
    if (std::abs(z.imag()) > tol || z.real() > tol) return false;
    return std::abs(z.real() - std::round(z.real())) <= tol;
}

cplx log_gamma(cplx z) {
    if (is_nonpositive_integer(z, 0.0)) fail(ErrorKind::Pole, "log_gamma: pole at non-positive integer");
    if (z.real() >= 0.5) return lanczos_log_gamma(z);
    if (z.imag() < 0.0) return std::conj(log_gamma(std::conj(z)));
    return std::log(kPi) - log_sin_pi_upper(z) - lanczos_log_gamma(1.0 - z);
}

cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

cplx rgamma(cplx z) {
    if (is_nonpositive_integer(z, 0.0)) return 0.0;
    return std::exp(-log_gamma(z));
}

cplx pochhammer(cplx a, long n) {
    require(n >= 0, "pochhammer: negative index");
    cplx r = 1.0;
    for (long k = 0; k < n; ++k) r *= a + double(k);
    return r;
}

}  // namespace chf
