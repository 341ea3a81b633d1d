#include <algorithm>
#include <array>
#include <cmath>
#include <tuple>

#include "chf/numkernel.hpp"

namespace chf {

void SeriesControl::validate() const {
    require(rel_tol > 0.0 && rel_tol <= 1e-6, "SeriesControl: rel_tol must lie in (0, 1e-6]");
    require(min_terms >= 2 && max_terms >= min_terms, "SeriesControl: need max_terms >= min_terms >= 2");
}

const std::vector<double>& bernoulli_numbers(int n) {
    static std::vector<double> cache{1.0};
    while (int(cache.size()) <= n) {
        const int m = int(cache.size());
        double s = 0.0, binom = 1.0;  // binom = C(m+1, k)
        for (int k = 0; k < m; ++k) {
            s += binom * cache[k];
            binom = binom * double(m + 1 - k) / double(k + 1);
        }
        cache.push_back(-s / double(m + 1));
    }
    return cache;
}

cplx bernoulli_poly(int n, cplx x) {
    const auto& B = bernoulli_numbers(n);
    // Horner in x: B_n(x) = sum_k C(n,k) B_{n-k} x^k
    cplx r = 0.0;
    double binom = 1.0;  // C(n, k), descending from k = n
    for (int k = n; k >= 0; --k) {
        r = r * x + binom * B[n - k];
        binom = binom * double(k) / double(n - k + 1);
    }
    return r;
}

cplx hurwitz_zeta_tail(cplx s, double N) {
    require(s.real() > 1.0, "hurwitz_zeta_tail: need Re s > 1");
    const auto& B = bernoulli_numbers(24);
    const cplx Ns = std::pow(N, -s);
    cplx r = N * Ns / (s - 1.0) + 0.5 * Ns;
    cplx rise = s;  // (s)_{2k-1}
    double fact = 2.0;  // (2k)!
    double Np = 1.0 / N;
    for (int k = 1; k <= 12; ++k) {
        r += B[2 * k] / fact * rise * Ns * Np;
        rise *= (s + double(2 * k - 1)) * (s + double(2 * k));
        fact *= double(2 * k + 1) * double(2 * k + 2);
        Np /= N * N;
    }
    return r;
}

namespace {

double max_abs(const std::vector<cplx>& v) {
    double m = 0.0;
    for (auto x : v) m = std::max(m, std::abs(x));
    return m;
}

// Smallest k >= 0 with a numerator equal to -k, or -1.
long termination_index(const std::vector<cplx>& numer) {
    long m = -1;
    for (auto a : numer)
        if (is_nonpositive_integer(a)) {
            const long k = std::lround(-a.real());
            if (m < 0 || k < m) m = k;
        }
    return m;
}

void check_denominators(const std::vector<cplx>& denom, long term_index) {
    for (auto b : denom)
        if (is_nonpositive_integer(b)) {
            const long k = std::lround(-b.real());
            if (term_index < 0 || k < term_index)
                fail(ErrorKind::Pole, "hypergeometric series: denominator parameter is a non-positive integer");
        }
}

cplx term_ratio(const std::vector<cplx>& numer, const std::vector<cplx>& denom, double n) {
    cplx r = 1.0 / (n + 1.0);
    for (auto a : numer) r *= a + n;
    for (auto b : denom) r /= b + n;
    return r;
}

cplx sum_terminating(const std::vector<cplx>& numer, const std::vector<cplx>& denom, cplx z, long m) {
    cplx t = 1.0, s = 1.0;
    for (long n = 0; n < m; ++n) {
        t *= term_ratio(numer, denom, double(n)) * z;
        s += t;
    }
    return s;
}

cplx sum_direct(const std::vector<cplx>& numer, const std::vector<cplx>& denom, cplx z,
                const SeriesControl& ctl, double asym_ratio) {
    const double settle = max_abs(numer) + max_abs(denom);
    const double geom = asym_ratio < 1.0 ? 1.0 / (1.0 - asym_ratio) : 1.0;
    cplx t = 1.0, s = 1.0;
    int quiet = 0;
    for (long n = 0; n < ctl.max_terms; ++n) {
        t *= term_ratio(numer, denom, double(n)) * z;
        s += t;
        if (n + 1 >= ctl.min_terms && double(n) > settle &&
            std::abs(t) * geom <= ctl.rel_tol * std::abs(s)) {
            if (++quiet >= 2) return s;
        } else {
            quiet = 0;
        }
        if (!std::isfinite(std::abs(s))) break;
    }
    fail(ErrorKind::Convergence, "hypergeometric series: max_terms reached before rel_tol");
}

}  // namespace

cplx unit_argument_sum(const std::vector<cplx>& numer, const std::vector<cplx>& denom,
                       const SeriesControl& ctl) {
    require(numer.size() == denom.size() + 1, "unit_argument_sum: need p = q+1");
    cplx s = 0.0;
    for (auto b : denom) s += b;
    for (auto a : numer) s -= a;
    if (s.real() <= 0.0)
        fail(ErrorKind::Divergence, "hypergeometric series at z = 1: parameter excess must have positive real part");

    const long N = std::max<long>(ctl.min_terms, 64 + long(std::ceil(8.0 * std::max(max_abs(numer), max_abs(denom)))));
    if (N > ctl.max_terms) fail(ErrorKind::Convergence, "unit_argument_sum: parameters too large for max_terms");

    cplx t = 1.0, S = 0.0;
    for (long n = 0; n < N; ++n) {
        S += t;
        t *= term_ratio(numer, denom, double(n));
    }

    // log t_n = const + (-s-1) log n + sum_k g_k n^{-k}
    constexpr int J = 20;
    std::array<cplx, J + 1> g{}, e{};
    for (int k = 1; k <= J; ++k) {
        cplx v = -bernoulli_poly(k + 1, 1.0);
        for (auto a : numer) v += bernoulli_poly(k + 1, a);
        for (auto b : denom) v -= bernoulli_poly(k + 1, b);
        g[k] = ((k % 2) ? 1.0 : -1.0) * v / double(k * (k + 1));
    }
    e[0] = 1.0;
    for (int m = 1; m <= J; ++m) {
        cplx acc = 0.0;
        for (int k = 1; k <= m; ++k) acc += double(k) * g[k] * e[m - k];
        e[m] = acc / double(m);
    }
    const double Nd = double(N);
    cplx R = 0.0, T = 0.0;
    double Np = 1.0;
    for (int j = 0; j <= J; ++j) {
        R += e[j] * Np;
        T += e[j] * hurwitz_zeta_tail(s + 1.0 + double(j), Nd);
        Np /= Nd;
    }
    R *= std::pow(Nd, -s - 1.0);
    return S + t / R * T;
}

cplx hyp_pFq(const std::vector<cplx>& numer, const std::vector<cplx>& denom, cplx z,
             const SeriesControl& ctl) {
    ctl.validate();
    const long m = termination_index(numer);
    check_denominators(denom, m);
    if (m >= 0) {
        if (m > ctl.max_terms) fail(ErrorKind::Convergence, "terminating series longer than max_terms");
        return sum_terminating(numer, denom, z, m);
    }
    if (z == cplx(0.0)) return 1.0;
    const size_t p = numer.size(), q = denom.size();
    if (p <= q) return sum_direct(numer, denom, z, ctl, 0.0);
    if (p > q + 1) fail(ErrorKind::Divergence, "hypergeometric series with p > q+1 diverges");
    const double az = std::abs(z);
    if (std::abs(z - 1.0) < 1e-15) {
        if (p == 3) return hyp3F2_unit(numer[0], numer[1], numer[2], denom[0], denom[1], ctl);
        return unit_argument_sum(numer, denom, ctl);
    }
    if (az > 1.0 + 1e-15) fail(ErrorKind::Divergence, "hypergeometric series with p = q+1 diverges for |z| > 1");
    if (az >= 1.0 - 1e-15) {
        cplx s = 0.0;
        for (auto b : denom) s += b;
        for (auto a : numer) s -= a;
        if (s.real() <= 0.0) fail(ErrorKind::Divergence, "hypergeometric series on |z| = 1 needs positive excess");
    }
    return sum_direct(numer, denom, z, ctl, az);
}

// ---------------------------------------------------------------------------
// 3F2 at unit argument: search the Thomae orbit for the best-conditioned form.

namespace {

struct Form3F2 {
    std::array<cplx, 3> a;
    std::array<cplx, 2> b;
    cplx log_pref;  // log of the Gamma prefactor relative to the original series
};

bool gamma_ok(cplx z) { return !is_nonpositive_integer(z, 1e-10); }

// Parameter sets compared as multisets, up to a small tolerance.
bool same_form(const Form3F2& f, const Form3F2& g) {
    auto sorted = [](auto arr) {
        std::sort(arr.begin(), arr.end(), [](cplx x, cplx y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); });
        return arr;
    };
    const auto fa = sorted(f.a), ga = sorted(g.a);
    const auto fb = sorted(f.b), gb = sorted(g.b);
    for (size_t i = 0; i < fa.size(); ++i)
        if (std::abs(fa[i] - ga[i]) > 1e-9) return false;
    for (size_t i = 0; i < fb.size(); ++i)
        if (std::abs(fb[i] - gb[i]) > 1e-9) return false;
    return true;
}

// A Thomae image whose Gamma prefactor is evaluated only if the image is new.
struct Neighbour {
    Form3F2 form;
    std::array<cplx, 3> num;
    std::array<cplx, 3> den;
    int nnum;
};

std::vector<Neighbour> thomae_neighbours(const Form3F2& f) {
    std::vector<Neighbour> out;
    const cplx s = f.b[0] + f.b[1] - f.a[0] - f.a[1] - f.a[2];
    for (int i = 0; i < 3; ++i) {
        const cplx a = f.a[i], b = f.a[(i + 1) % 3], c = f.a[(i + 2) % 3];
        const cplx d = f.b[0], e = f.b[1];
        // 3F2(a,b,c;d,e) = G(d)G(e)G(s)/(G(a)G(s+b)G(s+c)) 3F2(d-a,e-a,s; s+b,s+c)
        out.push_back({{{d - a, e - a, s}, {s + b, s + c}, f.log_pref}, {d, e, s}, {a, s + b, s + c}, 3});
        for (int j = 0; j < 2; ++j) {
            const cplx dd = f.b[j], ee = f.b[1 - j];
            // 3F2(a,b,c;d,e) = G(e)G(s)/(G(e-a)G(s+a)) 3F2(a, d-b, d-c; d, s+a)
            out.push_back({{{a, dd - b, dd - c}, {dd, s + a}, f.log_pref}, {ee, s, 0.0}, {ee - a, s + a, 0.0}, 2});
        }
    }
    return out;
}

bool resolve_prefactor(Neighbour& nb) {
    cplx lp = 0.0;
    for (int k = 0; k < nb.nnum; ++k) {
        if (!gamma_ok(nb.num[k]) || !gamma_ok(nb.den[k])) return false;
        lp += log_gamma(nb.num[k]) - log_gamma(nb.den[k]);
    }
    nb.form.log_pref += lp;
    return true;
}

// log of the largest |prefactor * term| over the range where terms are summed.
double peak_log_term(const Form3F2& f, double& excess_re) {
    const cplx s = f.b[0] + f.b[1] - f.a[0] - f.a[1] - f.a[2];
    excess_re = s.real();
    double big = 0.0;
    for (auto z : f.a) big = std::max(big, std::abs(z));
    for (auto z : f.b) big = std::max(big, std::abs(z));
    const long N = 64 + long(std::ceil(8.0 * big));
    double lt = 0.0, peak = 0.0;
    for (long n = 0; n < N; ++n) {
        const double dn = double(n);
        double r = 1.0 / ((dn + 1.0) * (dn + 1.0));
        for (auto z : f.a) r *= std::norm(z + dn);
        for (auto z : f.b) r /= std::norm(z + dn);
        lt += 0.5 * std::log(r);
        peak = std::max(peak, lt);
        if (!std::isfinite(lt)) break;
    }
    return peak + f.log_pref.real();
}

}  // namespace

cplx hyp3F2_unit(cplx a1, cplx a2, cplx a3, cplx b1, cplx b2, const SeriesControl& ctl) {
    ctl.validate();
    const std::vector<cplx> numer{a1, a2, a3}, denom{b1, b2};
    const long m = termination_index(numer);
    if (m >= 0) return hyp_pFq(numer, denom, 1.0, ctl);
    check_denominators(denom, -1);

    std::vector<Form3F2> orbit{{{a1, a2, a3}, {b1, b2}, 0.0}};
    for (size_t i = 0; i < orbit.size() && orbit.size() < 64; ++i)
        for (auto& nb : thomae_neighbours(orbit[i]))
            if (std::none_of(orbit.begin(), orbit.end(), [&](const Form3F2& f) { return same_form(f, nb.form); }) &&
                resolve_prefactor(nb))
                orbit.push_back(nb.form);

    const Form3F2* best = nullptr;
    double best_score = 0.0;
    for (auto& f : orbit) {
        bool bad = false;
        for (auto z : f.b) bad = bad || is_nonpositive_integer(z, 1e-10);
        for (auto z : f.a) bad = bad || is_nonpositive_integer(z, 1e-10);
        if (bad) continue;
        double ex;
        const double peak = peak_log_term(f, ex);
        if (ex < 0.05) continue;
        // prefer well-conditioned forms; among near-ties prefer faster decay
        const double score = peak - 0.05 * std::min(ex, 2.0);
        if (!best || score < best_score) {
            best = &f;
            best_score = score;
        }
    }
    if (!best) {
        cplx s = b1 + b2 - a1 - a2 - a3;
        if (s.real() <= 0.0)
            fail(ErrorKind::Divergence, "3F2 at z = 1: parameter excess must have positive real part");
        return unit_argument_sum(numer, denom, ctl);
    }
    const cplx v = unit_argument_sum({best->a[0], best->a[1], best->a[2]}, {best->b[0], best->b[1]}, ctl);
    return std::exp(best->log_pref) * v;
}

cplx hyp1F1(cplx a, cplx b, cplx z) { return hyp_pFq({a}, {b}, z); }

cplx confluent_U(cplx a, cplx b, double z) {
    require(z > 0.0, "confluent_U: z must be positive");
    if (std::abs(b.imag()) < 1e-12 && std::abs(b.real() - std::round(b.real())) < 1e-12)
        fail(ErrorKind::Degenerate, "confluent_U: integer b is not supported by the two-1F1 form");
    return gamma(1.0 - b) * rgamma(1.0 + a - b) * hyp1F1(a, b, z) +
           gamma(b - 1.0) * rgamma(a) * std::pow(cplx(z), 1.0 - b) * hyp1F1(1.0 + a - b, 2.0 - b, z);
}

}  // namespace chf
