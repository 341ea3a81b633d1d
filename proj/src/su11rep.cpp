#include "chf/su11rep.hpp"

#include <algorithm>
#include <cmath>

#include "chf/quadrature.hpp"

namespace chf {

void RepLabel::validate() const {
    switch (family) {
        case RepFamily::DiscretePos:
        case RepFamily::DiscreteNeg:
            require(k > 0.0, "RepLabel: discrete series needs k > 0");
            break;
        case RepFamily::Principal:
            require(eps >= 0.0 && eps < 1.0, "RepLabel: principal series needs eps in [0, 1)");
            require(rho >= 0.0, "RepLabel: principal series needs rho >= 0");
            require(!(rho == 0.0 && eps == 0.5), "RepLabel: (rho, eps) = (0, 1/2) is reducible");
            break;
        case RepFamily::Complementary: {
            const bool low = eps >= 0.0 && eps < 0.5 && lambda > -0.5 && lambda < -eps;
            const bool high = eps > 0.5 && eps < 1.0 && lambda > -0.5 && lambda < eps - 1.0;
            require(low || high, "RepLabel: complementary series parameters out of range");
            break;
        }
    }
}

double RepLabel::casimir() const {
    switch (family) {
        case RepFamily::Principal: return rho * rho + 0.25;
        case RepFamily::Complementary: return -lambda * (1.0 + lambda);
        default: return k * (1.0 - k);
    }
}

namespace {

// Raising and lowering coefficients: B e_n = up(n) e_{n+1} + down(n) e_{n-1}, same for C.
struct Ladder {
    std::function<cplx(int)> b_up, b_down, c_up, c_down;
    std::function<double(int)> h;
};

Ladder ladder(const RepLabel& r) {
    const double k = r.k, e = r.eps, rho = r.rho, lam = r.lambda;
    auto zero = [](int) { return cplx(0.0); };
    switch (r.family) {
        case RepFamily::DiscretePos:
            return {[k](int n) { return cplx(std::sqrt((n + 1.0) * (2.0 * k + n))); }, zero, zero,
                    [k](int n) { return cplx(-std::sqrt(n * (2.0 * k + n - 1.0))); },
                    [k](int n) { return 2.0 * (k + n); }};
        case RepFamily::DiscreteNeg:
            return {zero, [k](int n) { return cplx(-std::sqrt(n * (2.0 * k + n - 1.0))); },
                    [k](int n) { return cplx(std::sqrt((n + 1.0) * (2.0 * k + n))); }, zero,
                    [k](int n) { return -2.0 * (k + n); }};
        case RepFamily::Principal:
            return {[e, rho](int n) { return std::sqrt(cplx(n + e + 0.5, -rho) * cplx(n + e + 0.5, rho)); }, zero, zero,
                    [e, rho](int n) { return -std::sqrt(cplx(n + e - 0.5, -rho) * cplx(n + e - 0.5, rho)); },
                    [e](int n) { return 2.0 * (e + n); }};
        case RepFamily::Complementary:
            return {[e, lam](int n) { return std::sqrt(cplx((n + e + 1.0 + lam) * (n + e - lam))); }, zero, zero,
                    [e, lam](int n) { return -std::sqrt(cplx((n + e + lam) * (n + e - lam - 1.0))); },
                    [e](int n) { return 2.0 * (e + n); }};
    }
    return {};
}

Eigen::MatrixXcd generator_matrix(Generator gen, const RepLabel& r, int first, int dim, double phi) {
    const Ladder l = ladder(r);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    auto fill = [&](const std::function<cplx(int)>& up, const std::function<cplx(int)>& down, cplx scale) {
        for (int j = 0; j < dim; ++j) {
            const int n = first + j;
            if (j + 1 < dim) m(j + 1, j) += scale * up(n);
            if (j > 0) m(j - 1, j) += scale * down(n);
        }
    };
    switch (gen) {
        case Generator::H:
            for (int j = 0; j < dim; ++j) m(j, j) = l.h(first + j);
            break;
        case Generator::B: fill(l.b_up, l.b_down, 1.0); break;
        case Generator::C: fill(l.c_up, l.c_down, 1.0); break;
        case Generator::Omega: m = r.casimir() * Eigen::MatrixXcd::Identity(dim, dim); break;
        case Generator::XPhi:
            for (int j = 0; j < dim; ++j) m(j, j) = -std::cos(phi) * l.h(first + j);
            fill(l.b_up, l.b_down, 1.0);
            fill(l.c_up, l.c_down, -1.0);
            break;
    }
    return m;
}

TruncatedOp build(Generator gen, const RepLabel& r, int N, double phi) {
    TruncatedOp op;
    op.first_index = r.discrete() ? 0 : -N;
    const int dim = r.discrete() ? N + 1 : 2 * N + 1;
    op.m = generator_matrix(gen, r, op.first_index, dim, phi);
    op.bandwidth = gen == Generator::Omega ? 0 : 1;
    return op;
}

}  // namespace

TruncatedOp rep_action(Generator gen, const RepLabel& r, int N, double phi) {
    r.validate();
    require(N >= 2, "rep_action: truncation N must be at least 2");
    if (gen == Generator::XPhi) require(phi > 0.0 && phi < kPi, "rep_action: phi must lie in (0, pi)");
    return build(gen, r, N, phi);
}

double interior_defect(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    const int n = int(a.rows());
    if (n < 3) return 0.0;
    return (a - b).block(1, 1, n - 2, n - 2).cwiseAbs().maxCoeff();
}

double commutator_defect(const RepLabel& r, int N) {
    const auto H = rep_action(Generator::H, r, N).m, B = rep_action(Generator::B, r, N).m,
               C = rep_action(Generator::C, r, N).m;
    return std::max({interior_defect(H * B - B * H, 2.0 * B), interior_defect(H * C - C * H, -2.0 * C),
                     interior_defect(B * C - C * B, H)});
}

double casimir_defect(const RepLabel& r, int N) {
    const auto H = rep_action(Generator::H, r, N).m, B = rep_action(Generator::B, r, N).m,
               C = rep_action(Generator::C, r, N).m, O = rep_action(Generator::Omega, r, N).m;
    const Eigen::MatrixXcd omega = -0.25 * (H * H + 2.0 * H + 4.0 * C * B);
    return interior_defect(omega, O);
}

double mp_eigen_residual(const RepLabel& r, double phi, double x, int N) {
    require(r.discrete(), "mp_eigen_residual: needs a discrete series label");
    const TruncatedOp X = rep_action(Generator::XPhi, r, N, phi);
    const MPParams mp{r.k, phi};
    Eigen::VectorXcd v(N + 1);
    for (int n = 0; n <= N; ++n) v(n) = mp_orthonormal(n, mp, x);
    const double sign = r.family == RepFamily::DiscretePos ? 1.0 : -1.0;
    const Eigen::VectorXcd res = X.m * v - sign * 2.0 * x * std::sin(phi) * v;
    return res.head(N).cwiseAbs().maxCoeff() / std::max(1.0, v.cwiseAbs().maxCoeff());
}

// ---------------------------------------------------------------------------

namespace {

struct DiffCoeffs {
    cplx up, mid, down;  // multipliers of f(x+i), f(x), f(x-i)
};

DiffCoeffs pos_coeffs(Generator gen, double k, double phi, cplx x) {
    const double s = std::sin(phi);
    const cplx e1 = std::exp(kI * phi), e2 = std::exp(2.0 * kI * phi);
    const cplx km = k - kI * x, kp = k + kI * x;
    switch (gen) {
        case Generator::H: return {e1 / (kI * s) * km, 2.0 * std::cos(phi) / s * x, -std::conj(e1) / (kI * s) * kp};
        case Generator::B: return {e2 / (2.0 * kI * s) * km, x / s, -std::conj(e2) / (2.0 * kI * s) * kp};
        case Generator::C: return {-km / (2.0 * kI * s), -x / s, kp / (2.0 * kI * s)};
        default: fail(ErrorKind::Domain, "diff_realization: only H, B, C have a first-order realization");
    }
}

DiffCoeffs coeffs(Generator gen, Series s, double k, double phi, cplx x) {
    if (s == Series::Pos) return pos_coeffs(gen, k, phi, x);
    // pi^-(Y) = pi^+(theta(Y)) with theta(H) = -H, theta(B) = C, theta(C) = B
    switch (gen) {
        case Generator::H: {
            const DiffCoeffs c = pos_coeffs(Generator::H, k, phi, x);
            return {-c.up, -c.mid, -c.down};
        }
        case Generator::B: return pos_coeffs(Generator::C, k, phi, x);
        case Generator::C: return pos_coeffs(Generator::B, k, phi, x);
        default: fail(ErrorKind::Domain, "diff_realization: only H, B, C have a first-order realization");
    }
}

}  // namespace

StripFn diff_realized(Generator gen, Series s, double k, double phi, StripFn f) {
    require(k > 0.0, "diff_realization: k must be positive");
    require(phi > 0.0 && phi < kPi, "diff_realization: phi must lie in (0, pi)");
    switch (gen) {
        case Generator::XPhi: {
            StripFn h = diff_realized(Generator::H, s, k, phi, f), b = diff_realized(Generator::B, s, k, phi, f),
                    c = diff_realized(Generator::C, s, k, phi, f);
            return [h, b, c, phi](cplx x) { return -std::cos(phi) * h(x) + b(x) - c(x); };
        }
        case Generator::Omega: {
            StripFn h = diff_realized(Generator::H, s, k, phi, f);
            StripFn hh = diff_realized(Generator::H, s, k, phi, h);
            StripFn cb = diff_realized(Generator::C, s, k, phi, diff_realized(Generator::B, s, k, phi, f));
            return [h, hh, cb](cplx x) { return -0.25 * (hh(x) + 2.0 * h(x) + 4.0 * cb(x)); };
        }
        default:
            return [gen, s, k, phi, f](cplx x) {
                const DiffCoeffs c = coeffs(gen, s, k, phi, x);
                return c.up * f(x + kI) + c.mid * f(x) + c.down * f(x - kI);
            };
    }
}

cplx diff_realization(Generator gen, Series s, double k, double phi, const StripFn& f, cplx x) {
    return diff_realized(gen, s, k, phi, f)(x);
}

double diff_commutator_defect(Series s, double k, double phi, int max_degree) {
    const cplx pts[] = {{-1.3, 0.2}, {0.0, 0.0}, {0.7, -0.4}, {2.1, 0.1}};
    double worst = 0.0;
    for (int d = 0; d <= max_degree; ++d) {
        // a fixed non-symmetric polynomial of degree d
        StripFn f = [d](cplx x) {
            cplx v = 1.0;
            for (int j = 1; j <= d; ++j) v = v * (x - cplx(0.3 * j, -0.1 * j)) / double(j);
            return v;
        };
        auto R = [&](Generator g, StripFn u) { return diff_realized(g, s, k, phi, std::move(u)); };
        const StripFn Hf = R(Generator::H, f), Bf = R(Generator::B, f), Cf = R(Generator::C, f);
        const StripFn HB = R(Generator::H, Bf), BH = R(Generator::B, Hf), HC = R(Generator::H, Cf),
                      CH = R(Generator::C, Hf), BC = R(Generator::B, Cf), CB = R(Generator::C, Bf);
        for (cplx x : pts) {
            const double scale = std::max(1.0, std::abs(Hf(x)) + std::abs(Bf(x)) + std::abs(Cf(x)));
            worst = std::max(worst, std::abs(HB(x) - BH(x) - 2.0 * Bf(x)) / scale);
            worst = std::max(worst, std::abs(HC(x) - CH(x) + 2.0 * Cf(x)) / scale);
            worst = std::max(worst, std::abs(BC(x) - CB(x) - Hf(x)) / scale);
        }
    }
    return worst;
}

cplx casimir_tensor_apply(double k1, double k2, double phi, const TwoVarFn& f, cplx x, double t) {
    const cplx e2 = std::exp(2.0 * kI * phi);
    const cplx down = -std::conj(e2) * (k1 + kI * (t + x)) * (k2 + kI * x);
    const cplx mid = k1 * (1.0 - k1) + k2 * (1.0 - k2) - 2.0 * (x + t) * x;
    const cplx up = -e2 * (k1 - kI * (t + x)) * (k2 - kI * x);
    return down * f(x - kI, t) + mid * f(x, t) + up * f(x + kI, t);
}

cplx coproduct_casimir_apply(double k1, double k2, double phi, const StripFn& F1, const StripFn& F2, cplx x1,
                             cplx x2) {
    auto R1 = [&](Generator g) { return diff_realized(g, Series::Pos, k1, phi, F1)(x1); };
    auto R2 = [&](Generator g) { return diff_realized(g, Series::Neg, k2, phi, F2)(x2); };
    const cplx f1 = F1(x1), f2 = F2(x2);
    return f1 * R2(Generator::Omega) + R1(Generator::Omega) * f2 - 0.5 * R1(Generator::H) * R2(Generator::H) -
           (R1(Generator::C) * R2(Generator::B) + R1(Generator::B) * R2(Generator::C));
}

double coproduct_defect(double k1, double k2, int N) {
    const RepLabel r1 = RepLabel::pos(k1), r2 = RepLabel::neg(k2);
    auto M1 = [&](Generator g) { return rep_action(g, r1, N).m; };
    auto M2 = [&](Generator g) { return rep_action(g, r2, N).m; };
    const int d = N + 1;
    auto kron = [d](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
        Eigen::MatrixXcd out(d * d, d * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) out.block(i * d, j * d, d, d) = a(i, j) * b;
        return out;
    };
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(d, d);
    auto delta = [&](Generator g) { return Eigen::MatrixXcd(kron(M1(g), I) + kron(I, M2(g))); };
    const Eigen::MatrixXcd H = delta(Generator::H), B = delta(Generator::B), C = delta(Generator::C);
    const Eigen::MatrixXcd lhs = -0.25 * (H * H + 2.0 * H + 4.0 * C * B);
    const Eigen::MatrixXcd rhs = kron(I, M2(Generator::Omega)) + kron(M1(Generator::Omega), I) -
                                 0.5 * kron(M1(Generator::H), M2(Generator::H)) -
                                 (kron(M1(Generator::C), M2(Generator::B)) + kron(M1(Generator::B), M2(Generator::C)));
    // rows and columns with both indices in 1..N-1
    double worst = 0.0;
    for (int a = 1; a < N; ++a)
        for (int b = 1; b < N; ++b)
            for (int c = 1; c < N; ++c)
                for (int e = 1; e < N; ++e)
                    worst = std::max(worst, std::abs(lhs(a * d + b, c * d + e) - rhs(a * d + b, c * d + e)));
    return worst;
}

// ---------------------------------------------------------------------------

DecompPlan make_plan(double k1, double k2) {
    require(k1 > 0.0 && k2 > 0.0, "make_plan: k1, k2 must be positive");
    DecompPlan plan{k1, k2, 0, 0.0, false, 0.0, {}};
    const double d = k2 - k1;
    plan.L = int(std::ceil(d - 1e-13));
    plan.eps = std::clamp(k1 - k2 + plan.L, 0.0, std::nextafter(1.0, 0.0));
    plan.has_complementary = k1 + k2 < 0.5;
    plan.lambda_comp = -k1 - k2;
    for (int j = 0; d - 0.5 - j > 0.0; ++j) plan.neg_series.push_back(d - j);
    return plan;
}

CDHParams sector_params(const DecompPlan& plan, int p) {
    const double k1 = plan.k1, k2 = plan.k2;
    if (p <= 0) return {k1 - k2 + 0.5, k1 + k2 - 0.5, k2 - k1 - p + 0.5};
    return {k2 - k1 + 0.5, k1 + k2 - 0.5, k1 - k2 + p + 0.5};
}

cplx intertwiner_J(const DecompPlan& plan, int n1, int n2, const std::function<cplx(double)>& f) {
    require(n1 >= 0 && n2 >= 0, "intertwiner_J: basis indices must be non-negative");
    const int r = n1 - n2, n = std::min(n1, n2);
    const CDHParams cp = sector_params(plan, r);
    const double sign = (n2 % 2) ? -1.0 : 1.0;
    const Measure mu = cdh_measure(cp);
    return sign * integrate_measure([&](double y) { return cdh_orthonormal(n, cp, y) * f(y); }, mu, 1e-13).value;
}

double intertwiner_gram(const DecompPlan& plan, int n1, int n2, int m1, int m2) {
    if (n1 - n2 != m1 - m2) return 0.0;
    const CDHParams cp = sector_params(plan, m1 - m2);
    const int m = std::min(m1, m2);
    const double sign = (m2 % 2) ? -1.0 : 1.0;
    return intertwiner_J(plan, n1, n2, [&](double y) { return sign * std::conj(cdh_orthonormal(m, cp, y)); }).real();
}

std::vector<cplx> intertwiner_J_star(const DecompPlan& plan, int r, const std::function<cplx(double)>& f, int pmax) {
    const CDHParams cp = sector_params(plan, r);
    const Measure mu = cdh_measure(cp);
    std::vector<cplx> out;
    for (int p = 0; p <= pmax; ++p) {
        const int e = r <= 0 ? p - r : p;
        const double sign = (e % 2) ? -1.0 : 1.0;
        out.push_back(sign *
                      integrate_measure([&](double y) { return cdh_orthonormal(p, cp, y) * f(y); }, mu, 1e-13).value);
    }
    return out;
}

cplx cg_kernel_m(const DecompPlan& plan, double phi, double rho, double x1, double x2) {
    require(phi > 0.0 && phi < kPi, "cg_kernel_m: phi must lie in (0, pi)");
    require(rho >= 0.0, "cg_kernel_m: rho must be non-negative");
    const double k1 = plan.k1, k2 = plan.k2;
    const double d = x2 - x1;
    const cplx ir = kI * rho, id = kI * d;
    if (rho == 0.0) return 0.0;  // 1/Gamma(2 i rho) vanishes
    const cplx lg = log_gamma(0.5 + id + ir) + log_gamma(0.5 + id - ir) - log_gamma(k2 - k1 + id + 1.0);
    const double lmod = (log_gamma(k1 + k2 - 0.5 + ir) + log_gamma(k2 - k1 + 0.5 + ir) - log_gamma(2.0 * ir)).real();
    const double lre = (-2.0 * k1 - plan.L) * std::log(2.0 * std::sin(phi)) + d * (2.0 * phi - kPi) -
                       0.5 * std::log(2.0 * kPi) + 0.5 * (std::lgamma(2.0 * k1) - std::lgamma(2.0 * k2)) + lmod;
    return std::pow(-kI, plan.L) * std::exp(lg + lre);
}

// ---------------------------------------------------------------------------

namespace {

// P_n^{(k)}(x; phi), n = 0..count-1, from the orthonormal recurrence.
std::vector<double> mp_orthonormal_run(double k, double phi, double x, long count) {
    std::vector<double> P(size_t(std::max(count, 2L)));
    P[0] = 1.0;
    P[1] = 2.0 * (k * std::cos(phi) + x * std::sin(phi)) / std::sqrt(2.0 * k);
    for (long n = 1; n + 1 < count; ++n)
        P[n + 1] = (2.0 * (x * std::sin(phi) + (n + k) * std::cos(phi)) * P[n] -
                    std::sqrt(n * (n + 2.0 * k - 1.0)) * P[n - 1]) /
                   std::sqrt((n + 1.0) * (n + 2.0 * k));
    P.resize(size_t(count));
    return P;
}

// s_n(y; a, b, c) / ((a+b)_n (a+c)_n), n = 0..count-1.
std::vector<double> cdh_hat_run(double a, double b, double c, double y, long count) {
    std::vector<double> S(size_t(std::max(count, 2L)));
    S[0] = 1.0;
    S[1] = ((a + b) * (a + c) - (a * a + y)) / ((a + b) * (a + c));
    for (long n = 1; n + 1 < count; ++n) {
        const double A = (n + a + b) * (n + a + c), Cn = n * (n + b + c - 1.0);
        S[n + 1] = ((A + Cn - (a * a + y)) * S[n] - Cn * S[n - 1]) / A;
    }
    S.resize(size_t(count));
    return S;
}

double real_rho_squared(cplx rho) {
    const cplx y = rho * rho;
    require(std::abs(y.imag()) <= 1e-12 * std::max(1.0, std::abs(y)), "rho^2 must be real");
    return y.real();
}

// Terms of the bilinear sum in orthonormal form for p >= 0; their sum is sqrt(p! (2k1)_p) times the series.
std::vector<double> bilinear_terms(double k1, double k2, int p, double x1, double x2, double phi, double y, long N) {
    const double a = k2 - k1 + 0.5, b = k1 + k2 - 0.5, c = k1 - k2 + p + 0.5;
    const auto S = cdh_hat_run(a, b, c, y, N);
    const auto P1 = mp_orthonormal_run(k1, phi, x1, N + p);
    const auto P2 = mp_orthonormal_run(k2, phi, x2, N);
    std::vector<double> t(static_cast<size_t>(N));
    double lognorm = 0.0;  // log sqrt((a+b)_n (a+c)_n / (n! (b+c)_n))
    for (long n = 0; n < N; ++n) {
        t[n] = S[n] * std::exp(lognorm) * P1[n + p] * P2[n];
        lognorm += 0.5 * (std::log(n + a + b) + std::log(n + a + c) - std::log(n + 1.0) - std::log(n + b + c));
    }
    return t;
}

double log_norm_shift(double k1, int p) {
    double l = 0.0;
    for (int j = 1; j <= p; ++j) l += std::log(double(j)) + std::log(2.0 * k1 + j - 1);
    return 0.5 * l;
}

void dedup(std::vector<cplx>& v) {
    std::vector<cplx> out;
    for (cplx a : v)
        if (std::none_of(out.begin(), out.end(), [a](cplx b) { return std::abs(a - b) <= 1e-9; })) out.push_back(a);
    v = out;
}

struct TailColumn {
    std::function<cplx(double)> f;        // basis function of n
    std::function<cplx(long)> tail_sum;   // sum_{n >= N} f(n)
};

// Least-squares fit of t_n, n in [N/8, N), on the given columns; returns the fitted tail.
cplx fitted_tail(const std::vector<double>& t, const std::vector<TailColumn>& cols, double max_condition) {
    const long N = long(t.size()), lo = N / 8, rows = N - lo;
    const int m = int(cols.size());
    Eigen::MatrixXcd A(rows, m);
    Eigen::VectorXcd rhs(rows);
    for (long r = 0; r < rows; ++r) {
        rhs(r) = t[size_t(lo + r)];
        for (int j = 0; j < m; ++j) A(r, j) = cols[size_t(j)].f(double(lo + r));
    }
    Eigen::VectorXd scale = A.cwiseAbs().colwise().maxCoeff().transpose();
    for (int j = 0; j < m; ++j) A.col(j) /= scale(j);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(0) > max_condition * sv(sv.size() - 1))
        fail(ErrorKind::Convergence, "tail model fit is ill-conditioned");
    const Eigen::VectorXcd K = svd.solve(rhs);
    cplx tail = 0.0;
    for (int j = 0; j < m; ++j) tail += K(j) / scale(j) * cols[size_t(j)].tail_sum(N);
    return tail;
}

// sum_{m >= 0} z^m (N+m)^{-s} by the Euler transform of the forward differences.
cplx euler_tail(cplx z, cplx s, long N) {
    std::vector<cplx> d(12);
    for (int m = 0; m < 12; ++m) d[size_t(m)] = std::pow(double(N + m), -s);
    cplx acc = 0.0, zj = 1.0, w = 1.0 / (1.0 - z);
    for (int j = 0; j < 10; ++j) {
        acc += zj * w * d[0];
        for (size_t i = 0; i + 1 < d.size() - size_t(j); ++i) d[i] = d[i + 1] - d[i];
        zj *= z;
        w /= (1.0 - z);
    }
    return acc;
}

double wrap_angle(double th) {
    th = std::fmod(th, 2.0 * kPi);
    if (th < 0) th += 2.0 * kPi;
    if (2.0 * kPi - th < 1e-12) th = 0.0;
    return th;
}

double sum_of(const std::vector<double>& t) {
    long double s = 0.0L;
    for (double v : t) s += v;
    return double(s);
}

}  // namespace

cplx bilinear_rhs(double k1, double k2, int p, double x1, double x2, double phi, cplx rho) {
    require(k1 > 0.0 && k2 > 0.0, "bilinear_rhs: k1, k2 must be positive");
    require(phi > 0.0 && phi < kPi, "bilinear_rhs: phi must lie in (0, pi)");
    const double a = k2 - k1 + 0.5, b2 = p + k1 - k2 + 0.5, d = x1 - x2;
    const cplx ir = kI * rho, id = kI * d;
    const cplx T1 = ((p % 2) ? -1.0 : 1.0) * gamma(id + 0.5 + ir) * gamma(id + 0.5 - ir) *
                    rgamma(k2 - k1 + id + 1.0) * rgamma(k1 - k2 + id + 1.0 + double(p)) *
                    hyp3F2_unit(k2 - kI * x2, a + ir, a - ir, 2.0 * k2, k2 - k1 + id + 1.0) *
                    hyp2F1_cut(b2 + ir, b2 - ir, k1 - k2 + id + double(p) + 1.0, 1.0 / (1.0 - std::exp(-2.0 * kI * phi)));
    const cplx T2 = gamma(-id + 0.5 + ir) * gamma(-id + 0.5 - ir) * rgamma(k2 - k1 - id + 1.0) *
                    rgamma(k1 - k2 - id + 1.0 + double(p)) *
                    hyp3F2_unit(k2 + kI * x2, a + ir, a - ir, 2.0 * k2, k2 - k1 - id + 1.0) *
                    hyp2F1_cut(b2 + ir, b2 - ir, k1 - k2 - id + double(p) + 1.0, 1.0 / (1.0 - std::exp(2.0 * kI * phi)));
    // The normalizing constant, without a factor p!.
    const double lc = -2.0 * x1 * (phi - 0.5 * kPi) + std::lgamma(2.0 * k1) - (2.0 * k1 + p) * std::log(2.0 * std::sin(phi)) -
                      2.0 * log_gamma(cplx(k1, x1)).real();
    return std::exp(lc) * std::pow(-kI, double(p)) * (T1 + T2);
}

cplx bilinear_partial_sum(double k1, double k2, int p, double x1, double x2, double phi, cplx rho, long n_terms) {
    require(k1 > 0.0 && k2 > 0.0, "bilinear_partial_sum: k1, k2 must be positive");
    require(phi > 0.0 && phi < kPi, "bilinear_partial_sum: phi must lie in (0, pi)");
    if (p < 0) {
        // s_n(.; k1-k2+1/2, k1+k2-1/2, k2-k1+q+1/2) = (-1)^q |(k1-k2+1/2+i rho)_q|^2 s_{n-q}(.; swapped)
        const int q = -p;
        const cplx poch = pochhammer(k2 - k1 + 0.5 + kI * rho, q) * pochhammer(k2 - k1 + 0.5 - kI * rho, q);
        if (n_terms <= q) return 0.0;
        return ((q % 2) ? -1.0 : 1.0) * poch * bilinear_partial_sum(k2, k1, q, x2, x1, phi, rho, n_terms - q);
    }
    const auto t = bilinear_terms(k1, k2, p, x1, x2, phi, real_rho_squared(rho), std::max(n_terms, 2L));
    return sum_of(std::vector<double>(t.begin(), t.begin() + n_terms)) / std::exp(log_norm_shift(k1, p));
}

SumCheck bilinear_sum_check(double k1, double k2, int p, double x1, double x2, double phi, cplx rho,
                            const SumOptions& opt) {
    require(opt.n_terms >= 64, "bilinear_sum_check: need at least 64 terms");
    const cplx rhs = bilinear_rhs(k1, k2, p, x1, x2, phi, rho);
    if (p < 0) {
        const int q = -p;
        const cplx poch = pochhammer(k2 - k1 + 0.5 + kI * rho, q) * pochhammer(k2 - k1 + 0.5 - kI * rho, q);
        SumCheck sw = bilinear_sum_check(k2, k1, q, x2, x1, phi, rho, opt);
        const cplx lhs = ((q % 2) ? -1.0 : 1.0) * poch * sw.lhs;
        return {lhs, rhs, std::abs(lhs - rhs) / std::abs(rhs)};
    }
    const long N = opt.n_terms;
    const auto t = bilinear_terms(k1, k2, p, x1, x2, phi, real_rho_squared(rho), N);
    cplx sum = sum_of(t);
    if (opt.tail_model) {
        // Terms behave like e^{i theta n} n^{-3/2-j+i omega}: theta = 0 pairs with omega = +-rho +-(x1-x2),
        // theta = +-2 phi with omega = +-rho +-(x1+x2).  Exponents that would make the series diverge
        // belong to a vanishing coefficient (rho at a mass point) and are left out.
        std::vector<TailColumn> cols;
        std::vector<double> thetas{0.0};
        for (double th : {wrap_angle(2.0 * phi), wrap_angle(-2.0 * phi)})
            if (std::none_of(thetas.begin(), thetas.end(), [th](double u) { return std::abs(u - th) < 1e-9; }))
                thetas.push_back(th);
        for (double th : thetas) {
            const double xs = th == 0.0 ? x1 - x2 : x1 + x2;
            std::vector<cplx> omegas;
            for (double e0 : {1.0, -1.0})
                for (double e1 : {1.0, -1.0}) omegas.push_back(e0 * rho + e1 * xs);
            dedup(omegas);
            for (cplx om : omegas)
                for (int o = 0; o < opt.orders; ++o) {
                    const cplx s = 1.5 + o - kI * om;
                    if (s.real() <= 1.0) continue;
                    const cplx z = std::exp(kI * th);
                    TailColumn col;
                    col.f = [z, s, th](double n) { return (th == 0.0 ? 1.0 : std::pow(z, n)) * std::pow(n, -s); };
                    if (th == 0.0)
                        col.tail_sum = [s](long n0) { return hurwitz_zeta_tail(s, double(n0)); };
                    else
                        col.tail_sum = [z, s](long n0) { return std::pow(z, double(n0)) * euler_tail(z, s, n0); };
                    cols.push_back(col);
                }
        }
        sum += fitted_tail(t, cols, opt.max_condition);
    }
    const cplx lhs = sum / std::exp(log_norm_shift(k1, p));
    return {lhs, rhs, std::abs(lhs - rhs) / std::abs(rhs)};
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> laguerre_terms(double k1, double k2, int p, double x1, double x2, double y, long N) {
    const double a = k2 - k1 + 0.5, b = k1 + k2 - 0.5, c = k1 - k2 + p + 0.5;
    const auto S = cdh_hat_run(a, b, c, y, N);
    auto run = [](double alpha, double x, long count) {
        std::vector<double> L(size_t(std::max(count, 2L)));
        L[0] = 1.0;
        L[1] = 1.0 + alpha - x;
        for (long k = 1; k + 1 < count; ++k) L[k + 1] = ((2.0 * k + 1.0 + alpha - x) * L[k] - (k + alpha) * L[k - 1]) / (k + 1.0);
        return L;
    };
    const auto L1 = run(2.0 * k1 - 1.0, x1, N + p), L2 = run(2.0 * k2 - 1.0, x2, N);
    // s_n / ((2k1)_{n+p} (2k2)_n) = (p+1)_n S_n / (2k1)_{n+p}
    double lf = 0.0;
    for (int j = 0; j < p; ++j) lf -= std::log(2.0 * k1 + j);
    std::vector<double> t(static_cast<size_t>(N));
    for (long n = 0; n < N; ++n) {
        t[n] = std::exp(lf) * S[n] * L1[n + p] * L2[n];
        lf += std::log(p + 1.0 + n) - std::log(2.0 * k1 + p + n);
    }
    return t;
}

// int_U^inf u^m e^{i beta u} du by repeated integration by parts.
cplx oscillatory_tail_integral(cplx m, double beta, double U) {
    cplx res = 0.0, coef = 1.0;
    const cplx ib = kI * beta;
    for (int k = 0; k < 8; ++k) {
        res += coef * (-std::pow(U, m) * std::exp(ib * U) / ib);
        coef *= -m / ib;
        m -= 1.0;
    }
    return res;
}

}  // namespace

cplx laguerre_rhs(double k1, double k2, int p, double x1, double x2, double rho) {
    require(k1 > 0.0 && k2 > 0.0, "laguerre_rhs: k1, k2 must be positive");
    require(x1 > x2, "laguerre_rhs: need x1 > x2");
    const double D = x1 - x2;
    const cplx ir = kI * rho;
    const double lnorm = std::lgamma(2.0 * k1) - 2.0 * log_gamma(k1 - k2 + p + 0.5 + ir).real();
    const cplx F = hyp2F1_cut(k1 + k2 - 0.5 + ir, k1 + k2 - 0.5 - ir, 2.0 * k2, x2 / (x2 - x1));
    const cplx U = confluent_U(k2 - k1 - p + 0.5 + ir, 1.0 + 2.0 * ir, D);
    return ((p % 2) ? -1.0 : 1.0) * std::exp(lnorm + x2) * F * std::pow(D, 0.5 - k1 - k2 + ir) * U;
}

cplx laguerre_partial_sum(double k1, double k2, int p, double x1, double x2, double rho, long n_terms) {
    require(k1 > 0.0 && k2 > 0.0 && p >= 0, "laguerre_partial_sum: need k1, k2 > 0 and p >= 0");
    const auto t = laguerre_terms(k1, k2, p, x1, x2, rho * rho, std::max(n_terms, 2L));
    return sum_of(std::vector<double>(t.begin(), t.begin() + n_terms));
}

SumCheck laguerre_limit_check(double k1, double k2, int p, double x1, double x2, double rho, const SumOptions& opt) {
    require(k1 > 0.0 && k2 > 0.0 && p >= 0, "laguerre_limit_check: need k1, k2 > 0 and p >= 0");
    require(x1 > x2 && x2 >= 0.0, "laguerre_limit_check: need x1 > x2 >= 0");
    require(opt.n_terms >= 64, "laguerre_limit_check: need at least 64 terms");
    const cplx rhs = laguerre_rhs(k1, k2, p, x1, x2, rho);
    const long N = opt.n_terms;
    const auto t = laguerre_terms(k1, k2, p, x1, x2, rho * rho, N);
    cplx sum = sum_of(t);
    if (opt.tail_model) {
        // Terms behave like n^{-1-j/2+i omega} e^{i beta sqrt(n)}, omega = +-rho,
        // beta = +-2(sqrt(x1) +- sqrt(x2)).
        std::vector<cplx> betas;
        for (double e0 : {1.0, -1.0})
            for (double e1 : {1.0, -1.0}) betas.push_back(2.0 * e0 * (std::sqrt(x1) + e1 * std::sqrt(x2)));
        dedup(betas);
        std::vector<TailColumn> cols;
        for (double om : {rho, -rho})
            for (cplx bc : betas)
                for (int j = 0; j < opt.orders; ++j) {
                    const double beta = bc.real();
                    const cplx mu = -1.0 - 0.5 * j + kI * om;
                    TailColumn col;
                    col.f = [mu, beta](double n) { return std::pow(n, mu) * std::exp(kI * beta * std::sqrt(n)); };
                    col.tail_sum = [mu, beta, f = col.f](long n0) {
                        // int_N^inf f + f(N)/2 - f'(N)/12, the integral after u = sqrt(n)
                        const double n = double(n0);
                        const cplx I = 2.0 * oscillatory_tail_integral(2.0 * mu + 1.0, beta, std::sqrt(n));
                        const cplx fp = f(n) * (mu / n + kI * beta / (2.0 * std::sqrt(n)));
                        return I + f(n) / 2.0 - fp / 12.0;
                    };
                    cols.push_back(col);
                }
        sum += fitted_tail(t, cols, opt.max_condition);
    }
    return {sum, rhs, std::abs(sum - rhs) / std::abs(rhs)};
}

}  // namespace chf
