#include "chf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include <Eigen/Dense>

namespace chf {

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    cplx value;
    double err, absint;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel gk15(const LineFn& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const cplx fc = f(c);
    cplx k = kWgk[7] * fc, g = kWg[3] * fc;
    double absint = kWgk[7] * std::abs(fc);
    for (int j = 0; j < 7; ++j) {
        const cplx f1 = f(c - h * kXgk[j]), f2 = f(c + h * kXgk[j]);
        k += kWgk[j] * (f1 + f2);
        absint += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) g += kWg[j / 2] * (f1 + f2);
    }
    return {a, b, k * h, std::abs((k - g) * h), absint * std::abs(h)};
}

}  // namespace

QuadResult integrate(const LineFn& f, double a, double b, const QuadOptions& opt) {
    QuadResult r;
    if (a == b) return r;
    std::priority_queue<Panel> heap;
    const int n0 = std::max(1, opt.initial_panels);
    for (int i = 0; i < n0; ++i) {
        const double lo = a + (b - a) * i / n0, hi = a + (b - a) * (i + 1) / n0;
        heap.push(gk15(f, lo, hi));
    }
    long panels = n0;
    for (;;) {
        cplx total = 0.0;
        double err = 0.0, absint = 0.0;
        // sum in interval order for determinism
        std::vector<Panel> all;
        all.reserve(heap.size());
        auto copy = heap;
        while (!copy.empty()) {
            all.push_back(copy.top());
            copy.pop();
        }
        std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
        for (auto& p : all) {
            total += p.value;
            err += p.err;
            absint += p.absint;
        }
        const double target = std::max({opt.abs_tol, opt.rel_tol * std::abs(total),
                                        50.0 * std::numeric_limits<double>::epsilon() * absint});
        if (err <= target) {
            r.value = total;
            r.abs_error_estimate = err;
            r.nodes_used = 15 * panels;
            return r;
        }
        if (panels >= opt.max_panels)
            fail(ErrorKind::Convergence, "integrate: subdivision limit reached before tolerance");
        // refine the worst few panels at once
        const int batch = std::max<int>(1, int(heap.size() / 8));
        for (int i = 0; i < batch && !heap.empty(); ++i) {
            Panel p = heap.top();
            heap.pop();
            const double m = 0.5 * (p.a + p.b);
            heap.push(gk15(f, p.a, m));
            heap.push(gk15(f, m, p.b));
            ++panels;
        }
    }
}

QuadResult integrate_line(const LineFn& f, double X, double abs_tol) {
    require(X > 0.0, "integrate_line: cutoff must be positive");
    QuadOptions opt;
    opt.abs_tol = abs_tol;
    opt.initial_panels = std::max(16, int(std::ceil(2.0 * X)));
    return integrate(f, -X, X, opt);
}

namespace {

// Tail int_X^inf g(u) du of g(u) ~ sum c_j u^{beta_j}, from samples on [X/2, X].
cplx fitted_tail(const LineFn& g, double X, const std::vector<cplx>& betas) {
    const int nb = int(betas.size());
    if (nb == 0) return 0.0;
    const int ns = 4 * nb + 8;
    Eigen::MatrixXcd A(ns, nb);
    Eigen::VectorXcd y(ns);
    for (int i = 0; i < ns; ++i) {
        const double u = 0.75 * X + 0.25 * X * std::cos(kPi * (i + 0.5) / ns);
        const double r = u / X;
        // scaled basis (u/X)^beta keeps the columns O(1)
        for (int j = 0; j < nb; ++j) A(i, j) = std::exp(betas[j] * std::log(r));
        y(i) = g(u);
    }
    const Eigen::VectorXcd c = A.colPivHouseholderQr().solve(y);
    cplx tail = 0.0;
    for (int j = 0; j < nb; ++j) tail += -c(j) * X / (betas[j] + 1.0);
    return tail;
}

cplx tail_with_error(const LineFn& g, double X, const std::vector<cplx>& betas, double& err) {
    for (auto b : betas) require(b.real() < -1.0, "integrate_power_tail: exponents must have real part below -1");
    const cplx full = fitted_tail(g, X, betas);
    if (betas.size() > 1) {
        // drop the fastest-decaying exponents
        double worst = betas.front().real();
        for (auto b : betas) worst = std::min(worst, b.real());
        std::vector<cplx> reduced;
        for (auto b : betas)
            if (b.real() > worst + 1e-12) reduced.push_back(b);
        if (!reduced.empty()) err += std::abs(full - fitted_tail(g, X, reduced));
    }
    return full;
}

}  // namespace

QuadResult integrate_power_tail(const LineFn& f, double X, const std::vector<cplx>& right,
                                const std::vector<cplx>& left, double abs_tol) {
    require(X > 0.0, "integrate_power_tail: cutoff must be positive");
    QuadOptions opt;
    opt.abs_tol = abs_tol;
    opt.initial_panels = std::max(16, int(std::ceil(X / 2.0)));
    QuadResult r = integrate(f, -X, X, opt);
    double err = 0.0;
    r.value += tail_with_error(f, X, right, err);
    r.value += tail_with_error([&](double u) { return f(-u); }, X, left, err);
    r.abs_error_estimate += err;
    r.nodes_used += 2 * (4 * long(right.size() + left.size()) + 16);
    return r;
}

std::vector<cplx> power_exponents(double alpha, const std::vector<double>& omegas, int orders) {
    std::vector<cplx> out;
    for (int j = 0; j < orders; ++j)
        for (double w : omegas) out.push_back(cplx(alpha - j, w));
    return out;
}

QuadResult integrate_measure(const std::function<cplx(double)>& f, const Measure& m, double abs_tol) {
    QuadResult r;
    if (m.density && m.hi > m.lo) {
        QuadOptions opt;
        opt.abs_tol = abs_tol;
        opt.initial_panels = std::max(16, int(std::ceil(2.0 * (m.hi - m.lo))));
        r = integrate([&](double x) { return f(m.y_of_x(x)) * m.density(x); }, m.lo, m.hi, opt);
    }
    for (auto& ms : m.masses) {
        require(ms.weight > 0.0, "integrate_measure: mass weights must be positive");
        r.value += ms.weight * f(ms.location);
        ++r.nodes_used;
    }
    return r;
}

cplx truncated_inner(const LineFn& f, const LineFn& g, const LineFn& w, double M, double N, double abs_tol) {
    if (N <= -M) return 0.0;
    QuadOptions opt;
    opt.abs_tol = abs_tol;
    return integrate([&](double x) { return f(x) * std::conj(g(x)) * w(x); }, -M, N, opt).value;
}

GaussRule gauss_legendre(int n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5)), dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // map [-1,1] -> [0,1]
        r.nodes[i] = 0.5 * (1.0 - x);
        r.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

const GaussRule& gauss_legendre_64() {
    static const GaussRule rule = gauss_legendre(64);
    return rule;
}

double decay_cutoff(double power, double rate, double floor) {
    require(rate > 0.0, "decay_cutoff: rate must be positive");
    double X = floor;
    while (power * std::log(X) - rate * X > std::log(1e-18)) X *= 1.1;
    return X;
}

}  // namespace chf
