#pragma once

#include <functional>
#include <vector>

#include "chf/numkernel.hpp"

namespace chf {

using LineFn = std::function<cplx(double)>;

struct QuadResult {
    cplx value = 0.0;
    double abs_error_estimate = 0.0;
    long nodes_used = 0;
};

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 0.0;      // optional relative target on |value|
    long max_panels = 20000;
    int initial_panels = 16;
};

// Adaptive Gauss-Kronrod (7/15) on a finite interval.
QuadResult integrate(const LineFn& f, double a, double b, const QuadOptions& opt = {});

// Integral over R of an integrand that is negligible (< 1e-18) outside [-X, X].
QuadResult integrate_line(const LineFn& f, double X, double abs_tol = 1e-12);

// Integral over R of an integrand with algebraic decay.  On each side the
// integrand is modelled beyond |x| = X as sum_j c_j |x|^{beta_j} (Re beta_j < -1);
// the c_j are fitted by least squares on X/2 <= |x| <= X and the tails integrated
// in closed form.  The error estimate includes the change when the
// highest-order exponent is dropped from each model.
QuadResult integrate_power_tail(const LineFn& f, double X, const std::vector<cplx>& right,
                                const std::vector<cplx>& left, double abs_tol = 1e-12);

// Exponents alpha - j + i omega, j = 0..orders-1, for each omega.
std::vector<cplx> power_exponents(double alpha, const std::vector<double>& omegas, int orders);

// Mass point of a measure: f is evaluated at `location` (in the measure's variable).
struct Mass {
    double location;
    double weight;
};

// density(x) dx on [lo, hi] (hi may be +inf handled through `cutoff`); the
// measure's variable is y = y_of_x(x), which is also where masses sit.
struct Measure {
    std::function<double(double)> density;
    double lo = 0.0;
    double hi = 0.0;
    std::function<double(double)> y_of_x = [](double x) { return x; };
    std::vector<Mass> masses;
};

QuadResult integrate_measure(const std::function<cplx(double)>& f, const Measure& m, double abs_tol = 1e-12);

// int_{-M}^{N} f(x) conj(g(x)) w(x) dx
cplx truncated_inner(const LineFn& f, const LineFn& g, const LineFn& w, double M, double N, double abs_tol = 1e-12);

// Fixed 64-point Gauss-Legendre rule on [0, 1].
struct GaussRule {
    std::vector<double> nodes, weights;
};
const GaussRule& gauss_legendre_64();
GaussRule gauss_legendre(int n);

// Cutoff X with |x|^power * exp(-rate |x|) < 1e-18 for |x| > X.
double decay_cutoff(double power, double rate, double floor = 5.0);

}  // namespace chf
