#include <doctest.h>

#include <cmath>

#include "chf/quadrature.hpp"
#include "near.hpp"

using namespace chf;

TEST_SUITE("quadrature") {
    TEST_CASE("Gauss-Legendre is exact for low degree") {
        const GaussRule g = gauss_legendre(10);
        double s = 0.0;
        for (size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], 19);
        CHECK(s == doctest::Approx(1.0 / 20).epsilon(1e-14));
        const GaussRule& h = gauss_legendre_64();
        double w = 0.0;
        for (double x : h.weights) w += x;
        CHECK(w == doctest::Approx(1.0).epsilon(1e-14));
    }

    TEST_CASE("adaptive Gauss-Kronrod") {
        const QuadResult r = integrate([](double x) { return cplx(std::sqrt(x), 0.0); }, 0.0, 1.0);
        CHECK(rel(r.value, 2.0 / 3) < 1e-11);
        const QuadResult g = integrate_line([](double x) { return cplx(std::exp(-x * x), 0.0); }, 7.0);
        CHECK(rel(g.value, std::sqrt(kPi)) < 1e-12);
    }

    TEST_CASE("power-tail extrapolation") {
        // 1/(1+x^2) ~ x^-2 - x^-4 + ...
        const auto ex = power_exponents(-2.0, {0.0}, 6);
        const QuadResult r = integrate_power_tail([](double x) { return cplx(1.0 / (1.0 + x * x), 0.0); }, 40.0, ex, ex);
        CHECK(rel(r.value, kPi) < 1e-10);
    }

    TEST_CASE("measure with a mass point") {
        Measure m;
        m.density = [](double x) { return std::exp(-x); };
        m.lo = 0.0;
        m.hi = 60.0;
        m.masses = {{2.0, 0.5}};
        const QuadResult r = integrate_measure([](double x) { return cplx(x, 0.0); }, m);
        CHECK(rel(r.value, 1.0 + 0.5 * 2.0) < 1e-11);
    }
}
