#include <doctest.h>

#include "chf/errors.hpp"
#include "chf/hahn.hpp"
#include "near.hpp"

using namespace chf;

TEST_SUITE("hahn") {
    TEST_CASE("phi_rho and the weight against mpmath") {
        CHECK(rel(phi_rho({1.3, 0.9, 0.4, kPi / 2}, 0.8, 0.6), cplx(3.0658640915738993, -2.8299867692174626)) < 1e-11);
        CHECK(rel(phi_rho({0.7, 0.9, 0.3, 1.1}, 1.7, -1.2), cplx(-5.3744952496112807, 9.5099707096224685)) < 1e-11);
        CHECK(rel(weight_w({1.3, 0.9, 0.4, 1.1}, 0.6), 0.0065915960555530911) < 1e-12);
    }

    TEST_CASE("weighted form matches phi_rho sqrt(w)") {
        const HahnParams p{1.3, 0.9, 0.4, 1.1};
        const double x = 0.6;
        const cplx expect = phi_rho(p, 0.8, x) * std::sqrt(weight_w(p, x).real());
        CHECK(rel(phi_rho_weighted(p, 0.8, x), expect) < 1e-12);
    }

    TEST_CASE("eigenfunctions of Lambda") {
        const HahnParams p{1.3, 0.9, 0.4, kPi / 2};
        const double rho = 0.8;
        const StripFn f = [&](cplx x) { return phi_rho(p, rho, x); };
        const cplx x = 0.35;
        CHECK(rel(lambda_apply(p, f, x), (rho * rho + 0.25) * f(x)) < 1e-10);
    }

    TEST_CASE("c-function expansion") {
        const HahnParams p{0.7, 0.9, 0.3, 1.1};
        const double rho = 1.1;
        const cplx x = -0.8;
        const cplx rhs = c_function(p, rho) * Phi_rho(p, rho, x) + c_function(p, -rho) * Phi_rho(p, -rho, x);
        CHECK(rel(phi_rho(p, rho, x), rhs) < 1e-10);
    }

    TEST_CASE("spectral weights") {
        const HahnParams p{1.3, 0.9, 0.4, 1.1};
        const SpectralWeights w = spectral_weights(p, 0.7);
        CHECK(w.W0 > 0.0);
        CHECK(w.W > 0.0);
        CHECK(std::abs(w.h) < 1.0);
        CHECK(rel(W0_analytic(p, 0.7), w.W0) < 1e-12);
        CHECK(rel(W1_analytic(p, 0.7), w.W1) < 1e-12);
        CHECK(rel(one_minus_h2(p, 0.7), 1.0 - std::norm(w.h)) < 1e-12);
    }

    TEST_CASE("spectrum classification") {
        CHECK(classify_spectrum({1.3, 0.9, 0.4, kPi / 2}).kind == SpectralCase::ContinuousOnly);
        const SpectralData d = classify_spectrum({1.6, 0.4, 0.3, kPi / 2});
        CHECK(d.kind == SpectralCase::DiscreteSeriesPoints);
        CHECK(d.n0 == 0);
        CHECK(std::abs(d.rho_n[0].imag()) == doctest::Approx(0.7));
    }

    TEST_CASE("invalid parameters are rejected") {
        CHECK_THROWS_AS(HahnParams({-0.1, 0.9, 0.0, 1.0}).validate(), Error);
        CHECK_THROWS_AS(HahnParams({1.0, 0.9, 0.0, 4.0}).validate(), Error);
    }
}
