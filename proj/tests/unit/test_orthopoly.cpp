#include <doctest.h>

#include "chf/errors.hpp"
#include "chf/orthopoly.hpp"
#include "near.hpp"

using namespace chf;

TEST_SUITE("orthopoly") {
    TEST_CASE("Meixner-Pollaczek values") {
        CHECK(rel(mp_poly(6, {0.8, 1.1}, 0.7), -1.0978822857865284) < 1e-13);
        CHECK(rel(mp_poly(12, {1.5, 2.6}, -1.3), -25.208507630886599) < 1e-12);
        CHECK(mp_poly(-1, {1.5, 2.6}, 0.3) == cplx(0.0));
    }

    TEST_CASE("closed form agrees with the recurrence") {
        for (long n : {0L, 3L, 10L, 30L})
            for (double x : {-2.0, 0.4, 3.1}) {
                const MPParams p{0.9, 2.2};
                CHECK(rel(mp_poly(n, p, x), mp_poly_recurrence(n, p, x), 1.0) < 1e-11);
            }
        for (long n : {0L, 2L, 6L}) {
            const CDHParams p{0.3, 0.9, 1.2};
            CHECK(rel(cdh_poly(n, p, 1.7), cdh_poly_recurrence(n, p, 1.7), 1.0) < 1e-11);
        }
    }

    TEST_CASE("continuous dual Hahn values") {
        CHECK(rel(cdh_poly(5, {0.3, 0.9, 1.2}, 2.0), -36243.279465534898) < 1e-12);
        // negative a: the measure gains a mass point but the polynomial is unchanged
        CHECK(rel(cdh_poly(3, {-0.4, 0.9, 1.2}, 0.5), -19.679256) < 1e-12);
        CHECK(cdh_measure({-0.4, 0.9, 1.2}).masses.size() == 1);
    }

    TEST_CASE("Meixner-Pollaczek difference equation") {
        const MPParams p{1.2, 0.8};
        for (long n : {1L, 5L, 8L}) CHECK(std::abs(mp_difference_residual(n, p, cplx(0.3, 0.2))) < 1e-10);
    }

    TEST_CASE("Laguerre") { CHECK(laguerre(7, 0.6, 2.3) == doctest::Approx(1.1902972134325397).epsilon(1e-13)); }

    TEST_CASE("parameter validation") {
        CHECK_THROWS_AS(MPParams({-0.2, 1.0}).validate(), Error);
        CHECK_THROWS_AS(MPParams({0.5, 3.5}).validate(), Error);
    }
}
