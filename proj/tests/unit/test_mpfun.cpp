#include <doctest.h>

#include "chf/mpfun.hpp"
#include "near.hpp"

using namespace chf;

TEST_SUITE("mpfun") {
    TEST_CASE("three-term recurrence") {
        const MPFunParams p{cplx(-0.5, 0.8), 0.3, 1.2};
        for (long n : {-4L, -1L, 0L, 3L})
            for (double x : {-1.5, 0.2, 2.0}) CHECK(std::abs(mp_function_recurrence_residual(n, p, x)) < 1e-10);
    }

    TEST_CASE("orthonormality in the two-component space") {
        const MPFunParams p{cplx(-0.5, 0.8), 0.3, kPi / 2};
        CHECK(rel(mp_function_inner(1, 1, p), 1.0) < 1e-6);
        CHECK(std::abs(mp_function_inner(0, 2, p)) < 1e-6);
        CHECK(std::abs(mp_function_inner(-1, 1, p)) < 1e-6);
    }

    TEST_CASE("Hilbert-space kernel is positive") {
        const MPFunParams p{cplx(-0.5, 0.8), 0.3, 1.1};
        for (double x : {-3.0, 0.0, 2.5}) {
            CHECK(hilbert_w0(p, x) > 0.0);
            CHECK(std::abs(hilbert_w1(p, x)) < 1.0);
        }
    }

    TEST_CASE("star is conjugation on the real line") {
        const MPFunParams p{cplx(-0.5, 0.8), 0.3, 1.1};
        CHECK(rel(mp_function_star(2, p, 0.7), std::conj(mp_function(2, p, 0.7))) < 1e-13);
    }
}
