#include <doctest.h>

#include "chf/errors.hpp"
#include "chf/numkernel.hpp"
#include "near.hpp"

using namespace chf;

// Reference values from mpmath at 40 digits.
TEST_SUITE("numkernel") {
    TEST_CASE("gamma family") {
        CHECK(rel(chf::gamma(cplx(0.3, 1.7)), cplx(0.071091832537680394, -0.1393774232623229)) < 1e-13);
        CHECK(rel(chf::gamma(-3.2), 0.68905641200597905) < 1e-13);
        CHECK(rel(std::exp(log_gamma(cplx(-2.5, 0.4))), std::exp(cplx(-0.67126841537903435, -8.9823668857205561))) < 1e-13);
        CHECK(std::abs(rgamma(-4.0)) == 0.0);
        CHECK(rel(pochhammer(cplx(0.7, 0.2), 5), cplx(49.64247, 31.53122)) < 1e-14);
        CHECK(is_nonpositive_integer(-3.0));
        CHECK_FALSE(is_nonpositive_integer(cplx(-3.0, 1e-6)));
    }

    TEST_CASE("Gauss hypergeometric function") {
        CHECK(rel(hyp2F1_cut(cplx(0.3, 1), cplx(0.3, -1), 1.7, -2.5), 0.25942860882859465) < 1e-12);
        CHECK(rel(hyp2F1_cut(0.4, 0.9, 1.6, cplx(0.5, 0.5)), cplx(1.0787733702779083, 0.17882413203936637)) < 1e-12);
        // near the ring |z| = 1, |1 - z| small
        CHECK(rel(hyp2F1_cut(cplx(0.6, 0.2), 1.1, 2.3, cplx(0.9, 0.45)), cplx(1.0846066217536076, 0.44097809671844978)) < 1e-11);
    }

    TEST_CASE("3F2 at unit argument") {
        const cplx v = hyp3F2_unit(cplx(0.4, 0.5), 0.9, 0.9, 1.8, cplx(2.2, 0.3));
        CHECK(rel(v, cplx(1.1270468105496674, 0.16455441202317222)) < 1e-11);
        // terminating case agrees with a direct finite sum
        const cplx t = hyp_pFq({-3.0, 0.5, 1.5}, {2.0, 2.5}, 1.0);
        cplx s = 0.0, term = 1.0;
        for (int k = 0; k <= 3; ++k) {
            s += term;
            term *= (-3.0 + k) * (0.5 + k) * (1.5 + k) / ((2.0 + k) * (2.5 + k) * (k + 1.0));
        }
        CHECK(rel(t, s) < 1e-14);
    }

    TEST_CASE("confluent functions") {
        CHECK(rel(hyp1F1(cplx(0.3, 0.6), 1.4, 2.5), cplx(1.2680162999131981, 2.8227603004361186)) < 1e-12);
        CHECK(rel(confluent_U(cplx(0.3, 0.6), cplx(1.4, 1.2), 2.5), cplx(0.60672002164862222, -0.30674329507344902)) < 1e-11);
        CHECK(rel(confluent_U(cplx(-0.7, 0.6), cplx(1.0, 1.2), 7.0), cplx(1.351613389815208, -3.1681181106717255)) < 1e-10);
        CHECK_THROWS_AS(confluent_U(0.5, 2.0, 1.0), Error);
    }

    TEST_CASE("Hurwitz zeta tail") {
        CHECK(rel(hurwitz_zeta_tail(cplx(1.5, 0.8), 1000), cplx(0.032445815803511568, -0.008451426562402207)) < 1e-12);
        CHECK(rel(hurwitz_zeta_tail(cplx(2.5, -3.0), 5000), cplx(3.8032272357356018e-8, 8.4254260772273538e-7)) < 1e-11);
    }

    TEST_CASE("Bernoulli numbers") {
        const auto& b = bernoulli_numbers(10);
        CHECK(b[1] == doctest::Approx(-0.5));
        CHECK(b[2] == doctest::Approx(1.0 / 6));
        CHECK(b[10] == doctest::Approx(5.0 / 66));
        CHECK(rel(bernoulli_poly(3, 0.25), 0.25 * 0.25 * 0.25 - 1.5 * 0.0625 + 0.5 * 0.25) < 1e-14);
    }
}
