#include <doctest.h>

#include "chf/chtransform.hpp"
#include "chf/orthopoly.hpp"
#include "near.hpp"

using namespace chf;

TEST_SUITE("chtransform") {
    TEST_CASE("q_n against mpmath") {
        CHECK(rel(q_n({1.3, 0.9, 0.4, kPi / 2}, 2, 0.8), cplx(-0.061454779484456754, 0.10470145755901467)) < 1e-11);
        CHECK(rel(q_n({1.6, 0.4, -0.3, 1.1}, 3, 1.4), cplx(2.4747702162151329, -2.4984780672966638)) < 1e-11);
    }

    TEST_CASE("inverse transform of p_n gives q_n") {
        const HahnParams p{0.7, 0.9, 0.3, 1.1};
        const MPParams mp{p.k2, p.phi};
        for (int n : {0, 2}) {
            const auto G = inverse_G([&](double x) { return mp_poly(n, mp, x); }, p, 0.9, n);
            const cplx q = q_n(p, n, 0.9);
            CHECK(rel(G[1], q) < 1e-8);
            CHECK(rel(G[0], std::conj(q)) < 1e-8);
        }
    }

    TEST_CASE("q_pair continues the conjugate") {
        const HahnParams p{1.3, 0.9, 0.4, 1.1};
        const CoeffPair c = q_pair(p, 1);
        CHECK(rel(c.f1(0.6), std::conj(q_n(p, 1, 0.6))) < 1e-14);
    }

    TEST_CASE("forward transform of q_0 is 1") {
        const HahnParams p{1.3, 0.9, 0.4, kPi / 2};
        const SpaceM M(p, 30.0, 10);
        CHECK(M.discrete().empty());
        CHECK(rel(forward_F(q_pair(p, 0), M, 0.5), 1.0) < 1e-6);
    }
}
