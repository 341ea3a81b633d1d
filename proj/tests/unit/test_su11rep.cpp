#include <doctest.h>

#include <cmath>

#include "chf/mpfun.hpp"
#include "chf/su11rep.hpp"
#include "near.hpp"

using namespace chf;

TEST_SUITE("su11rep") {
    TEST_CASE("commutators and Casimir of truncated representations") {
        for (const RepLabel& r : {RepLabel::pos(0.7), RepLabel::neg(1.3), RepLabel::principal(0.8, 0.3),
                                  RepLabel::complementary(-0.3, 0.2)}) {
            CHECK(commutator_defect(r, 12) < 1e-12);
            CHECK(casimir_defect(r, 12) < 1e-12);
        }
    }

    TEST_CASE("Meixner-Pollaczek polynomials diagonalize X_phi") {
        CHECK(mp_eigen_residual(RepLabel::pos(0.9), 1.1, 0.6, 20) < 1e-11);
        CHECK(mp_eigen_residual(RepLabel::neg(0.9), 1.1, 0.6, 20) < 1e-11);
    }

    TEST_CASE("difference realizations") {
        CHECK(diff_commutator_defect(Series::Pos, 0.8, 1.2) < 1e-12);
        CHECK(diff_commutator_defect(Series::Neg, 1.1, 1.2) < 1e-12);
        CHECK(coproduct_defect(0.8, 1.1, 10) < 1e-12);
    }

    TEST_CASE("J is an isometry on the first sectors") {
        const DecompPlan plan = make_plan(1.3, 0.9);
        CHECK(std::abs(intertwiner_gram(plan, 2, 1, 2, 1) - 1.0) < 1e-10);
        CHECK(std::abs(intertwiner_gram(plan, 2, 1, 3, 2)) < 1e-10);
        CHECK(intertwiner_gram(plan, 2, 1, 1, 1) == 0.0);
    }

    TEST_CASE("J* reproduces the basis coefficients") {
        const DecompPlan plan = make_plan(1.3, 0.9);
        // r = 1 sector: f = S_2 in y picks out the p = 2 coefficient
        const int r = 1;
        const CDHParams c = sector_params(plan, r);
        const auto coef = intertwiner_J_star(plan, r, [&](double y) { return cdh_orthonormal(2, c, y); }, 4);
        REQUIRE(coef.size() == 5);
        for (int p = 0; p <= 4; ++p) CHECK(std::abs(std::abs(coef[size_t(p)]) - (p == 2 ? 1.0 : 0.0)) < 1e-8);
    }

    TEST_CASE("Clebsch-Gordan factor against the spectral weight") {
        const double k1 = 1.3, k2 = 0.9, t = 0.4, phi = kPi / 2, x2 = -0.2;
        const DecompPlan plan = make_plan(k1, k2);
        const HahnParams hp{k1, k2, t, phi};
        double first = 0.0;
        for (double rho : {0.3, 0.8, 2.0}) {
            const cplx m = cg_kernel_m(plan, phi, rho, x2 + t, x2);
            const MPFunParams q{cplx(-0.5, rho), plan.eps, phi};
            const double w0 = hilbert_w0(q, t);
            const cplx w1 = hilbert_w1(q, t);
            const SpectralWeights sw = spectral_weights(hp, rho);
            CHECK(std::abs(std::abs(w1) - std::abs(sw.h)) < 1e-10);
            const double ratio = 2.0 * kPi * std::norm(m) / (w0 * (1.0 - std::norm(w1))) / sw.W;
            if (first == 0.0) first = ratio;
            CHECK(std::abs(ratio / first - 1.0) < 1e-10);
        }
    }

    TEST_CASE("bilinear summation and its Laguerre limit against mpmath") {
        CHECK(rel(bilinear_rhs(0.8, 1.1, 1, 0.4, -0.2, kPi / 2, 0.6), 1.2548949440937272) < 1e-10);
        CHECK(rel(bilinear_rhs(0.8, 1.1, 0, 0.4, -0.2, kPi / 3, 0.6), 1.5164041379563551) < 1e-10);
        CHECK(rel(bilinear_rhs(1.3, 0.9, 2, 0.7, 0.1, 1.1, 0.8), 0.49966400831438768) < 1e-10);
        CHECK(rel(laguerre_rhs(0.8, 1.1, 0, 3.0, 1.0, 0.6), 0.175726693912957) < 1e-10);
        CHECK(rel(laguerre_rhs(0.8, 1.1, 1, 3.0, 1.0, 0.6), -1.0304975719330965) < 1e-10);
        CHECK(rel(laguerre_rhs(1.3, 0.7, 1, 2.0, 0.5, 0.9), 0.094636363764989048) < 1e-10);
        const SumCheck s = bilinear_sum_check(0.8, 1.1, 1, 0.4, -0.2, kPi / 2, 0.6);
        CHECK(s.rel_err < 1e-7);
    }
}
