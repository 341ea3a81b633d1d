#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace chf {

// One verified identity: the measured residual against its tolerance.
struct CheckResult {
    std::string check;
    std::string parameters;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

CheckResult make_check(std::string check, std::string parameters, double residual, double tolerance);
bool all_pass(const std::vector<CheckResult>& rs);

// Meixner-Pollaczek orthonormality, m, n <= 8, over a (lambda, phi) grid.
std::vector<CheckResult> check_mp_orthonormality();
// Continuous dual Hahn orthonormality with and without a discrete mass, m, n <= 6.
std::vector<CheckResult> check_cdh_orthonormality();
// Meixner-Pollaczek difference equation at points of the strip, n <= 8.
std::vector<CheckResult> check_mp_difference();
// Orthonormality of (u_n, u_n^*) in the two-component space, |m|, |n| <= 3.
std::vector<CheckResult> check_mp_function_orthonormality();

// Lambda f = (rho^2 + 1/4) f for phi_rho, phi*_rho, Phi_rho, Phi_{-rho}.
std::vector<CheckResult> check_hahn_eigen();
// phi_rho = c(rho) Phi_rho + c(-rho) Phi_{-rho} at random (rho, x).
std::vector<CheckResult> check_c_expansion(std::uint64_t seed = 20261016);
// Green identity for Lambda on polynomials of degree <= 5.
std::vector<CheckResult> check_green_identity();

struct SumCheckOptions {
    long n_terms = 100000;
    bool tail_model = true;
    long raw_terms = 1000000;  // second, unaccelerated run when the tail model is on
};
// Bilinear Meixner-Pollaczek summation, its p <-> -p form and a mass point of the measure.
std::vector<CheckResult> check_bilinear_sum(const SumCheckOptions& opt = {});
// Laguerre limit of the bilinear sum.
std::vector<CheckResult> check_laguerre_limit(const SumCheckOptions& opt = {});

// Closed-form q_n against quadrature of p_n phi*_rho w.
std::vector<CheckResult> check_q_coefficients();
// F(q_n) = p_n and unitarity of F for the spectral cases "i", "ii", "iii" (or "all").
std::vector<CheckResult> check_transform(const std::string& which = "all", int panels = 15);

// Discrete inner products: closed form vs quadrature vs numerical residue.
std::vector<CheckResult> check_discrete_inner();
// <phi_{rho_n}, phi_sigma> = 0 for sigma on the continuous spectrum.
std::vector<CheckResult> check_discrete_orthogonality();

// Commutation relations, Casimir scalars, difference realizations and the tensor Casimir.
std::vector<CheckResult> check_su11_structure();

}  // namespace chf
