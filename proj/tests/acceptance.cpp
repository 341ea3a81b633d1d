// Runs the fourteen acceptance criteria and prints one PASS/FAIL line for each.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "chf/checks.hpp"
#include "chf/errors.hpp"

using namespace chf;

int main() {
    struct Criterion {
        const char* title;
        std::function<std::vector<CheckResult>()> run;
    };
    const std::vector<Criterion> criteria = {
        {"Meixner-Pollaczek orthonormality", check_mp_orthonormality},
        {"continuous dual Hahn orthonormality with masses", check_cdh_orthonormality},
        {"Meixner-Pollaczek difference equation", check_mp_difference},
        {"Meixner-Pollaczek functions orthonormal in H", check_mp_function_orthonormality},
        {"continuous Hahn eigenfunctions of Lambda", check_hahn_eigen},
        {"c-function expansion", [] { return check_c_expansion(); }},
        {"Green identity for Lambda", check_green_identity},
        {"bilinear summation formula", [] { return check_bilinear_sum(); }},
        {"Laguerre limit of the summation", [] { return check_laguerre_limit(); }},
        {"q_n as transform of p_n", check_q_coefficients},
        {"Hahn transform reproduction and unitarity", [] { return check_transform(); }},
        {"discrete inner products", check_discrete_inner},
        {"discrete and continuous spectrum orthogonal", check_discrete_orthogonality},
        {"su(1,1) structure", check_su11_structure},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<CheckResult> rs;
        std::string error;
        try {
            rs = criteria[i].run();
        } catch (const Error& e) {
            error = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool ok = error.empty() && !rs.empty() && all_pass(rs);
        double worst_ratio = 0.0;
        const CheckResult* worst = nullptr;
        for (const auto& r : rs)
            if (r.residual / r.tolerance >= worst_ratio) {
                worst_ratio = r.residual / r.tolerance;
                worst = &r;
            }
        if (!ok) ++failed;
        if (worst)
            std::printf("%s [%2zu] %s: worst %s residual %.2e (tol %.0e) %.1fs\n", ok ? "PASS" : "FAIL", i + 1,
                        criteria[i].title, worst->check.c_str(), worst->residual, worst->tolerance, secs);
        else
            std::printf("%s [%2zu] %s: %s\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].title, error.c_str());
        for (const auto& r : rs)
            std::printf("       %-40s %.2e / %.0e  %s%s\n", r.check.c_str(), r.residual, r.tolerance, r.parameters.c_str(),
                        r.pass ? "" : "  <-- over tolerance");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
