#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "chf/hahn.hpp"
#include "chf/orthopoly.hpp"

namespace chf {

enum class RepFamily { DiscretePos, DiscreteNeg, Principal, Complementary };

// Irreducible unitary representation of su(1,1).  k is used by the discrete
// series, (rho, eps) by the principal and (lambda, eps) by the complementary series.
struct RepLabel {
    RepFamily family;
    double k = 0.0;
    double rho = 0.0;
    double lambda = 0.0;
    double eps = 0.0;

    static RepLabel pos(double k) { return {RepFamily::DiscretePos, k}; }
    static RepLabel neg(double k) { return {RepFamily::DiscreteNeg, k}; }
    static RepLabel principal(double rho, double eps) { return {RepFamily::Principal, 0.0, rho, 0.0, eps}; }
    static RepLabel complementary(double lambda, double eps) {
        return {RepFamily::Complementary, 0.0, 0.0, lambda, eps};
    }

    void validate() const;
    bool discrete() const { return family == RepFamily::DiscretePos || family == RepFamily::DiscreteNeg; }
    double casimir() const;
};

enum class Generator { H, B, C, Omega, XPhi };

// Matrix of a generator on the basis e_first, ..., e_{first+dim-1}: indices
// 0..N for the discrete series, -N..N otherwise.
struct TruncatedOp {
    Eigen::MatrixXcd m;
    int first_index = 0;
    int bandwidth = 1;

    int dim() const { return int(m.rows()); }
};

// phi is only read for X_phi = -cos(phi) H + B - C.
TruncatedOp rep_action(Generator gen, const RepLabel& r, int N, double phi = kPi / 2);

// Largest |entry| of [X,Y] - Z over rows and columns 1..dim-2.
double interior_defect(const Eigen::MatrixXcd& commutator, const Eigen::MatrixXcd& expected);

// Largest deviation from [H,B] = 2B, [H,C] = -2C, [B,C] = H on the interior.
double commutator_defect(const RepLabel& r, int N);

// Largest interior deviation of -(H^2 + 2H + 4CB)/4 from the Casimir scalar.
double casimir_defect(const RepLabel& r, int N);

// max over rows 0..N-1 of |((X_phi -+ 2x sin phi) P)(n)|, P_n = P_n^{(k)}(x; phi).
double mp_eigen_residual(const RepLabel& r, double phi, double x, int N);

// Difference operators realizing H, B, C on polynomials in x (upper sign
// for the positive, lower for the negative discrete series).
enum class Series { Pos, Neg };
cplx diff_realization(Generator gen, Series s, double k, double phi, const StripFn& f, cplx x);
// Same operator as a function, so realizations compose.
StripFn diff_realized(Generator gen, Series s, double k, double phi, StripFn f);

// Largest |([H,B]-2B)f|, |([H,C]+2C)f|, |([B,C]-H)f| over polynomial test functions of
// degree <= max_degree, sampled at a few points in the strip.
double diff_commutator_defect(Series s, double k, double phi, int max_degree = 5);

// Tensor-product Casimir acting on f(x, t) with x1 = x + t, x2 = x.
using TwoVarFn = std::function<cplx(cplx, cplx)>;
cplx casimir_tensor_apply(double k1, double k2, double phi, const TwoVarFn& f, cplx x, double t);

// 1 (x) Omega + Omega (x) 1 - H (x) H / 2 - (C (x) B + B (x) C) applied to F1(x1) F2(x2)
// through the difference realizations (positive in x1, negative in x2).
cplx coproduct_casimir_apply(double k1, double k2, double phi, const StripFn& F1, const StripFn& F2, cplx x1,
                             cplx x2);

// Largest interior deviation between the coproduct of the truncated generators and
// the expanded formula for Delta(Omega), on pos(k1) (x) neg(k2).
double coproduct_defect(double k1, double k2, int N);

struct DecompPlan {
    double k1, k2;
    int L;           // eps = k1 - k2 + L in [0, 1)
    double eps;
    bool has_complementary;
    double lambda_comp;             // -k1 - k2, meaningful when has_complementary
    std::vector<double> neg_series;  // labels k2 - k1 - j of the discrete summands
};

DecompPlan make_plan(double k1, double k2);

// Parameters of S_n(y; p) and the measure dmu(y; p).
CDHParams sector_params(const DecompPlan& plan, int p);

// (-1)^{n2} int S_n(y; n1-n2) f(y) dmu(y; n1-n2), n = min(n1, n2).
cplx intertwiner_J(const DecompPlan& plan, int n1, int n2, const std::function<cplx(double)>& f);

// <J(e_n1 (x) e_n2), J(e_m1 (x) e_m2)>; zero across sectors.
double intertwiner_gram(const DecompPlan& plan, int n1, int n2, int m1, int m2);

// Coefficients of J^*(f (x) e_{r-L}) on e_p (x) e_{p-r} (r <= 0) or e_{p+r} (x) e_p (r >= 0), p = 0..pmax.
std::vector<cplx> intertwiner_J_star(const DecompPlan& plan, int r, const std::function<cplx(double)>& f, int pmax);

// Clebsch-Gordan factor m(rho) for the hyperbolic bases.
cplx cg_kernel_m(const DecompPlan& plan, double phi, double rho, double x1, double x2);

struct SumCheck {
    cplx lhs, rhs;
    double rel_err;
};

struct SumOptions {
    long n_terms = 100000;
    bool tail_model = true;
    int orders = 2;        // powers n^{-3/2-j}, j < orders, per frequency
    double max_condition = 1e12;
};

// sum_n s_n(rho^2) p_{n+p}^{(k1)}(x1) p_n^{(k2)}(x2) / ((2k1)_{p+n} (2k2)_n) against the
// closed form.  rho may be imaginary at a mass point of the measure.
SumCheck bilinear_sum_check(double k1, double k2, int p, double x1, double x2, double phi, cplx rho,
                            const SumOptions& opt = {});
// Partial sum over n < n_terms of the same series (direct terms, any p).
cplx bilinear_partial_sum(double k1, double k2, int p, double x1, double x2, double phi, cplx rho, long n_terms);
cplx bilinear_rhs(double k1, double k2, int p, double x1, double x2, double phi, cplx rho);

// Laguerre limit: sum_n s_n L_{n+p}^{(2k1-1)}(x1) L_n^{(2k2-1)}(x2) / ((2k1)_{p+n} (2k2)_n).
SumCheck laguerre_limit_check(double k1, double k2, int p, double x1, double x2, double rho,
                              const SumOptions& opt = {});
cplx laguerre_partial_sum(double k1, double k2, int p, double x1, double x2, double rho, long n_terms);
cplx laguerre_rhs(double k1, double k2, int p, double x1, double x2, double rho);

}  // namespace chf
