#pragma once

#include <array>
#include <functional>
#include <vector>

#include "chf/hahn.hpp"

namespace chf {

// Closed form of the coefficient function q_n(rho).
cplx q_n(const HahnParams& p, int n, cplx rho);

// Element (f1, f2) of the spectral space.  The closures are called on [0, rho_max]
// and, in the discrete cases, at the imaginary spectral points.
struct CoeffPair {
    std::function<cplx(cplx)> f1, f2;
};

// (conj q_n, q_n), with the conjugate continued as conj(q_n(conj rho)).
CoeffPair q_pair(const HahnParams& p, int n);

struct DiscreteTerm {
    cplx rho;
    double weight;  // 2 pi i Res W at rho_c, or pi i Res W0 at rho_n
    bool full_kernel;  // rho_c carries the h-kernel, the rho_n do not
};

// The Hilbert space M: a fixed Gauss-Legendre grid on [0, rho_max] for the
// continuous part plus the residue-weighted discrete points.
class SpaceM {
public:
    explicit SpaceM(const HahnParams& p, double rho_max = 30.0, int panels = 60);

    const HahnParams& params() const { return p_; }
    const SpectralData& spectral() const { return sd_; }
    const std::vector<DiscreteTerm>& discrete() const { return disc_; }

    // Grid nodes with weights already multiplied by W(rho); h at each node.
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return wts_; }
    const std::vector<cplx>& h_values() const { return h_; }

private:
    HahnParams p_;
    SpectralData sd_;
    std::vector<double> nodes_, wts_;
    std::vector<cplx> h_;
    std::vector<DiscreteTerm> disc_;
};

cplx inner_M(const CoeffPair& f, const CoeffPair& g, const SpaceM& M);

// (F f)(x) = <f, (phi*_rho(x), phi_rho(x))>_M
cplx forward_F(const CoeffPair& f, const SpaceM& M, double x);

// Same transform for several pairs at once, sharing the phi_rho(x) evaluations.
std::vector<cplx> forward_F_batch(const std::vector<CoeffPair>& fs, const SpaceM& M, double x);

// (G g)(rho) = int g(x) (phi*_rho(x), phi_rho(x)) w(x) dx for a line function g whose
// growth is at most polynomial of degree <= poly_degree.
std::array<cplx, 2> inverse_G(const std::function<cplx(double)>& g, const HahnParams& p, cplx rho,
                              int poly_degree = 8, double abs_tol = 1e-13);

}  // namespace chf
