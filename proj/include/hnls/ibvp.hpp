#ifndef HNLS_IBVP_HPP
#define HNLS_IBVP_HPP

#include <utility>
#include <vector>

#include "hnls/contour.hpp"
#include "hnls/spectral.hpp"
#include "hnls/types.hpp"

// Reduced initial-boundary value problem: q(x, 0) = 0, q(0, t) = g0(t) with
// g0 compactly supported in [0, T'). The solution is the boundary integral
//
//   q(x, t) = -(i / 2 pi) int_Gamma e^{i k x - w(k) t} w'(k) g0~(w(k), T') dk
//
// evaluated on the discretized contour; the node transforms g0~(w(k), T')
// are computed once per node and shared by every (x, t).

namespace hnls::ibvp {

// E_b applied to g - y(0,.) - z(0,.); inputs must share one grid.
GridFunction assemble_g0(const GridFunction& g, const GridFunction& ytrace,
                         const GridFunction& ztrace, double Tprime,
                         int n_out = 0);

struct ReducedOptions {
    int deriv_j = 0;         // extra (ik)^j factor under the integral
    double tail_rtol = 1e-6; // node-envelope decay demanded at truncation
    bool check_tail = true;
    int threads = 1;
};

// Truncation height for the gamma-form contour: the smallest m at which the
// integrand envelope |k|^j |w'(k) g0~(w(k), T')| has decayed below
// tail_rtol relative to its peak. Throws TruncationInsufficient when the
// envelope cannot decay within the resolution limit of the g0 grid.
double auto_truncation(const GridFunction& g0, const PdeParams& params,
                       double lambda, double tail_rtol, int j_max = 0,
                       double M_cap = 0.0);

SpaceTimeField solve_reduced(const GridFunction& g0,
                             const contour::ContourSpec& ct,
                             const PdeParams& params, double xa, double xb,
                             int nx, double ta, double tb, int nt,
                             const ReducedOptions& opts = {});

inline SpaceTimeField reduced_derivative(int j, const GridFunction& g0,
                                         const contour::ContourSpec& ct,
                                         const PdeParams& params, double xa,
                                         double xb, int nx, double ta,
                                         double tb, int nt,
                                         ReducedOptions opts = {}) {
    opts.deriv_j = j;
    return solve_reduced(g0, ct, params, xa, xb, nx, ta, tb, nt, opts);
}

struct GlobalRelationCheck {
    cplx residual;
    double scale;  // magnitude of the largest participating term
};

// e^{w(k)t} q^(k,t) minus the boundary-transform combination; g1~, g2~ are
// rebuilt from one-sided finite-difference boundary derivatives of q.
GlobalRelationCheck global_relation_residual(const SpaceTimeField& q,
                                             const GridFunction& g0, cplx k,
                                             double t, const PdeParams& params);

// Second integral of the representation split; analytically zero.
cplx vanish_check(const SpaceTimeField& q, const contour::ContourSpec& ct,
                  double t, const PdeParams& params, double x_sample = 0.5,
                  double eps_cut = 1e-10);

// Closed-form elimination of the unknown boundary transforms:
// given q^(nu+-, t) and g0~(w(k), t), return (g1~, g2~).
std::pair<cplx, cplx> reconstruct_boundary_transforms(
    cplx qhat_nu_plus, cplx qhat_nu_minus, cplx g0_transform, cplx k, double t,
    const PdeParams& params, const spectral::SpectralClassification& cls,
    double eps_degenerate = 1e-8);

// max over the grid of |gamma_1(m)|^{2j} tau'(m) / (1 + tau(m)^2)^{(j+1)/3}.
double suplem_ratio(int j, const std::vector<double>& m_grid,
                    const PdeParams& params, double lambda);

// K(x, y, z, t) = int_{-inf}^{c_-} e^{i phi(m; x, y, t)} e^{-z s(m)} dm with
// the cubic phase of the abscissa parametrization; |K| ~ |t|^{-1/3}.
cplx oscillatory_kernel_K(double y, double x, double z, double t,
                          const PdeParams& params,
                          const contour::ContourSpec& ct,
                          double quad_tol = 1e-8);

enum class LaplaceDirection { Forward, Adjoint };

struct LaplaceOptions {
    double x_max = 20.0;
    int n_out = 257;
    double m_lo = 0.0;  // used by Adjoint; defaults to c_- - 10
};

// Forward:  x |-> int e^{-x s(m)} f(m) dm   (f on an m-grid up to c_-)
// Adjoint:  m |-> int e^{-x s(m)} f(x) dx   (f on an x-grid in R_+)
GridFunction modified_laplace(const GridFunction& f, LaplaceDirection dir,
                              const PdeParams& params, double lambda,
                              const LaplaceOptions& opts = {});

}  // namespace hnls::ibvp

#endif
