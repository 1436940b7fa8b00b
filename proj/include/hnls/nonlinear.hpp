#ifndef HNLS_NONLINEAR_HPP
#define HNLS_NONLINEAR_HPP

#include <string>
#include <vector>

#include "hnls/types.hpp"

// Reunified solution operator
//   Phi u = y|_{Q_T} + z^u|_{Q_T} + q^u|_{(0,T)},
// y the free evolution of the extended initial datum, z^u the Duhamel
// solution with forcing f(Eu), and q^u the reduced problem driven by
// g0^u = E_b[g - y(0,.) - z^u(0,.)]. Fixed points solve the nonlinear
// problem; the Picard iteration monitors contraction ratios and halves the
// horizon (restarting from the attained slice) when they do not contract.

namespace hnls::nonlinear {

inline cplx nonlinearity(cplx u, const PdeParams& params) {
    return params.kappa * std::pow(std::abs(u), params.p) * u;
}

struct PhiResult {
    SpaceTimeField field;       // on [0, L] x [0, T]
    GridFunction g0;            // assembled reduced boundary datum
    double lambda = 0.0;
    double truncation_M = 0.0;
};

// One application of Phi. `u` lives on [0, L] x [0, T]; g may be sampled on
// any grid over [0, T] (resampled internally). s selects the extension
// operators.
PhiResult phi_map(const SpaceTimeField& u, const GridFunction& u0,
                  const GridFunction& g, double s, const SolverConfig& config,
                  const PdeParams& params);

struct PicardDiagnostics {
    std::vector<double> distances;
    std::vector<double> ratios;
    int iterations = 0;
    int horizon_splits = 0;
    bool converged = false;
    double final_distance = 0.0;
    double fixed_point_tol = 0.0;
    double quad_tol = 0.0;
    double contour_tail_rtol = 0.0;
    std::string note;
};

struct PicardResult {
    SpaceTimeField field;
    PicardDiagnostics diagnostics;
};

PicardResult picard_solve(const GridFunction& u0, const GridFunction& g,
                          double s, const SolverConfig& config,
                          const PdeParams& params);

// Discrete residual of i u_t + i b u_xxx + a u_xx + i d u_x - f(u) over
// interior points, centered second-order stencils.
double residual_check(const SpaceTimeField& u, const PdeParams& params);

}  // namespace hnls::nonlinear

#endif
