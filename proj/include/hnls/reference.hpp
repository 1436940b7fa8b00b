#ifndef HNLS_REFERENCE_HPP
#define HNLS_REFERENCE_HPP

#include <vector>

#include "hnls/types.hpp"

// Method-of-lines finite-difference oracle on the truncated half-line:
// 4th-order centered interior stencils, Dirichlet injection u(0,t) = g(t),
// cubic extrapolation ghosts at x = 0, a quartic-ramp sponge absorbing the
// last 15% of the domain, and an L-stable two-stage SDIRK time integrator
// with fixed-point inner solves for the nonlinearity. Targets ~2 digits of
// cross-validation accuracy, independent of the transform pipeline.

namespace hnls::reference {

struct FdOptions {
    double sponge_frac = 0.15;
    double sponge_strength = 30.0;
    double inner_tol = 1e-12;
    int max_inner = 60;
};

struct FdDiagnostics {
    double cfl = 0.0;           // beta dt / h^3 (accuracy indicator)
    bool cfl_violation = false; // diagnostic only; the scheme is implicit
    int max_inner_used = 0;
};

SpaceTimeField fd_solve(const GridFunction& u0, const GridFunction& g,
                        const SolverConfig& config, const PdeParams& params,
                        bool nonlinear, const FdOptions& opts = {},
                        FdDiagnostics* diag = nullptr);

struct ConvergenceRow {
    double h;
    double error;
    double order;  // vs the next refinement; 0 for the last row
};

// Self-convergence of fd_solve against its Richardson-extrapolated finest
// run; errors measured in L2 at t = T on the coarsest grid points.
std::vector<ConvergenceRow> convergence_study(const GridFunction& u0,
                                              const GridFunction& g,
                                              const SolverConfig& config,
                                              const PdeParams& params,
                                              bool nonlinear,
                                              int refinements = 3);

}  // namespace hnls::reference

#endif
