#ifndef HNLS_CAUCHY_HPP
#define HNLS_CAUCHY_HPP

#include "hnls/types.hpp"

namespace hnls::cauchy {

// S[y0; 0]: evolve extended initial data on the periodic grid, one spectral
// multiplication per time slice. Slices live on [0, T] with config.Nt nodes.
SpaceTimeField solve_homogeneous(const GridFunction& y0ext,
                                 const SolverConfig& config,
                                 const PdeParams& params);

// S[0; F]: Duhamel solution with forcing sampled on the same grid as the
// output. Mode-wise exponential integrator, exact for forcing spectra that
// are piecewise linear in t; z(., 0) = 0 identically.
SpaceTimeField solve_duhamel(const SpaceTimeField& F,
                             const SolverConfig& config,
                             const PdeParams& params);

// Time series u(0, .) read off the grid (0 must lie in the spatial domain).
GridFunction trace_at_zero(const SpaceTimeField& u);

// Trace y(0, t) on an arbitrary uniform time grid, evaluated in mode space
// (no intermediate field); exact counterpart of solve_homogeneous.
GridFunction homogeneous_trace(const GridFunction& y0ext,
                               const PdeParams& params, double t0, double t1,
                               int nt);

// Trace z(0, t) of the Duhamel solution on a refined uniform grid over
// [F.ta, F.tb]; partial steps are evaluated with the same exponential
// integrator, so the result is consistent with solve_duhamel.
GridFunction duhamel_trace(const SpaceTimeField& F, const PdeParams& params,
                           int nt);

// Oscillatory integral I(x, y, t) = int e^{i k (x-y-t delta) + i t (beta k^3
// - alpha k^2)} dk via reduction to a cubic (Airy-type) phase, panels graded
// by the phase between stationary points, and integration-by-parts tail
// corrections. |I| ~ |beta t|^{-1/3}.
cplx dispersive_kernel(double x, double y, double t, const PdeParams& params,
                       double quad_tol = 1.0e-6);

}  // namespace hnls::cauchy

#endif
