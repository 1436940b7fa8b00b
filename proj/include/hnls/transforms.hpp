#ifndef HNLS_TRANSFORMS_HPP
#define HNLS_TRANSFORMS_HPP

#include "hnls/types.hpp"

namespace hnls::transforms {

// Half-line Fourier transform integral_0^L e^{-ikx} f(x) dx, Im(k) <= 0.
// Truncating at L is justified only when |f| has decayed at the right
// endpoint: |f(L)| <= decay_tol * max|f| or TailTooLarge is thrown.
cplx half_line_ft(const GridFunction& f, cplx k, double decay_tol = 1.0e-8);

// e^{-omega(k) t} multiplier on the periodic spectral grid (FFT pipeline).
GridFunction whole_line_propagator_apply(const GridFunction& f, double t,
                                         const PdeParams& params);

// integral_0^{t_end} e^{kappa t'} h(t') dt' for a temporal grid function.
cplx time_transform(const GridFunction& h, cplx kappa, double t_end);

enum class ExtensionPolicy { C2Reflection, Zero, Auto };

// E_0: extend data on [0, L] to [-L, L]. The default C2Reflection uses the
// three-term reflection u(-x) = 6 u(x) - 8 u(2x) + 3 u(3x), which matches
// value, first and second derivative at x = 0 (covers s <= 2). Zero is the
// bounded choice for s < 1/2; Auto picks by the regularity exponent s.
GridFunction extend_initial(const GridFunction& u0,
                            ExtensionPolicy policy = ExtensionPolicy::C2Reflection,
                            double s = 1.0);

// E_b: extend data on [0, T] to [0, T'] with supp inside [0, T'): constant
// continuation times a smooth cutoff that vanishes identically on the last
// quarter gap [T' - eta, T'], eta = (T' - T)/4.
GridFunction extend_boundary(const GridFunction& g, double Tprime,
                             int n_out = 0);

// Smooth transition 1 -> 0 as s runs 0 -> 1 (C-infinity step).
double smooth_step_down(double s);

// Cubic (4-point Lagrange) interpolation of a grid function; clamps to the
// interval.
cplx sample(const GridFunction& f, double x);

// Resample onto a new uniform grid via `sample`.
GridFunction resample(const GridFunction& f, double a, double b, int n);

}  // namespace hnls::transforms

#endif
