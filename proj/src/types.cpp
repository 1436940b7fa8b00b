#include "hnls/types.hpp"

#include <cmath>

namespace hnls {

void PdeParams::validate() const {
    if (!(beta > 0.0))
        throw ConfigError("beta must be positive: a single boundary condition "
                          "at x = 0 requires beta > 0");
    if (!(p > 0.0)) throw ConfigError("nonlinearity power p must be positive");
    for (double v : {alpha, beta, delta, p, kappa.real(), kappa.imag()})
        if (!std::isfinite(v)) throw ConfigError("non-finite PDE parameter");
}

void GridFunction::validate(const char* who) const {
    if (values.size() < 2)
        throw ConfigError(std::string(who) + ": grid needs at least 2 samples");
    if (!(b > a))
        throw ConfigError(std::string(who) + ": empty grid interval");
    for (const cplx& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw ConfigError(std::string(who) + ": non-finite sample");
}

void SolverConfig::validate() const {
    if (!(T > 0.0)) throw ConfigError("T must be positive");
    if (!(Tprime > T)) throw ConfigError("Tprime must exceed T");
    if (!(L > 0.0)) throw ConfigError("L must be positive");
    if (Nx < 16 || Nt < 16) throw ConfigError("Nx, Nt must be at least 16");
    if (Nt_boundary < 16) throw ConfigError("Nt_boundary must be at least 16");
    for (double v : {contour_density, quad_tol, tail_tol, eps_cut, decay_tol,
                     fixed_point_tol})
        if (!(v > 0.0)) throw ConfigError("tolerances must be positive");
    if (!(lambda_margin > 1.0)) throw ConfigError("lambda_margin must exceed 1");
    if (gl_order < 2 || gl_order > 32)
        throw ConfigError("gl_order out of range [2, 32]");
    if (max_picard < 1) throw ConfigError("max_picard must be positive");
}

}  // namespace hnls
