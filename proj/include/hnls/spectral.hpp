#ifndef HNLS_SPECTRAL_HPP
#define HNLS_SPECTRAL_HPP

#include <optional>
#include <utility>

#include "hnls/types.hpp"

// Spectral function omega(k) = -i beta k^3 + i alpha k^2 + i delta k, its
// symmetry roots nu_pm (the nontrivial solutions of omega(nu) = omega(k)),
// and the region D+ = {Im k > 0 : Re omega(k) < 0}.
//
// The symmetries involve the square root of (k - b_+)(k - b_-) with branch
// points b_pm = (alpha -/+ 2 sqrt(disc)) / (3 beta), disc = alpha^2 + 3
// beta delta. Branch selection:
//
//   disc > 0:  k - b_- = |k - b_-| e^{i th_-},  th_- in (-pi, pi],
//              k - b_+ = |k - b_+| e^{i th_+},  th_+ in [0, 2 pi),
//              sqrt = sqrt(|k - b_+||k - b_-|) e^{i (th_+ + th_-)/2};
//              cuts are the real rays (-inf, b_-] and [b_+, inf).
//
//   disc < 0:  k - b_pm = |k - b_pm| e^{i (th_pm - pi/2)}, th_pm in [0, 2 pi),
//              sqrt = sqrt(|k - b_+||k - b_-|) e^{i (th_+ + th_- - pi)/2};
//              the cut is the vertical segment joining b_- to b_+.
//
//   disc = 0:  no branching; nu_pm are entire.
//
// All functions here are pure.

namespace hnls::spectral {

struct SpectralClassification {
    double discriminant = 0.0;
    DiscCase disc_case = DiscCase::ZeroDisc;
    std::optional<std::pair<cplx, cplx>> branch_points;  // (b-, b+)
    double alpha = 0.0, beta = 1.0, delta = 0.0;         // copied from params
    std::string cut_description;
};

SpectralClassification classify(const PdeParams& params);

cplx omega(cplx k, const PdeParams& params);
cplx omega_prime(cplx k, const PdeParams& params);

// Distance from k to the branch cut; +inf when there is none (disc = 0).
double cut_distance(cplx k, const SpectralClassification& cls);

// Single-valued square root of (k - alpha/(3 beta))^2 - 4 disc / (9 beta^2)
// per the conventions above. Throws OnBranchCut when dist(k, cut) < eps_cut;
// eps_cut = 0 evaluates the literal convention everywhere off the branch
// points themselves.
cplx sqrt_branch(cplx k, const SpectralClassification& cls,
                 double eps_cut = 1.0e-10);

enum class Sign { Plus, Minus };

cplx nu_pm(cplx k, const SpectralClassification& cls, const PdeParams& params,
           Sign sign, double eps_cut = 1.0e-10);

// Both roots at once; cheaper when a caller needs the pair.
std::pair<cplx, cplx> nu_both(cplx k, const SpectralClassification& cls,
                              const PdeParams& params,
                              double eps_cut = 1.0e-10);

bool in_D_plus(cplx k, const PdeParams& params);

// Value of the defining quadratic form 3(Re k - a)^2 - (Im k)^2 - disc/(3b^2);
// D+ is {Im k > 0, form < 0} and its closure relaxes both to <=/>=.
double d_plus_form(cplx k, const PdeParams& params);

bool in_D_plus_closure(cplx k, const PdeParams& params, double slack = 0.0);

}  // namespace hnls::spectral

#endif
