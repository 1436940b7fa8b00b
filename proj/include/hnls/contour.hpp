#ifndef HNLS_CONTOUR_HPP
#define HNLS_CONTOUR_HPP

#include <functional>
#include <utility>
#include <vector>

#include "hnls/spectral.hpp"
#include "hnls/types.hpp"

// Integration contours for the boundary integral representation: the
// positively oriented boundary of D+ (disc > 0) or of the deformed region
// D~+ (disc <= 0, bottom raised to height lambda so the vertical branch cut
// and the zero of nu_- - nu_+ stay strictly below the path).
//
// Two closed-form parametrizations of the same point set are provided:
//   gamma_j(m):  height-parametrized branches plus the horizontal bottom,
//   Gamma_j(m):  abscissa-parametrized graph Im k = s(Re k).

namespace hnls::contour {

enum class SegmentKind {
    GammaLeft,
    GammaBottom,
    GammaRight,
    BigGammaLeft,
    BigGammaBottom,
    BigGammaRight,
};

enum class Form { Gamma, BigGamma };

// lambda = 0 for disc > 0; lambda = margin * lower bound otherwise.
double select_lambda(const spectral::SpectralClassification& cls,
                     const PdeParams& params, double margin);

// Corner abscissae c_pm = (alpha -/+ sqrt(3 b^2 l^2 + disc)) / (3 beta).
std::pair<double, double> c_pm(const PdeParams& params, double lambda);

// (k(m), k'(m)) for the height parametrization, j in {1, 2, 3}.
std::pair<cplx, cplx> gamma_path(int j, double m, const PdeParams& params,
                                 double lambda);

// (k(m), k'(m)) for the abscissa parametrization, j in {1, 2, 3}.
std::pair<cplx, cplx> big_gamma_path(int j, double m, const PdeParams& params,
                                     double lambda);

struct PathSegment {
    SegmentKind kind;
    double m_a, m_b;    // parameter interval (increasing)
    int direction;      // +1 traverses a -> b, -1 traverses b -> a

    std::pair<cplx, cplx> eval(double m, const PdeParams& params,
                               double lambda) const;
};

struct ContourNode {
    cplx k;
    cplx dk;    // k'(m) including traversal orientation
    double w;   // positive quadrature weight in m
    double m;   // parameter value along the segment
};

struct ContourBuildOptions {
    Form form = Form::Gamma;
    double T_ref = 2.0;    // transform horizon entering the phase budget
    double x_ref = 20.0;   // spatial extent entering the phase budget
    int gl_order = 6;
    double eps_cut = 1.0e-10;
    double eps_geom = 1.0e-6;  // required clearance from alpha/(3 beta)
};

struct ContourSpec {
    double lambda = 0.0;
    double c_minus = 0.0, c_plus = 0.0;
    double truncation_M = 0.0;
    double density = 1.0;
    Form form = Form::Gamma;
    PdeParams params;
    std::vector<PathSegment> segments;
    std::vector<ContourNode> nodes;
    double cut_clearance = 0.0;  // min distance of nodes to cut (metadata)

    // sum of f(k) dk w over nodes in traversal order
    cplx integrate(const std::function<cplx(cplx)>& f) const;

    void validate(double re_omega_tol = 1.0e-10) const;
};

ContourSpec build_contour(const spectral::SpectralClassification& cls,
                          const PdeParams& params, double lambda, double M,
                          double density,
                          const ContourBuildOptions& opts = {});

}  // namespace hnls::contour

#endif
