#include "hnls/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hnls/quadrature.hpp"

namespace hnls::contour {

using spectral::SpectralClassification;

double select_lambda(const SpectralClassification& cls,
                     const PdeParams& params, double margin) {
    if (!(margin > 1.0)) throw ConfigError("select_lambda: margin must exceed 1");
    const double d = params.discriminant();
    if (d > 0.0) return 0.0;
    if (d < 0.0) return margin * 2.0 * std::sqrt(-d) / (3.0 * params.beta);
    (void)cls;
    return margin * 1.0;  // any positive value is admissible at zero disc
}

std::pair<double, double> c_pm(const PdeParams& params, double lambda) {
    const double rad = 3.0 * params.beta * params.beta * lambda * lambda +
                       params.discriminant();
    if (rad < 0.0)
        throw NegativeRadicand("c_pm: 3 b^2 l^2 + disc < 0; lambda too small");
    const double r = std::sqrt(rad);
    const double b3 = 3.0 * params.beta;
    return {(params.alpha - r) / b3, (params.alpha + r) / b3};
}

std::pair<cplx, cplx> gamma_path(int j, double m, const PdeParams& params,
                                 double lambda) {
    const double b = params.beta;
    if (j == 2) return {cplx(m, lambda), cplx(1.0, 0.0)};
    if (j != 1 && j != 3) throw OutOfInterval("gamma_path: j must be 1, 2 or 3");
    if (m < lambda - 1e-12 * (1.0 + std::abs(lambda)))
        throw OutOfInterval("gamma_path: m below lambda on a branch segment");
    const double rad = 3.0 * b * b * m * m + params.discriminant();
    if (rad < 0.0)
        throw NegativeRadicand("gamma_path: negative radicand; lambda violates "
                               "the admissibility bound");
    const double R = std::sqrt(rad);
    const double sgn = (j == 3) ? 1.0 : -1.0;
    const cplx k((params.alpha + sgn * R) / (3.0 * b), m);
    const cplx kp(sgn * b * m / R, 1.0);
    return {k, kp};
}

std::pair<cplx, cplx> big_gamma_path(int j, double m, const PdeParams& params,
                                     double lambda) {
    if (j == 2) return {cplx(m, lambda), cplx(1.0, 0.0)};
    if (j != 1 && j != 3)
        throw OutOfInterval("big_gamma_path: j must be 1, 2 or 3");
    const double b = params.beta;
    const double a = params.alpha / (3.0 * b);
    auto [cm, cp] = c_pm(params, lambda);
    if (j == 1 && m > cm + 1e-12 * (1.0 + std::abs(cm)))
        throw OutOfInterval("big_gamma_path: m beyond c_- on the left branch");
    if (j == 3 && m < cp - 1e-12 * (1.0 + std::abs(cp)))
        throw OutOfInterval("big_gamma_path: m before c_+ on the right branch");
    const double rad =
        3.0 * (m - a) * (m - a) - params.discriminant() / (3.0 * b * b);
    if (rad < 0.0)
        throw NegativeRadicand("big_gamma_path: negative radicand");
    const double s = std::sqrt(rad);
    const cplx k(m, s);
    const cplx kp(1.0, s > 0.0 ? 3.0 * (m - a) / s
                               : std::numeric_limits<double>::infinity());
    return {k, kp};
}

std::pair<cplx, cplx> PathSegment::eval(double m, const PdeParams& params,
                                        double lambda) const {
    if (m < m_a - 1e-12 * (1.0 + std::abs(m_a)) ||
        m > m_b + 1e-12 * (1.0 + std::abs(m_b)))
        throw OutOfInterval("PathSegment::eval: m outside segment interval");
    switch (kind) {
        case SegmentKind::GammaLeft: return gamma_path(1, m, params, lambda);
        case SegmentKind::GammaBottom: return gamma_path(2, m, params, lambda);
        case SegmentKind::GammaRight: return gamma_path(3, m, params, lambda);
        case SegmentKind::BigGammaLeft:
            return big_gamma_path(1, m, params, lambda);
        case SegmentKind::BigGammaBottom:
            return big_gamma_path(2, m, params, lambda);
        case SegmentKind::BigGammaRight:
            return big_gamma_path(3, m, params, lambda);
    }
    throw Error("PathSegment::eval: unreachable");
}

namespace {

double tau_of(const PathSegment& seg, double m, const PdeParams& params,
              double lambda) {
    auto [k, kp] = seg.eval(m, params, lambda);
    (void)kp;
    return (cplx(0.0, 1.0) * spectral::omega(k, params)).real();
}

int panel_count(double phase_span, double density) {
    const long base = long(std::ceil(phase_span / (2.0 * pi))) + 2;
    return std::max(1, int(std::lround(density * double(base))));
}

// Append composite Gauss-Legendre nodes of one segment, in traversal order.
void discretize_segment(const PathSegment& seg, const PdeParams& params,
                        double lambda, double density,
                        const ContourBuildOptions& opts,
                        std::vector<ContourNode>& out) {
    const bool branch = seg.kind != SegmentKind::GammaBottom &&
                        seg.kind != SegmentKind::BigGammaBottom;

    const double x_damp =
        std::min(opts.x_ref, 35.0 / std::max(lambda, 0.3));
    auto point = [&](double m) { return seg.eval(m, params, lambda).first; };

    double phase_span;
    std::function<double(double)> grading;
    if (branch) {
        const double ta = tau_of(seg, seg.m_a, params, lambda);
        const double tb = tau_of(seg, seg.m_b, params, lambda);
        const double xa = point(seg.m_a).real(), xb = point(seg.m_b).real();
        phase_span = opts.T_ref * std::abs(tb - ta) + x_damp * std::abs(xb - xa);
        const double st = (tb > ta) ? 1.0 : -1.0;
        const double sx = (xb > xa) ? 1.0 : -1.0;
        grading = [&, st, sx](double m) {
            return opts.T_ref * st * tau_of(seg, m, params, lambda) +
                   x_damp * sx * point(m).real();
        };
    } else {
        const cplx wa = spectral::omega(point(seg.m_a), params);
        const cplx wb = spectral::omega(point(seg.m_b), params);
        phase_span = opts.T_ref * std::abs(wb - wa) +
                     x_damp * (seg.m_b - seg.m_a);
        grading = [](double m) { return m; };  // uniform
    }

    const int n_panels = panel_count(phase_span, density);
    std::vector<double> breaks =
        quad::graded_breakpoints(seg.m_a, seg.m_b, grading, n_panels);

    const quad::GaussRule& rule = quad::gauss_legendre(opts.gl_order);
    const std::size_t first = out.size();
    for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
        const double mid = 0.5 * (breaks[j] + breaks[j + 1]);
        const double rad = 0.5 * (breaks[j + 1] - breaks[j]);
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double m = mid + rad * rule.nodes[q];
            auto [k, kp] = seg.eval(m, params, lambda);
            out.push_back({k, double(seg.direction) * kp,
                           rule.weights[q] * rad, m});
        }
    }
    if (seg.direction < 0)
        std::reverse(out.begin() + long(first), out.end());
}

}  // namespace

cplx ContourSpec::integrate(const std::function<cplx(cplx)>& f) const {
    cplx acc = 0.0;
    for (const ContourNode& n : nodes) acc += f(n.k) * n.dk * n.w;
    return acc;
}

void ContourSpec::validate(double re_omega_tol) const {
    if (!(c_minus < c_plus))
        throw Error("ContourSpec: corners out of order");
    const spectral::SpectralClassification cls = spectral::classify(params);
    const double a = params.alpha / (3.0 * params.beta);
    double clearance = std::numeric_limits<double>::infinity();
    for (const ContourNode& n : nodes) {
        if (!(n.w > 0.0)) throw Error("ContourSpec: non-positive weight");
        const cplx w = spectral::omega(n.k, params);
        const double slack = re_omega_tol + 8.0e-16 * std::abs(w);
        if (w.real() > slack)
            throw Error("ContourSpec: node outside closure of D+");
        clearance = std::min(clearance, spectral::cut_distance(n.k, cls));
        if (params.discriminant() <= 0.0 && std::abs(n.k - cplx(a, 0.0)) < 1e-12)
            throw Error("ContourSpec: node at the symmetry-degenerate point");
    }
    if (cls.branch_points && clearance < 1e-12)
        throw Error("ContourSpec: node on the branch cut");
    // hyperbola segments lie on the zero set of Re omega
    for (const PathSegment& seg : segments) {
        if (seg.kind == SegmentKind::GammaBottom ||
            seg.kind == SegmentKind::BigGammaBottom)
            continue;
        for (int i = 0; i <= 8; ++i) {
            const double m =
                seg.m_a + (seg.m_b - seg.m_a) * double(i) / 8.0;
            const cplx w =
                spectral::omega(seg.eval(m, params, lambda).first, params);
            if (std::abs(w.real()) > re_omega_tol + 8.0e-16 * std::abs(w))
                throw Error("ContourSpec: hyperbola segment leaves Re w = 0");
        }
    }
}

ContourSpec build_contour(const SpectralClassification& cls,
                          const PdeParams& params, double lambda, double M,
                          double density, const ContourBuildOptions& opts) {
    params.validate();
    if (!(density > 0.0)) throw ConfigError("build_contour: density <= 0");

    ContourSpec spec;
    spec.lambda = lambda;
    spec.density = density;
    spec.form = opts.form;
    spec.params = params;
    std::tie(spec.c_minus, spec.c_plus) = c_pm(params, lambda);
    spec.truncation_M = M;

    if (opts.form == Form::Gamma) {
        if (!(M > lambda))
            throw TruncationInsufficient(
                "build_contour: M must exceed lambda in the gamma form");
        spec.segments = {
            {SegmentKind::GammaLeft, lambda, M, -1},
            {SegmentKind::GammaBottom, spec.c_minus, spec.c_plus, +1},
            {SegmentKind::GammaRight, lambda, M, +1},
        };
    } else {
        if (!(-M < spec.c_minus && M > spec.c_plus))
            throw TruncationInsufficient(
                "build_contour: M must lie beyond both corners in the Gamma "
                "form");
        spec.segments = {
            {SegmentKind::BigGammaLeft, -M, spec.c_minus, +1},
            {SegmentKind::BigGammaBottom, spec.c_minus, spec.c_plus, +1},
            {SegmentKind::BigGammaRight, spec.c_plus, M, +1},
        };
    }

    for (const PathSegment& seg : spec.segments)
        discretize_segment(seg, params, lambda, density, opts, spec.nodes);

    // Figure-2 clearance: nodes must stay away from the cut and from the
    // degenerate point alpha/(3 beta).
    double clearance = std::numeric_limits<double>::infinity();
    for (const ContourNode& n : spec.nodes)
        clearance = std::min(clearance, spectral::cut_distance(n.k, cls));
    spec.cut_clearance = clearance;
    if (params.discriminant() <= 0.0) {
        if (clearance < opts.eps_cut) {
            std::ostringstream msg;
            msg << "build_contour: node clearance " << clearance
                << " below eps_cut " << opts.eps_cut;
            throw OnBranchCut(msg.str());
        }
        const double a = params.alpha / (3.0 * params.beta);
        for (const ContourNode& n : spec.nodes)
            if (std::abs(n.k - cplx(a, 0.0)) < opts.eps_geom)
                throw OnBranchCut(
                    "build_contour: node within eps_geom of alpha/(3 beta)");
    }
    return spec;
}

}  // namespace hnls::contour
