#include "hnls/spectral.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace hnls::spectral {

namespace {

const cplx I(0.0, 1.0);

// arg in (-pi, pi]: fold the atan2 value -pi (negative real axis hit from
// below through signed zero) onto +pi.
double arg_pm_pi(cplx z) {
    double th = std::atan2(z.imag(), z.real());
    if (th <= -pi) th = pi;
    return th;
}

// arg in [0, 2 pi)
double arg_0_2pi(cplx z) {
    double th = std::atan2(z.imag(), z.real());
    if (th < 0.0) th += 2.0 * pi;
    return th;
}

}  // namespace

SpectralClassification classify(const PdeParams& params) {
    params.validate();
    SpectralClassification cls;
    cls.alpha = params.alpha;
    cls.beta = params.beta;
    cls.delta = params.delta;
    cls.discriminant = params.discriminant();

    const double d = cls.discriminant;
    const double b3 = 3.0 * params.beta;
    std::ostringstream cut;
    if (d > 0.0) {
        cls.disc_case = DiscCase::PositiveDisc;
        const double r = 2.0 * std::sqrt(d) / b3;
        const double bm = params.alpha / b3 - r;
        const double bp = params.alpha / b3 + r;
        cls.branch_points = {cplx(bm, 0.0), cplx(bp, 0.0)};
        cut << "(-inf, " << bm << "] U [" << bp << ", inf) on the real axis";
    } else if (d < 0.0) {
        cls.disc_case = DiscCase::NegativeDisc;
        const double a = params.alpha / b3;
        const double h = 2.0 * std::sqrt(-d) / b3;
        cls.branch_points = {cplx(a, -h), cplx(a, h)};
        cut << "vertical segment Re k = " << a << ", Im k in [" << -h << ", "
            << h << "]";
    } else {
        cls.disc_case = DiscCase::ZeroDisc;
        cut << "none (entire symmetries)";
    }
    cls.cut_description = cut.str();
    return cls;
}

cplx omega(cplx k, const PdeParams& params) {
    // -i beta k^3 + i alpha k^2 + i delta k, Horner in k
    return I * k * (params.delta + k * (params.alpha - params.beta * k));
}

cplx omega_prime(cplx k, const PdeParams& params) {
    return I * (params.delta + k * (2.0 * params.alpha - 3.0 * params.beta * k));
}

double cut_distance(cplx k, const SpectralClassification& cls) {
    if (!cls.branch_points) return std::numeric_limits<double>::infinity();
    const auto& [bm, bp] = *cls.branch_points;
    if (cls.disc_case == DiscCase::PositiveDisc) {
        const double x = k.real(), y = k.imag();
        const double dm = x <= bm.real() ? std::abs(y)
                                         : std::hypot(x - bm.real(), y);
        const double dp = x >= bp.real() ? std::abs(y)
                                         : std::hypot(x - bp.real(), y);
        return std::min(dm, dp);
    }
    // NegativeDisc: segment at Re k = a, |Im k| <= h
    const double a = bp.real(), h = bp.imag();
    const double dx = k.real() - a;
    const double ay = std::abs(k.imag());
    return ay <= h ? std::abs(dx) : std::hypot(dx, ay - h);
}

cplx sqrt_branch(cplx k, const SpectralClassification& cls, double eps_cut) {
    if (cls.disc_case == DiscCase::ZeroDisc)
        throw Error("sqrt_branch: undefined for zero discriminant (the "
                    "symmetries are entire; use nu_pm directly)");
    if (cut_distance(k, cls) < eps_cut) {
        std::ostringstream msg;
        msg << "sqrt_branch: k = (" << k.real() << ", " << k.imag()
            << ") lies within eps_cut = " << eps_cut
            << " of the branch cut; deform the contour";
        throw OnBranchCut(msg.str());
    }
    const auto& [bm, bp] = *cls.branch_points;
    const double mod = std::sqrt(std::abs(k - bp) * std::abs(k - bm));
    double phase;
    if (cls.disc_case == DiscCase::PositiveDisc) {
        const double thm = arg_pm_pi(k - bm);
        const double thp = arg_0_2pi(k - bp);
        phase = 0.5 * (thp + thm);
    } else {
        // arg(k - b_pm) = th_pm - pi/2 with th_pm in [0, 2 pi)
        auto theta = [](cplx z) {
            double th = std::atan2(z.imag(), z.real()) + 0.5 * pi;
            if (th < 0.0) th += 2.0 * pi;
            if (th >= 2.0 * pi) th -= 2.0 * pi;
            return th;
        };
        phase = 0.5 * (theta(k - bp) + theta(k - bm) - pi);
    }
    return std::polar(mod, phase);
}

std::pair<cplx, cplx> nu_both(cplx k, const SpectralClassification& cls,
                              const PdeParams& params, double eps_cut) {
    const double ab = params.alpha / params.beta;
    const cplx lead = -0.5 * (k - ab);
    cplx root;
    if (cls.disc_case == DiscCase::ZeroDisc)
        root = k - ab / 3.0;
    else
        root = sqrt_branch(k, cls, eps_cut);
    const cplx off = cplx(0.0, 0.5 * std::sqrt(3.0)) * root;
    return {lead + off, lead - off};
}

cplx nu_pm(cplx k, const SpectralClassification& cls, const PdeParams& params,
           Sign sign, double eps_cut) {
    auto [np, nm] = nu_both(k, cls, params, eps_cut);
    return sign == Sign::Plus ? np : nm;
}

double d_plus_form(cplx k, const PdeParams& params) {
    const double a = params.alpha / (3.0 * params.beta);
    const double dr = k.real() - a;
    return 3.0 * dr * dr - k.imag() * k.imag() -
           params.discriminant() / (3.0 * params.beta * params.beta);
}

bool in_D_plus(cplx k, const PdeParams& params) {
    return k.imag() > 0.0 && d_plus_form(k, params) < 0.0;
}

bool in_D_plus_closure(cplx k, const PdeParams& params, double slack) {
    return k.imag() >= -slack && d_plus_form(k, params) <= slack;
}

}  // namespace hnls::spectral
