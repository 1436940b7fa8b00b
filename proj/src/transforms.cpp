#include "hnls/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "hnls/fft.hpp"
#include "hnls/quadrature.hpp"
#include "hnls/spectral.hpp"

namespace hnls::transforms {

cplx half_line_ft(const GridFunction& f, cplx k, double decay_tol) {
    f.validate("half_line_ft");
    if (k.imag() > 0.0)
        throw UpperHalfPlane("half_line_ft: defined only for Im(k) <= 0");
    double fmax = 0.0;
    for (const cplx& v : f.values) fmax = std::max(fmax, std::abs(v));
    if (fmax > 0.0 && std::abs(f.values.back()) > decay_tol * fmax)
        throw TailTooLarge("half_line_ft: |f| has not decayed at the right "
                           "endpoint; enlarge L");
    return quad::filon_exp(f.values, f.a, f.h(), cplx(0.0, -1.0) * k);
}

GridFunction whole_line_propagator_apply(const GridFunction& f, double t,
                                         const PdeParams& params) {
    fft::PeriodicSpectrum s = fft::PeriodicSpectrum::analyze(f);
    for (std::size_t j = 0; j < s.modes.size(); ++j)
        s.modes[j] *= std::exp(-spectral::omega(cplx(s.k[j], 0.0), params) * t);
    GridFunction out = s.synthesize();
    out.kind = f.kind;
    return out;
}

cplx time_transform(const GridFunction& h, cplx kappa, double t_end) {
    h.validate("time_transform");
    if (t_end > h.b + 1e-12 * (std::abs(h.b) + 1.0))
        throw OutOfInterval("time_transform: t_end beyond the sampled grid");
    if (t_end <= h.a) return 0.0;
    return quad::filon_exp(h.values, h.a, h.h(), kappa, t_end);
}

GridFunction extend_initial(const GridFunction& u0, ExtensionPolicy policy,
                            double s) {
    u0.validate("extend_initial");
    if (policy == ExtensionPolicy::Auto)
        policy = (s < 0.5) ? ExtensionPolicy::Zero
                           : ExtensionPolicy::C2Reflection;
    const std::size_t n = u0.n();
    GridFunction out(-u0.b, u0.b, 2 * n - 1, u0.kind);
    const std::size_t mid = n - 1;  // index of x = 0
    for (std::size_t i = 0; i < n; ++i) out.values[mid + i] = u0.values[i];
    if (policy == ExtensionPolicy::C2Reflection) {
        auto sample = [&](std::size_t j) {
            return j < n ? u0.values[j] : cplx(0.0);
        };
        for (std::size_t i = 1; i < n; ++i)
            out.values[mid - i] = 6.0 * sample(i) - 8.0 * sample(2 * i) +
                                  3.0 * sample(3 * i);
    }
    return out;
}

cplx sample(const GridFunction& f, double x) {
    const std::size_t n = f.n();
    double u = (x - f.a) / f.h();
    u = std::clamp(u, 0.0, double(n - 1));
    std::size_t i = std::min<std::size_t>(n - 2, std::size_t(u));
    std::size_t s0 = (n < 4) ? 0 : (i == 0 ? 0 : (i + 2 >= n ? n - 4 : i - 1));
    const std::size_t order = std::min<std::size_t>(3, n - 1 - s0);
    cplx acc = 0.0;
    for (std::size_t a0 = 0; a0 <= order; ++a0) {
        double w = 1.0;
        for (std::size_t b0 = 0; b0 <= order; ++b0) {
            if (a0 == b0) continue;
            w *= (u - double(s0 + b0)) / (double(s0 + a0) - double(s0 + b0));
        }
        acc += w * f.values[s0 + a0];
    }
    return acc;
}

GridFunction resample(const GridFunction& f, double a, double b, int n) {
    GridFunction out(a, b, std::size_t(n), f.kind);
    for (std::size_t i = 0; i < out.n(); ++i)
        out.values[i] = sample(f, out.coord(i));
    return out;
}

double smooth_step_down(double s) {
    if (s <= 0.0) return 1.0;
    if (s >= 1.0) return 0.0;
    const double e1 = std::exp(-1.0 / (1.0 - s));
    const double e0 = std::exp(-1.0 / s);
    return e1 / (e0 + e1);
}

GridFunction extend_boundary(const GridFunction& g, double Tprime, int n_out) {
    g.validate("extend_boundary");
    const double T = g.b;
    if (!(Tprime > T))
        throw ConfigError("extend_boundary: T' must exceed T");
    if (n_out <= 1) {
        // keep the input spacing
        n_out = int(std::lround((Tprime - g.a) / g.h())) + 1;
    }
    GridFunction out(g.a, Tprime, std::size_t(n_out), GridKind::Temporal);
    const double eta = 0.25 * (Tprime - T);
    const double ramp_end = Tprime - eta;
    for (std::size_t i = 0; i < out.n(); ++i) {
        const double t = out.coord(i);
        cplx v;
        if (t <= T) {
            // sample g (linear interpolation between input nodes)
            const double u = (t - g.a) / g.h();
            const std::size_t j =
                std::min<std::size_t>(g.n() - 2, std::size_t(std::floor(u)));
            const double w = u - double(j);
            v = (1.0 - w) * g.values[j] + w * g.values[j + 1];
        } else {
            v = g.values.back();  // constant continuation
        }
        if (t > T) {
            const double sarg = (t - T) / (ramp_end - T);
            v *= smooth_step_down(sarg);
        }
        out.values[i] = v;
    }
    return out;
}

}  // namespace hnls::transforms
