#include "hnls/cauchy.hpp"

#include <algorithm>
#include <cmath>

#include "hnls/fft.hpp"
#include "hnls/quadrature.hpp"
#include "hnls/spectral.hpp"

namespace hnls::cauchy {

namespace {

const cplx I(0.0, 1.0);

cplx phi1(cplx z) {
    if (std::abs(z) < 0.5) {
        cplx sum = 1.0, term = 1.0;
        for (int m = 1; m < 22; ++m) {
            term *= z / double(m + 1);
            sum += term;
            if (std::abs(term) < 1e-18) break;
        }
        return sum;
    }
    return (std::exp(z) - 1.0) / z;
}

cplx phi2(cplx z) {
    if (std::abs(z) < 0.5) {
        cplx sum = 0.5, term = 0.5;
        for (int m = 1; m < 22; ++m) {
            term *= z / double(m + 2);
            sum += term;
            if (std::abs(term) < 1e-18) break;
        }
        return sum;
    }
    return (std::exp(z) - 1.0 - z) / (z * z);
}

}  // namespace

SpaceTimeField solve_homogeneous(const GridFunction& y0ext,
                                 const SolverConfig& config,
                                 const PdeParams& params) {
    params.validate();
    fft::PeriodicSpectrum base = fft::PeriodicSpectrum::analyze(y0ext);
    SpaceTimeField u(y0ext.a, y0ext.b, y0ext.n(), 0.0, config.T,
                     std::size_t(config.Nt));
    fft::PeriodicSpectrum work = base;
    for (std::size_t n = 0; n < u.nt; ++n) {
        const double t = u.t(n);
        for (std::size_t j = 0; j < base.modes.size(); ++j)
            work.modes[j] =
                base.modes[j] *
                std::exp(-spectral::omega(cplx(base.k[j], 0.0), params) * t);
        GridFunction slice = work.synthesize();
        for (std::size_t i = 0; i < u.nx; ++i) u.at(i, n) = slice.values[i];
    }
    return u;
}

SpaceTimeField solve_duhamel(const SpaceTimeField& F,
                             const SolverConfig& config,
                             const PdeParams& params) {
    params.validate();
    (void)config;
    if (F.nt < 2) throw GridMismatch("solve_duhamel: need at least 2 slices");
    const double dt = F.ht();

    // forcing spectra per slice
    const std::size_t N = F.nx - 1;
    std::vector<std::vector<cplx>> Fh(F.nt);
    fft::PeriodicSpectrum proto;
    for (std::size_t n = 0; n < F.nt; ++n) {
        fft::PeriodicSpectrum s = fft::PeriodicSpectrum::analyze(F.slice(n));
        if (n == 0) proto = s;
        Fh[n] = std::move(s.modes);
    }

    std::vector<cplx> expz(N), w_a(N), w_b(N);
    for (std::size_t j = 0; j < N; ++j) {
        const cplx zeta =
            -spectral::omega(cplx(proto.k[j], 0.0), params) * dt;
        expz[j] = std::exp(zeta);
        const cplx p1 = phi1(zeta), p2 = phi2(zeta);
        w_a[j] = -I * dt * (p1 - p2);
        w_b[j] = -I * dt * p2;
    }

    SpaceTimeField z(F.xa, F.xb, F.nx, F.ta, F.tb, F.nt);
    std::vector<cplx> zh(N, cplx(0.0));
    fft::PeriodicSpectrum spec = proto;
    for (std::size_t n = 0; n < F.nt; ++n) {
        if (n > 0) {
            for (std::size_t j = 0; j < N; ++j)
                zh[j] = expz[j] * zh[j] + w_a[j] * Fh[n - 1][j] +
                        w_b[j] * Fh[n][j];
        }
        spec.modes = zh;
        GridFunction slice = spec.synthesize();
        for (std::size_t i = 0; i < z.nx; ++i) z.at(i, n) = slice.values[i];
    }
    return z;
}

GridFunction trace_at_zero(const SpaceTimeField& u) {
    if (!(u.xa <= 0.0 && u.xb >= 0.0))
        throw GridMismatch("trace_at_zero: x = 0 outside the spatial domain");
    const double pos = (0.0 - u.xa) / u.hx();
    const std::size_t i0 = std::size_t(std::lround(pos));
    const bool on_grid = std::abs(pos - double(i0)) < 1e-9;
    GridFunction g(u.ta, u.tb, u.nt, GridKind::Temporal);
    for (std::size_t n = 0; n < u.nt; ++n) {
        if (on_grid) {
            g.values[n] = u.at(i0, n);
        } else {
            const std::size_t j = std::size_t(std::floor(pos));
            const double w = pos - double(j);
            g.values[n] = (1.0 - w) * u.at(j, n) + w * u.at(j + 1, n);
        }
    }
    return g;
}

GridFunction homogeneous_trace(const GridFunction& y0ext,
                               const PdeParams& params, double t0, double t1,
                               int nt) {
    fft::PeriodicSpectrum s = fft::PeriodicSpectrum::analyze(y0ext);
    const double dk = 2.0 * pi / (y0ext.b - y0ext.a);
    GridFunction g(t0, t1, std::size_t(nt), GridKind::Temporal);
    // y(0, t) = (1/2 pi) sum hat y(k_j) e^{-w(k_j) t} dk
    std::vector<cplx> om(s.modes.size());
    for (std::size_t j = 0; j < om.size(); ++j)
        om[j] = spectral::omega(cplx(s.k[j], 0.0), params);
    for (std::size_t n = 0; n < g.n(); ++n) {
        const double t = g.coord(n);
        cplx acc = 0.0;
        for (std::size_t j = 0; j < s.modes.size(); ++j)
            acc += s.modes[j] * std::exp(-om[j] * t);
        g.values[n] = acc * dk / (2.0 * pi);
    }
    return g;
}

GridFunction duhamel_trace(const SpaceTimeField& F, const PdeParams& params,
                           int nt) {
    const std::size_t N = F.nx - 1;
    const double dt = F.ht();
    std::vector<std::vector<cplx>> Fh(F.nt);
    fft::PeriodicSpectrum proto;
    for (std::size_t n = 0; n < F.nt; ++n) {
        fft::PeriodicSpectrum s = fft::PeriodicSpectrum::analyze(F.slice(n));
        if (n == 0) proto = s;
        Fh[n] = std::move(s.modes);
    }
    std::vector<cplx> om(N);
    for (std::size_t j = 0; j < N; ++j)
        om[j] = spectral::omega(cplx(proto.k[j], 0.0), params);

    GridFunction g(F.ta, F.tb, std::size_t(nt), GridKind::Temporal);
    const double dk = 2.0 * pi / (F.xb - F.xa);

    // march the coarse recurrence, emitting fine-grid values inside each cell
    std::vector<cplx> zh(N, cplx(0.0));
    std::size_t n_coarse = 0;
    for (std::size_t m = 0; m < g.n(); ++m) {
        const double t = g.coord(m);
        while (n_coarse + 2 < F.nt && F.t(n_coarse + 1) <= t + 1e-12 * dt) {
            // advance one full coarse step
            for (std::size_t j = 0; j < N; ++j) {
                const cplx zeta = -om[j] * dt;
                zh[j] = std::exp(zeta) * zh[j] +
                        (-I) * dt *
                            ((phi1(zeta) - phi2(zeta)) * Fh[n_coarse][j] +
                             phi2(zeta) * Fh[n_coarse + 1][j]);
            }
            ++n_coarse;
        }
        const double sig = t - F.t(n_coarse);
        cplx acc = 0.0;
        if (sig < 1e-12 * dt) {
            for (std::size_t j = 0; j < N; ++j) acc += zh[j];
        } else {
            const double frac = sig / dt;
            for (std::size_t j = 0; j < N; ++j) {
                const cplx zs = -om[j] * sig;
                const cplx A = Fh[n_coarse][j];
                const cplx B = Fh[std::min(n_coarse + 1, F.nt - 1)][j];
                const cplx val =
                    std::exp(zs) * zh[j] +
                    (-I) * sig *
                        (phi1(zs) * A +
                         (B - A) * frac * (phi1(zs) - phi2(zs)));
                acc += val;
            }
        }
        g.values[m] = acc * dk / (2.0 * pi);
    }
    return g;
}

namespace {

// 2 Re int_0^K e^{i phi} dk with phase-graded panels plus an IBP tail.
cplx cubic_phase_integral(double mu, double W, double quad_tol) {
    auto phi = [&](double k) { return mu * k * k * k + W * k; };
    auto dphi = [&](double k) { return 3.0 * mu * k * k + W; };

    const double kstar = W < 0.0 ? std::sqrt(-W / (3.0 * mu)) : 0.0;
    double K = std::max(1.0, 2.0 * kstar);
    for (int it = 0; it < 60; ++it) {
        const double d = dphi(K);
        if (d >= 30.0 && 6.0 * mu * K / (d * d * d) <= 0.1 * quad_tol) break;
        K *= 1.4;
    }

    auto integrand = [&](double k) { return std::exp(I * phi(k)); };
    auto graded = [&](double a, double b) {
        const double span = std::abs(phi(b) - phi(a));
        const int n = std::max(2, int(std::ceil(span / pi)) + 2);
        return quad::graded_breakpoints(a, b, phi, n);
    };

    cplx acc = 0.0;
    if (kstar > 0.0 && kstar < K) {
        acc += quad::integrate_panels(graded(0.0, kstar), integrand, 8);
        acc += quad::integrate_panels(graded(kstar, K), integrand, 8);
    } else {
        acc += quad::integrate_panels(graded(0.0, K), integrand, 8);
    }
    // int_K^inf e^{i phi} ~ e^{i phi(K)} [i/phi' + phi''/phi'^3]
    const double dK = dphi(K), ddK = 6.0 * mu * K;
    acc += std::exp(I * phi(K)) * (I / dK + ddK / (dK * dK * dK));
    return 2.0 * acc.real();
}

}  // namespace

cplx dispersive_kernel(double x, double y, double t, const PdeParams& params,
                       double quad_tol) {
    params.validate();
    if (t == 0.0) throw TimeZero("dispersive_kernel: t must be nonzero");
    const double a = params.alpha / (3.0 * params.beta);
    const double c1 = x - y - t * params.delta;
    const double W0 = c1 - t * params.alpha * params.alpha / (3.0 * params.beta);
    const double theta = c1 * a - 2.0 * t * std::pow(params.alpha, 3) /
                                      (27.0 * params.beta * params.beta);
    double mu = t * params.beta;
    double W = W0;
    if (mu < 0.0) {
        mu = -mu;
        W = -W;
    }
    const cplx J = cubic_phase_integral(mu, W, quad_tol);
    return std::exp(I * theta) * J;
}

}  // namespace hnls::cauchy
