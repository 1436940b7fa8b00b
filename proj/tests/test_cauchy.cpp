#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hnls/cauchy.hpp"
#include "hnls/fft.hpp"
#include "hnls/norms.hpp"
#include "hnls/spectral.hpp"
#include "test_util.hpp"

using namespace hnls;
using namespace hnls::cauchy;

namespace {

const cplx I(0.0, 1.0);

GridFunction gaussian_whole(double L, int n, double center = 0.0,
                            double width = 1.0) {
    GridFunction f(-L, L, std::size_t(n), GridKind::Spatial);
    for (std::size_t i = 0; i < f.n(); ++i) {
        const double r = (f.coord(i) - center) / width;
        f.values[i] = std::exp(-0.5 * r * r);
    }
    return f;
}

}  // namespace

TEST_CASE("solve_homogeneous: zero data, conservation, linearity") {
    SolverConfig cfg;
    cfg.T = 1.0;
    cfg.Nt = 64;
    const PdeParams p = testutil::params_positive();

    GridFunction zero(-30.0, 30.0, 1025, GridKind::Spatial);
    SpaceTimeField uz = solve_homogeneous(zero, cfg, p);
    for (const cplx& v : uz.values) CHECK(std::abs(v) == 0.0);

    GridFunction y0 = gaussian_whole(30.0, 1025);
    SpaceTimeField u = solve_homogeneous(y0, cfg, p);
    const double ref = norms::l2_norm_periodic(y0);
    double drift = 0.0;
    for (std::size_t n = 0; n < u.nt; ++n) {
        const double l2 = norms::l2_norm_periodic(u.slice(n));
        drift = std::max(drift, std::abs(l2 - ref) / ref);
    }
    CHECK(drift <= 1e-10);

    // superposition
    GridFunction y1 = gaussian_whole(30.0, 1025, 3.0, 0.7);
    GridFunction comb = y0;
    const cplx a(0.3, 0.8), b(-1.1, 0.2);
    for (std::size_t i = 0; i < comb.n(); ++i)
        comb.values[i] = a * y0.values[i] + b * y1.values[i];
    SpaceTimeField u1 = solve_homogeneous(y1, cfg, p);
    SpaceTimeField uc = solve_homogeneous(comb, cfg, p);
    double diff = 0.0;
    for (std::size_t idx = 0; idx < uc.values.size(); ++idx)
        diff = std::max(diff, std::abs(uc.values[idx] - a * u.values[idx] -
                                       b * u1.values[idx]));
    CHECK(diff < 1e-12);
}

TEST_CASE("solve_duhamel: zero forcing, first slice, time-constant closed "
          "form") {
    SolverConfig cfg;
    const PdeParams p = testutil::params_negative();

    SpaceTimeField zeroF(-20.0, 20.0, 513, 0.0, 1.0, 65);
    SpaceTimeField z0 = solve_duhamel(zeroF, cfg, p);
    for (const cplx& v : z0.values) CHECK(std::abs(v) == 0.0);

    // F(x, t) = phi(x): z-hat(k,t) = -i (1 - e^{-w t}) / w phi-hat(k)
    SpaceTimeField F(-20.0, 20.0, 513, 0.0, 1.0, 65);
    GridFunction phi = gaussian_whole(20.0, 513);
    for (std::size_t n = 0; n < F.nt; ++n)
        for (std::size_t i = 0; i < F.nx; ++i) F.at(i, n) = phi.values[i];
    SpaceTimeField z = solve_duhamel(F, cfg, p);
    for (std::size_t i = 0; i < z.nx; ++i) CHECK(std::abs(z.at(i, 0)) == 0.0);

    fft::PeriodicSpectrum sp = fft::PeriodicSpectrum::analyze(phi);
    for (std::size_t j = 0; j < sp.modes.size(); ++j) {
        const cplx w = spectral::omega(cplx(sp.k[j], 0.0), p);
        const cplx factor =
            std::abs(w) > 1e-12 ? -I * (1.0 - std::exp(-w * 1.0)) / w
                                : cplx(0.0, -1.0);
        sp.modes[j] *= factor;
    }
    GridFunction expect = sp.synthesize();
    double err = 0.0;
    for (std::size_t i = 0; i < z.nx; ++i)
        err = std::max(err, std::abs(z.at(i, z.nt - 1) - expect.values[i]));
    CHECK(err < 1e-8);
}

TEST_CASE("solve_duhamel: manufactured solution z = t phi(x)") {
    // F = i dz/dt + i b z_xxx + a z_xx + i d z_x is linear in t, so the
    // exponential integrator is exact in time; spatial errors are spectral
    SolverConfig cfg;
    PdeParams p;
    p.alpha = 0.4;
    p.beta = 0.9;
    p.delta = -0.3;

    const double L = 20.0;
    const int n = 513, nt = 33;
    SpaceTimeField F(-L, L, n, 0.0, 1.0, nt);
    auto phi = [](double x) { return std::exp(-0.5 * x * x); };
    auto phi1 = [&](double x) { return -x * phi(x); };
    auto phi2 = [&](double x) { return (x * x - 1.0) * phi(x); };
    auto phi3 = [&](double x) { return (3.0 * x - x * x * x) * phi(x); };
    for (std::size_t m = 0; m < F.nt; ++m) {
        const double t = F.t(m);
        for (std::size_t i = 0; i < F.nx; ++i) {
            const double x = F.x(i);
            F.at(i, m) = I * phi(x) +
                         t * (I * p.beta * phi3(x) + p.alpha * phi2(x) +
                              I * p.delta * phi1(x));
        }
    }
    SpaceTimeField z = solve_duhamel(F, cfg, p);
    double err = 0.0;
    for (std::size_t m = 0; m < z.nt; ++m)
        for (std::size_t i = 0; i < z.nx; ++i)
            err = std::max(err,
                           std::abs(z.at(i, m) - F.t(m) * phi(z.x(i))));
    CHECK(err < 1e-9);
}

TEST_CASE("traces: grid slice and mode-space evaluation agree") {
    SolverConfig cfg;
    cfg.T = 0.8;
    cfg.Nt = 65;
    const PdeParams p = testutil::params_zero();
    GridFunction y0 = gaussian_whole(30.0, 1025, 4.0);
    SpaceTimeField y = solve_homogeneous(y0, cfg, p);
    GridFunction tr_grid = trace_at_zero(y);
    GridFunction tr_mode = homogeneous_trace(y0, p, 0.0, cfg.T, cfg.Nt);
    for (std::size_t m = 0; m < tr_grid.n(); ++m)
        CHECK(std::abs(tr_grid.values[m] - tr_mode.values[m]) < 1e-11);

    // Duhamel trace at t = 0 vanishes; fine-grid trace matches the field
    SpaceTimeField F(-30.0, 30.0, 1025, 0.0, 0.8, 65);
    for (std::size_t m = 0; m < F.nt; ++m)
        for (std::size_t i = 0; i < F.nx; ++i) {
            const double x = F.x(i);
            F.at(i, m) = std::exp(-0.5 * (x - 2.0) * (x - 2.0)) *
                         std::cos(2.0 * F.t(m));
        }
    SpaceTimeField z = solve_duhamel(F, cfg, p);
    GridFunction ztr = duhamel_trace(F, p, 129);
    CHECK(std::abs(ztr.values[0]) == 0.0);
    for (std::size_t m = 0; m < z.nt; ++m) {
        const double t = z.t(m);
        const std::size_t fine = 2 * m;  // 129 = 2*65 - 1
        CHECK(std::abs(z.at((z.nx - 1) / 2, m) - ztr.values[fine]) <
              1e-9 + 1e-6 * std::abs(ztr.values[fine]));
        (void)t;
    }

    // trace smoothing surrogate: H^{(s+1)/3} norm of the trace bounded by
    // c (1 + sqrt(T)) with c stable under refinement
    const double s = 0.5;
    const double mexp = (s + 1.0) / 3.0;
    double cvals[2];
    int idx = 0;
    for (int nt : {129, 257}) {
        GridFunction tr = homogeneous_trace(y0, p, 0.0, cfg.T, nt);
        double l2 = 0.0;
        for (const cplx& v : tr.values) l2 += std::norm(v);
        l2 = std::sqrt(l2 * tr.h());
        const double semi = norms::fractional_time_seminorm(tr, mexp);
        const double hs_sur = l2 + semi;
        cvals[idx++] = hs_sur / ((1.0 + std::sqrt(cfg.T)) *
                                 norms::hs_norm_line(y0, s));
    }
    CHECK(std::isfinite(cvals[0]));
    CHECK(std::abs(cvals[0] - cvals[1]) < 0.05 * cvals[0]);
}

TEST_CASE("dispersive_kernel: Airy value, decay sweep, symmetry") {
    PdeParams p = testutil::params_zero();  // alpha = delta = 0, beta = 1
    CHECK_THROWS_AS(dispersive_kernel(0.0, 0.0, 0.0, p), TimeZero);

    // I(x, x, t) = 2 pi (3 b t)^{-1/3} Ai(0), Ai(0) = 3^{-2/3} / Gamma(2/3)
    const double ai0 = std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0);
    const double expect_const = 2.0 * pi * ai0 / std::pow(3.0, 1.0 / 3.0);
    for (double t : {0.02, 0.5, 7.0, 60.0}) {
        const cplx Ival = dispersive_kernel(1.3, 1.3, t, p);
        const double scaled = std::abs(Ival) * std::pow(p.beta * t, 1.0 / 3.0);
        CHECK(scaled == doctest::Approx(expect_const).epsilon(0.02));
    }

    // decay sweep with alpha, delta nonzero: sup |I| (b t)^{1/3} bounded
    PdeParams pd;
    pd.alpha = 0.5;
    pd.beta = 1.0;
    pd.delta = 0.3;
    double lo = 1e300, hi = 0.0;
    for (double t : {0.01, 0.1, 1.0, 10.0, 100.0}) {
        double sup = 0.0;
        for (double dx : {-2.0, -0.5, 0.0, 0.5, 2.0}) {
            const cplx v = dispersive_kernel(dx, 0.0, t, pd);
            sup = std::max(sup, std::abs(v) * std::pow(pd.beta * t, 1.0 / 3.0));
        }
        lo = std::min(lo, sup);
        hi = std::max(hi, sup);
    }
    CHECK(hi / lo < 2.0);

    // conjugate symmetry in t at x = y for alpha = delta = 0
    const cplx plus = dispersive_kernel(0.7, 0.7, 2.3, p);
    const cplx minus = dispersive_kernel(0.7, 0.7, -2.3, p);
    CHECK(std::abs(minus - std::conj(plus)) <
          1e-6 * (1.0 + std::abs(plus)));
}
