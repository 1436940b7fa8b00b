#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hnls/fft.hpp"
#include "hnls/norms.hpp"
#include "hnls/quadrature.hpp"
#include "hnls/transforms.hpp"
#include "test_util.hpp"

using namespace hnls;
using namespace hnls::transforms;

namespace {
const cplx I(0.0, 1.0);

GridFunction sampled(double a, double b, int n, GridKind kind,
                     const std::function<cplx(double)>& f) {
    GridFunction g(a, b, std::size_t(n), kind);
    for (std::size_t i = 0; i < g.n(); ++i) g.values[i] = f(g.coord(i));
    return g;
}

}  // namespace

TEST_CASE("half_line_ft: closed forms and guards") {
    GridFunction zero(0.0, 40.0, 4001, GridKind::Spatial);
    CHECK(std::abs(half_line_ft(zero, cplx(0.3, -0.1))) == 0.0);

    GridFunction f = sampled(0.0, 40.0, 4001, GridKind::Spatial,
                             [](double x) { return std::exp(-x); });
    for (double k : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
        const cplx expect = 1.0 / (1.0 + I * k);
        CHECK(std::abs(half_line_ft(f, k) - expect) < 1e-6);
    }
    CHECK(std::abs(half_line_ft(f, cplx(0.0, -0.5)) - 2.0 / 3.0) < 1e-6);

    CHECK_THROWS_AS(half_line_ft(f, cplx(0.0, 0.1)), UpperHalfPlane);
    GridFunction flat = sampled(0.0, 40.0, 4001, GridKind::Spatial,
                                [](double) { return 1.0; });
    CHECK_THROWS_AS(half_line_ft(flat, cplx(1.0, 0.0)), TailTooLarge);
}

TEST_CASE("half_line_ft agrees with the whole-line transform of the "
          "zero-extension") {
    GridFunction f = sampled(0.0, 30.0, 2049, GridKind::Spatial, [](double x) {
        const double r = x - 6.0;
        return std::exp(-0.5 * r * r);
    });
    // zero-extended whole-line function and its periodic spectrum
    GridFunction ext = extend_initial(f, ExtensionPolicy::Zero);
    fft::PeriodicSpectrum sp = fft::PeriodicSpectrum::analyze(ext);
    for (std::size_t j = 0; j < sp.modes.size(); ++j) {
        if (std::abs(sp.k[j]) > 5.0) continue;
        const cplx direct = half_line_ft(f, cplx(sp.k[j], 0.0));
        CHECK(std::abs(direct - sp.modes[j]) < 1e-8);
    }
}

TEST_CASE("whole_line_propagator_apply: identity, phase shift, L2") {
    const PdeParams p = testutil::params_zero();
    GridFunction f = sampled(-30.0, 30.0, 1025, GridKind::Spatial,
                             [](double x) { return std::exp(-0.5 * x * x); });
    GridFunction f0 = whole_line_propagator_apply(f, 0.0, p);
    for (std::size_t i = 0; i < f.n(); ++i)
        CHECK(std::abs(f0.values[i] - f.values[i]) < 1e-13);

    // pure grid mode: the multiplier action is exact
    const double k0 = 2.0 * pi * 10.0 / 60.0;  // an exact grid mode
    const double t = 0.4;
    GridFunction pure = sampled(-30.0, 30.0, 1025, GridKind::Spatial,
                                [&](double x) { return std::exp(I * k0 * x); });
    GridFunction pure_ev = whole_line_propagator_apply(pure, t, p);
    const cplx phase = std::exp(-spectral::omega(cplx(k0, 0.0), p) * t);
    for (std::size_t i = 0; i < pure.n(); i += 97)
        CHECK(std::abs(pure_ev.values[i] - phase * pure.values[i]) < 1e-12);

    // windowed mode: phase shift holds approximately on the window interior
    GridFunction mode =
        sampled(-30.0, 30.0, 1025, GridKind::Spatial, [&](double x) {
            return std::exp(I * k0 * x) * std::exp(-x * x / 50.0);
        });
    GridFunction evolved = whole_line_propagator_apply(mode, t, p);
    const std::size_t mid = 512;
    const double rel =
        std::abs(evolved.values[mid] - phase * mode.values[mid]) /
        std::abs(mode.values[mid]);
    CHECK(rel < 0.1);  // narrow-band approximation, not exact

    // exact discrete L2 conservation
    CHECK(norms::l2_norm_periodic(evolved) ==
          doctest::Approx(norms::l2_norm_periodic(mode)).epsilon(1e-12));
}

TEST_CASE("time_transform: exact integrals") {
    GridFunction zero(0.0, 2.0, 257, GridKind::Temporal);
    CHECK(std::abs(time_transform(zero, cplx(1.0, 2.0), 2.0)) == 0.0);

    GridFunction one = sampled(0.0, 2.0, 257, GridKind::Temporal,
                               [](double) { return 1.0; });
    CHECK(std::abs(time_transform(one, 0.0, 2.0) - 2.0) < 1e-13);
    CHECK(std::abs(time_transform(one, 1.0, 1.0) - (std::exp(1.0) - 1.0)) <
          1e-12);
    // partial upper limit off the grid
    CHECK(std::abs(time_transform(one, 0.0, 1.37) - 1.37) < 1e-12);
}

TEST_CASE("time_transform of compactly supported data equals its Fourier "
          "transform") {
    // h supported inside (0, 2); kappa = -i tau
    auto bump = [](double t) {
        const double r = (t - 1.0) / 0.6;
        return std::abs(r) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r * r)) : 0.0;
    };
    GridFunction h = sampled(0.0, 2.0, 2049, GridKind::Temporal, bump);
    for (double tau : {0.0, 3.0, 17.0, 55.0}) {
        const cplx via_transform = time_transform(h, -I * tau, 2.0);
        // independent oracle: fine Gauss-Legendre panels
        auto integrand = [&](double t) {
            return std::exp(-I * tau * t) * bump(t);
        };
        std::vector<double> breaks;
        for (int j = 0; j <= 200; ++j) breaks.push_back(2.0 * j / 200.0);
        const cplx oracle = quad::integrate_panels(breaks, integrand, 8);
        CHECK(std::abs(via_transform - oracle) < 1e-9);
    }
}

TEST_CASE("extend_initial: C2 reflection matching") {
    GridFunction zero(0.0, 30.0, 513, GridKind::Spatial);
    GridFunction ez = extend_initial(zero);
    for (const cplx& v : ez.values) CHECK(std::abs(v) == 0.0);

    GridFunction f = sampled(0.0, 30.0, 2049, GridKind::Spatial,
                             [](double x) { return std::exp(-x); });
    GridFunction ext = extend_initial(f, ExtensionPolicy::C2Reflection);
    CHECK(ext.n() == 2 * f.n() - 1);
    const std::size_t mid = f.n() - 1;
    CHECK(std::abs(ext.values[mid] - 1.0) < 1e-14);
    // one-sided slopes agree to O(h^2): value 1, slope -1
    const double h = ext.h();
    const cplx slope_left =
        (ext.values[mid] - ext.values[mid - 1]) / h;
    CHECK(std::abs(slope_left - cplx(-1.0)) < 1e-2);
    // second derivative matches across 0; the jump sits in the third
    // derivative, so the centered stencil error is O(h) and halves under
    // refinement
    auto d2_err = [](int n) {
        GridFunction u(0.0, 30.0, std::size_t(n), GridKind::Spatial);
        for (std::size_t i = 0; i < u.n(); ++i)
            u.values[i] = std::exp(-u.coord(i));
        GridFunction e = extend_initial(u, ExtensionPolicy::C2Reflection);
        const std::size_t c = u.n() - 1;
        const double hh = e.h();
        const cplx d2 =
            (e.values[c - 1] - 2.0 * e.values[c] + e.values[c + 1]) / (hh * hh);
        return std::abs(d2 - cplx(1.0));
    };
    const double e1 = d2_err(2049), e2 = d2_err(4097);
    CHECK(e1 < 0.1);
    CHECK(e2 < 0.6 * e1);

    // H^2 boundedness of the extension, stable under refinement
    double ratios[2];
    int idx = 0;
    for (int n : {513, 1025}) {
        GridFunction u = sampled(0.0, 30.0, n, GridKind::Spatial, [](double x) {
            const double r = x - 8.0;
            return std::exp(-0.5 * r * r) * cplx(1.0, 0.3);
        });
        GridFunction e = extend_initial(u, ExtensionPolicy::C2Reflection);
        GridFunction ze = extend_initial(u, ExtensionPolicy::Zero);
        ratios[idx++] = norms::hs_norm_line(e, 2.0) / norms::hs_norm_line(ze, 2.0);
    }
    CHECK(std::abs(ratios[0] - ratios[1]) < 0.02 * ratios[0]);
}

TEST_CASE("extend_boundary: support and shape") {
    GridFunction zero(0.0, 1.0, 129, GridKind::Temporal);
    GridFunction ez = extend_boundary(zero, 2.0);
    for (const cplx& v : ez.values) CHECK(std::abs(v) == 0.0);

    GridFunction one = sampled(0.0, 1.0, 257, GridKind::Temporal,
                               [](double) { return 1.0; });
    GridFunction e = extend_boundary(one, 2.0);
    CHECK(e.b == doctest::Approx(2.0));
    // equals input on [0, T]
    for (std::size_t i = 0; i < e.n(); ++i) {
        const double t = e.coord(i);
        if (t <= 1.0) CHECK(std::abs(e.values[i] - 1.0) < 1e-14);
    }
    // identically zero on the last quarter gap [T' - eta, T']
    for (std::size_t i = 0; i < e.n(); ++i)
        if (e.coord(i) >= 2.0 - 0.25)
            CHECK(std::abs(e.values[i]) == 0.0);
    // monotone transition
    for (std::size_t i = 1; i < e.n(); ++i)
        CHECK(e.values[i].real() <= e.values[i - 1].real() + 1e-14);
}

TEST_CASE("extension operators are linear") {
    testutil::Rng rng;
    GridFunction f(0.0, 10.0, 201, GridKind::Spatial);
    GridFunction g(0.0, 10.0, 201, GridKind::Spatial);
    for (std::size_t i = 0; i < f.n(); ++i) {
        f.values[i] = rng.box(-1, 1, -1, 1);
        g.values[i] = rng.box(-1, 1, -1, 1);
    }
    const cplx a(0.7, -0.2), b(-1.3, 0.5);
    GridFunction comb = f;
    for (std::size_t i = 0; i < f.n(); ++i)
        comb.values[i] = a * f.values[i] + b * g.values[i];
    GridFunction lhs = extend_initial(comb);
    GridFunction rf = extend_initial(f), rg = extend_initial(g);
    for (std::size_t i = 0; i < lhs.n(); ++i)
        CHECK(std::abs(lhs.values[i] - (a * rf.values[i] + b * rg.values[i])) <
              1e-13);
}
