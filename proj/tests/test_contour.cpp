#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "hnls/contour.hpp"
#include "test_util.hpp"

using namespace hnls;
using namespace hnls::contour;
using spectral::classify;

namespace {

const cplx I(0.0, 1.0);

// test-only oracle: adaptive Simpson along a parametrized path segment,
// independent of the Gauss-Legendre panel machinery
cplx simpson_rec(const std::function<cplx(double)>& f, double a, double b,
                 cplx fa, cplx fm, cplx fb, cplx whole, double tol,
                 int depth) {
    const double m = 0.5 * (a + b);
    const double lq = 0.25 * (a + b) - 0.25 * (b - a) * 0.5;
    (void)lq;
    const cplx flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
    const cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth > 24 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth + 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth + 1);
}

cplx simpson_path(const std::function<cplx(double)>& f, double a, double b,
                  double tol) {
    const cplx fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
    const cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 0);
}

}  // namespace

TEST_CASE("select_lambda per discriminant case") {
    const auto pp = testutil::params_positive();
    const auto pz = testutil::params_zero();
    const auto pn = testutil::params_negative();
    CHECK(select_lambda(classify(pp), pp, 2.0) == 0.0);
    CHECK(select_lambda(classify(pn), pn, 2.0) ==
          doctest::Approx(4.0 * std::sqrt(3.0) / 3.0));
    CHECK(select_lambda(classify(pz), pz, 1.5) == doctest::Approx(1.5));
    CHECK_THROWS_AS(select_lambda(classify(pz), pz, 0.9), ConfigError);
}

TEST_CASE("c_pm corner abscissae") {
    {
        auto [cm, cp] = c_pm(testutil::params_positive(), 0.0);
        CHECK(cm == doctest::Approx(0.0));
        CHECK(cp == doctest::Approx(2.0 / 3.0));
    }
    {
        auto [cm, cp] = c_pm(testutil::params_zero(), 1.0);
        CHECK(cm == doctest::Approx(-std::sqrt(3.0) / 3.0));
        CHECK(cp == doctest::Approx(std::sqrt(3.0) / 3.0));
    }
    testutil::Rng rng;
    for (int i = 0; i < 50; ++i) {
        PdeParams p;
        p.alpha = rng.uniform(-2, 2);
        p.beta = rng.uniform(0.2, 3.0);
        p.delta = rng.uniform(-2, 2);
        const double lam =
            select_lambda(classify(p), p, rng.uniform(1.1, 3.0));
        auto [cm, cp] = c_pm(p, lam);
        CHECK(cm < cp);
    }
    CHECK_THROWS_AS(c_pm(testutil::params_negative(), 0.0), NegativeRadicand);
}

TEST_CASE("gamma_path closed forms") {
    const auto pz = testutil::params_zero();
    {
        auto [k, kp] = gamma_path(2, 0.0, pz, 0.5);
        CHECK(std::abs(k - cplx(0.0, 0.5)) < 1e-15);
        CHECK(std::abs(kp - cplx(1.0, 0.0)) < 1e-15);
    }
    {
        const auto pp = testutil::params_positive();
        auto [k, kp] = gamma_path(1, 0.0, pp, 0.0);
        (void)kp;
        auto [cm, cp] = c_pm(pp, 0.0);
        (void)cp;
        CHECK(std::abs(k - cplx(cm, 0.0)) < 1e-14);
    }
    // Re omega vanishes along both branch parametrizations
    for (const PdeParams& p :
         {testutil::params_positive(), testutil::params_zero(),
          testutil::params_negative()}) {
        const double lam = select_lambda(classify(p), p, 1.5);
        for (double m : {lam + 0.01, lam + 1.0, lam + 4.0, lam + 15.0}) {
            for (int j : {1, 3}) {
                auto [k, kp] = gamma_path(j, m, p, lam);
                (void)kp;
                const cplx w = spectral::omega(k, p);
                CHECK(std::abs(w.real()) <= 1e-10 + 8e-16 * std::abs(w));
            }
        }
    }
    CHECK_THROWS_AS(gamma_path(1, -1.0, testutil::params_zero(), 1.0),
                    OutOfInterval);
}

TEST_CASE("gamma and Gamma parametrizations trace the same branch") {
    const auto p = testutil::params_positive();
    const double lam = 0.0;
    for (double m : {0.01, 0.3, 1.0, 2.5, 7.0}) {
        for (int j : {1, 3}) {
            auto [k, kp] = gamma_path(j, m, p, lam);
            (void)kp;
            // feed the abscissa back through the graph parametrization
            auto [kg, kgp] = big_gamma_path(j, k.real(), p, lam);
            (void)kgp;
            CHECK(std::abs(kg - k) <= 1e-8);
        }
    }
}

TEST_CASE("build_contour: node placement and validation") {
    for (const PdeParams& p :
         {testutil::params_positive(), testutil::params_zero(),
          testutil::params_negative()}) {
        const auto cls = classify(p);
        const double lam = select_lambda(cls, p, 1.5);
        ContourBuildOptions opts;
        opts.T_ref = 2.0;
        ContourSpec ct = build_contour(cls, p, lam, lam + 12.0, 1.0, opts);
        CHECK_NOTHROW(ct.validate(1e-10));
        for (const ContourNode& n : ct.nodes)
            CHECK(spectral::in_D_plus_closure(n.k, p, 1e-9));
        if (p.discriminant() < 0.0) CHECK(ct.cut_clearance > 0.3);
    }
}

TEST_CASE("build_contour: alpha = 0 node symmetry and density doubling") {
    const auto p = testutil::params_zero();
    const auto cls = classify(p);
    ContourBuildOptions opts;
    opts.T_ref = 2.0;
    ContourSpec c1 = build_contour(cls, p, 1.5, 12.0, 1.0, opts);
    ContourSpec c2 = build_contour(cls, p, 1.5, 12.0, 2.0, opts);
    CHECK(c2.nodes.size() == 2 * c1.nodes.size());

    // mirror symmetry of the node set under Re k -> -Re k
    const std::size_t n = c1.nodes.size();
    for (std::size_t i = 0; i < n; ++i) {
        const cplx mirrored = -std::conj(c1.nodes[n - 1 - i].k);
        CHECK(std::abs(c1.nodes[i].k - mirrored) < 1e-9);
    }
}

TEST_CASE("contour quadrature matches adaptive Simpson on the same path") {
    // entire integrand decaying superexponentially along both branch
    // asymptotes (60 and 120 degrees): e^{k^2} has Re k^2 ~ -m^2/2 there
    auto f = [](cplx k) { return std::exp(k * k + I * k); };
    for (const PdeParams& p :
         {testutil::params_positive(), testutil::params_zero()}) {
        const auto cls = classify(p);
        const double lam = select_lambda(cls, p, 1.2);
        ContourBuildOptions opts;
        opts.T_ref = 1.0;
        opts.gl_order = 8;
        ContourSpec ct = build_contour(cls, p, lam, lam + 8.0, 2.0, opts);
        const cplx via_nodes = ct.integrate(f);

        cplx via_simpson = 0.0;
        for (const PathSegment& seg : ct.segments) {
            auto g = [&](double m) {
                auto [k, kp] = seg.eval(m, p, lam);
                return f(k) * kp;
            };
            const cplx v = simpson_path(g, seg.m_a, seg.m_b, 1e-12);
            via_simpson += double(seg.direction) * v;
        }
        CHECK(std::abs(via_nodes - via_simpson) <= 1e-8);
    }
}

TEST_CASE("build_contour rejects bad truncation") {
    const auto p = testutil::params_zero();
    const auto cls = classify(p);
    CHECK_THROWS_AS(build_contour(cls, p, 1.5, 1.0, 1.0),
                    TruncationInsufficient);
}
