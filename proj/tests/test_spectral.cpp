#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hnls/spectral.hpp"
#include "test_util.hpp"

using namespace hnls;
using namespace hnls::spectral;
using testutil::Rng;

namespace {
const cplx I(0.0, 1.0);
}

TEST_CASE("classify: discriminant cases and branch points") {
    {
        auto cls = classify(testutil::params_positive());
        CHECK(cls.disc_case == DiscCase::PositiveDisc);
        CHECK(cls.discriminant == doctest::Approx(1.0));
        REQUIRE(cls.branch_points.has_value());
        CHECK(cls.branch_points->first.real() == doctest::Approx(-1.0 / 3.0));
        CHECK(cls.branch_points->second.real() == doctest::Approx(1.0));
        CHECK(cls.branch_points->first.imag() == 0.0);
    }
    {
        auto cls = classify(testutil::params_zero());
        CHECK(cls.disc_case == DiscCase::ZeroDisc);
        CHECK(!cls.branch_points.has_value());
    }
    {
        auto cls = classify(testutil::params_negative());
        CHECK(cls.disc_case == DiscCase::NegativeDisc);
        CHECK(cls.discriminant == doctest::Approx(-3.0));
        REQUIRE(cls.branch_points.has_value());
        const double h = 2.0 * std::sqrt(3.0) / 3.0;
        CHECK(cls.branch_points->second.real() == doctest::Approx(0.0));
        CHECK(cls.branch_points->second.imag() == doctest::Approx(h));
        CHECK(cls.branch_points->first.imag() == doctest::Approx(-h));
    }
    PdeParams bad = testutil::params_zero();
    bad.beta = -1.0;
    CHECK_THROWS_AS(classify(bad), ConfigError);
}

TEST_CASE("omega: polynomial values") {
    PdeParams p111;
    p111.alpha = p111.beta = p111.delta = 1.0;
    CHECK(std::abs(omega(0.0, p111)) == 0.0);
    CHECK(std::abs(omega(1.0, p111) - I) < 1e-15);
    CHECK(std::abs(omega(I, testutil::params_zero()) - cplx(-1.0, 0.0)) <
          1e-15);
    // purely imaginary on the real axis, exactly
    Rng rng;
    for (int i = 0; i < 100; ++i) {
        const double k = rng.uniform(-30.0, 30.0);
        CHECK(omega(cplx(k, 0.0), p111).real() == 0.0);
        CHECK(std::abs(std::exp(-omega(cplx(k, 0.0), p111) * 7.3)) ==
              doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("omega_prime: values and finite-difference oracle") {
    PdeParams pz = testutil::params_zero();
    PdeParams pd;
    pd.alpha = 0.2;
    pd.beta = 0.7;
    pd.delta = -0.4;
    CHECK(std::abs(omega_prime(0.0, pd) - I * pd.delta) < 1e-15);
    CHECK(std::abs(omega_prime(1.0, pz) - cplx(0.0, -3.0)) < 1e-15);
    Rng rng;
    for (int i = 0; i < 200; ++i) {
        const cplx k = rng.box(-3.0, 3.0, -3.0, 3.0);
        const double h = 1e-5;
        const cplx fd = (omega(k + h, pd) - omega(k - h, pd)) / (2.0 * h);
        const cplx an = omega_prime(k, pd);
        CHECK(std::abs(fd - an) <= 1e-8 * (1.0 + std::abs(an)));
    }
}

TEST_CASE("sqrt_branch: frozen branch values") {
    {
        // disc > 0, k at the midpoint of the branch points
        const PdeParams p = testutil::params_positive();
        const auto cls = classify(p);
        const cplx v = sqrt_branch(cplx(1.0 / 3.0, 0.0), cls);
        CHECK(std::abs(v - cplx(0.0, 2.0 / 3.0)) < 1e-14);
    }
    {
        // disc < 0, k = 0 sits on the vertical cut: the literal angle
        // convention (eps_cut = 0) gives the real value 2 sqrt(3)/3
        const PdeParams p = testutil::params_negative();
        const auto cls = classify(p);
        const cplx v = sqrt_branch(cplx(0.0, 0.0), cls, 0.0);
        CHECK(std::abs(v - cplx(2.0 * std::sqrt(3.0) / 3.0, 0.0)) < 1e-14);
        // with the default guard the same point is rejected
        CHECK_THROWS_AS(sqrt_branch(cplx(0.0, 0.0), cls), OnBranchCut);
    }
    {
        // on-cut rejection for disc > 0
        const PdeParams p = testutil::params_positive();
        const auto cls = classify(p);
        CHECK_THROWS_AS(sqrt_branch(cplx(2.0, 0.0), cls), OnBranchCut);
        CHECK_THROWS_AS(sqrt_branch(cplx(-07.0, 0.0), cls), OnBranchCut);
    }
    // squaring identity off the cut, all cases with branching
    Rng rng;
    for (const PdeParams& p :
         {testutil::params_positive(), testutil::params_negative()}) {
        const auto cls = classify(p);
        const double a = p.alpha / (3.0 * p.beta);
        const double rad_shift =
            4.0 * p.discriminant() / (9.0 * p.beta * p.beta);
        for (int i = 0; i < 2000; ++i) {
            const cplx k = testutil::sample_off_cut(rng, p, cls);
            const cplx v = sqrt_branch(k, cls);
            const cplx target = (k - a) * (k - a) - rad_shift;
            CHECK(std::abs(v * v - target) <= 1e-12 * (1.0 + std::abs(target)));
        }
    }
}

TEST_CASE("nu_pm: symmetry roots") {
    {
        // zero discriminant: entire formula
        const PdeParams p = testutil::params_zero();
        const auto cls = classify(p);
        auto [np, nm] = nu_both(cplx(1.0, 0.0), cls, p);
        CHECK(std::abs(np - cplx(-0.5, std::sqrt(3.0) / 2.0)) < 1e-14);
        CHECK(std::abs(nm - cplx(-0.5, -std::sqrt(3.0) / 2.0)) < 1e-14);
        CHECK(std::abs(omega(np, p) - omega(cplx(1.0, 0.0), p)) < 1e-14);
        CHECK(std::abs(omega(cplx(1.0, 0.0), p) - cplx(0.0, -1.0)) < 1e-15);
    }
    {
        // positive discriminant at k = 0: nu+ = 0 (fixed point), nu- = 1
        const PdeParams p = testutil::params_positive();
        const auto cls = classify(p);
        auto [np, nm] = nu_both(cplx(0.0, 0.0), cls, p);
        CHECK(std::abs(np) < 1e-14);
        CHECK(std::abs(nm - 1.0) < 1e-14);
        // fixed points of nu occur at the roots of 3 b k^2 - 2 a k - d
        const double r1 =
            (p.alpha + std::sqrt(p.discriminant())) / (3.0 * p.beta);
        const double r2 =
            (p.alpha - std::sqrt(p.discriminant())) / (3.0 * p.beta);
        for (double r : {r1, r2}) {
            auto [vp, vm] = nu_both(cplx(r, 0.0), cls, p);
            const double dist =
                std::min(std::abs(vp - r), std::abs(vm - r));
            CHECK(dist < 1e-12);
        }
    }
}

TEST_CASE("in_D_plus: region membership") {
    const PdeParams pz = testutil::params_zero();
    CHECK(in_D_plus(I, pz));
    CHECK(!in_D_plus(cplx(1.7, 0.0), pz));
    const PdeParams pn = testutil::params_negative();
    CHECK(!in_D_plus(cplx(0.0, 0.5), pn));
    CHECK(d_plus_form(cplx(0.0, 0.5), pn) == doctest::Approx(0.75));
}

TEST_CASE("property: omega invariance, Vieta, and Im(nu) in closure(D+)") {
    Rng rng;
    for (const PdeParams& p :
         {testutil::params_positive(), testutil::params_zero(),
          testutil::params_negative()}) {
        const auto cls = classify(p);
        const double ab = p.alpha / p.beta;
        for (int i = 0; i < 3000; ++i) {
            const cplx k = testutil::sample_off_cut(rng, p, cls);
            auto [np, nm] = nu_both(k, cls, p);
            const cplx w = omega(k, p);
            CHECK(std::abs(omega(np, p) - w) <= 1e-10 * (1.0 + std::abs(w)));
            CHECK(std::abs(omega(nm, p) - w) <= 1e-10 * (1.0 + std::abs(w)));
            const cplx sum = np + nm, prod = np * nm;
            const cplx sum_ref = -k + ab;
            const cplx prod_ref = k * k - ab * k - p.delta / p.beta;
            CHECK(std::abs(sum - sum_ref) <=
                  1e-10 * (1.0 + std::abs(sum_ref)));
            CHECK(std::abs(prod - prod_ref) <=
                  1e-10 * (1.0 + std::abs(prod_ref)));
        }
        for (int i = 0; i < 3000; ++i) {
            const cplx k = testutil::sample_closure_dplus(rng, p, cls);
            auto [np, nm] = nu_both(k, cls, p);
            CHECK(np.imag() <= 1e-12);
            CHECK(nm.imag() <= 1e-12);
        }
    }
}
