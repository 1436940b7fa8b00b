#include "hnls/reference.hpp"

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include <algorithm>
#include <cmath>

#include "hnls/nonlinear.hpp"
#include "hnls/transforms.hpp"

namespace hnls::reference {

namespace {

const cplx I(0.0, 1.0);

// Banded operator over the interior unknowns i = 1 .. N-2 plus the
// boundary-column coefficients multiplying u_0 = g(t).
struct BandedOperator {
    int n = 0;            // interior unknowns
    int kl = 3, ku = 3;
    std::vector<cplx> diag_bands;  // row-major bands[r][j], r = i - j + ku...
    std::vector<cplx> bc;          // coefficient of u0 per row
    std::vector<double> sponge;

    cplx& at(int i, int j) {  // dense-indexed accessor into band storage
        return diag_bands[std::size_t(i) * (kl + ku + 1) + (j - i + kl)];
    }
    cplx get(int i, int j) const {
        if (j < std::max(0, i - kl) || j > std::min(n - 1, i + ku)) return 0.0;
        return diag_bands[std::size_t(i) * (kl + ku + 1) + (j - i + kl)];
    }

    // y = A x (+ bc * g)
    void apply(const std::vector<cplx>& x, cplx g, std::vector<cplx>& y) const {
        for (int i = 0; i < n; ++i) {
            cplx acc = bc[i] * g;
            const int j0 = std::max(0, i - kl), j1 = std::min(n - 1, i + ku);
            for (int j = j0; j <= j1; ++j)
                acc += diag_bands[std::size_t(i) * (kl + ku + 1) +
                                  (j - i + kl)] *
                       x[std::size_t(j)];
            y[std::size_t(i)] = acc;
        }
    }
};

BandedOperator build_operator(int N, double h, double L,
                              const PdeParams& params, const FdOptions& opts) {
    BandedOperator op;
    op.n = N - 2;
    op.diag_bands.assign(std::size_t(op.n) * 7, cplx(0.0));
    op.bc.assign(std::size_t(op.n), cplx(0.0));
    op.sponge.assign(std::size_t(op.n), 0.0);

    const double b = params.beta, a = params.alpha, d = params.delta;
    const double xs = L * (1.0 - opts.sponge_frac);

    // stencil coefficients on u_{i-3..i+3}
    // u_x   (4th): (u-2 - 8u-1 + 8u+1 - u+2) / 12h
    // u_xx  (4th): (-u-2 + 16u-1 - 30u + 16u+1 - u+2) / 12h^2
    // u_xxx (4th): (u-3 - 8u-2 + 13u-1 - 13u+1 + 8u+2 - u+3) / 8h^3
    const double c1[7] = {0, 1.0 / 12, -8.0 / 12, 0, 8.0 / 12, -1.0 / 12, 0};
    const double c2[7] = {0, -1.0 / 12, 16.0 / 12, -30.0 / 12,
                          16.0 / 12, -1.0 / 12, 0};
    const double c3[7] = {1.0 / 8, -8.0 / 8, 13.0 / 8, 0,
                          -13.0 / 8, 8.0 / 8, -1.0 / 8};

    // ghost values as combinations of u_0..u_3 (cubic extrapolation)
    // u_{-1} = 4u0 - 6u1 + 4u2 - u3 ; u_{-2} = 10u0 - 20u1 + 15u2 - 4u3
    const double gm1[4] = {4.0, -6.0, 4.0, -1.0};
    const double gm2[4] = {10.0, -20.0, 15.0, -4.0};

    for (int i = 1; i <= N - 2; ++i) {
        const int row = i - 1;
        const double x = h * double(i);
        double sig = 0.0;
        if (x > xs) {
            const double r = (x - xs) / (L - xs);
            sig = opts.sponge_strength * r * r * r * r;
        }
        op.sponge[std::size_t(row)] = sig;

        auto add_direct = [&](int gi, cplx coeff) {
            if (gi >= N - 1) return;  // u_{N-1} = 0, zero ghosts beyond
            if (gi == 0)
                op.bc[std::size_t(row)] += coeff;
            else
                op.at(row, gi - 1) += coeff;
        };
        auto add = [&](int gi, cplx coeff) {
            if (coeff == cplx(0.0)) return;
            if (gi >= 0) {
                add_direct(gi, coeff);
            } else if (gi == -1) {
                for (int q = 0; q < 4; ++q) add_direct(q, coeff * gm1[q]);
            } else if (gi == -2) {
                for (int q = 0; q < 4; ++q) add_direct(q, coeff * gm2[q]);
            } else {
                // i = 1 only reaches -2; deeper ghosts never occur
                throw Error("build_operator: ghost out of range");
            }
        };

        for (int off = -3; off <= 3; ++off) {
            const cplx coeff = -b * c3[off + 3] / (h * h * h) +
                               I * a * c2[off + 3] / (h * h) -
                               d * c1[off + 3] / h;
            add(i + off, coeff);
        }
        // sponge damping
        op.at(row, row) += -sig;
    }
    return op;
}

struct BandedFactor {
    int n = 0, kl = 3, ku = 3;
    std::vector<cplx> ab;  // LAPACK banded storage, column-major
    std::vector<lapack_int> ipiv;

    // factor (ident - w A)
    void factor(const BandedOperator& op, cplx w) {
        n = op.n;
        const int ldab = 2 * kl + ku + 1;
        ab.assign(std::size_t(ldab) * n, cplx(0.0));
        for (int j = 0; j < n; ++j) {
            const int i0 = std::max(0, j - ku), i1 = std::min(n - 1, j + kl);
            for (int i = i0; i <= i1; ++i) {
                cplx v = -w * op.get(i, j);
                if (i == j) v += 1.0;
                ab[std::size_t(j) * ldab + (kl + ku + i - j)] = v;
            }
        }
        ipiv.assign(std::size_t(n), 0);
        const lapack_int info = LAPACKE_zgbtrf(
            LAPACK_COL_MAJOR, n, n, kl, ku,
            reinterpret_cast<lapack_complex_double*>(ab.data()), 2 * kl + ku + 1,
            ipiv.data());
        if (info != 0) throw Error("zgbtrf failed on the implicit system");
    }

    void solve(std::vector<cplx>& rhs) const {
        const lapack_int info = LAPACKE_zgbtrs(
            LAPACK_COL_MAJOR, 'N', n, kl, ku, 1,
            reinterpret_cast<const lapack_complex_double*>(ab.data()),
            2 * kl + ku + 1, ipiv.data(),
            reinterpret_cast<lapack_complex_double*>(rhs.data()), n);
        if (info != 0) throw Error("zgbtrs failed");
    }
};

}  // namespace

SpaceTimeField fd_solve(const GridFunction& u0, const GridFunction& g,
                        const SolverConfig& config, const PdeParams& params,
                        bool nonlinear, const FdOptions& opts,
                        FdDiagnostics* diag) {
    params.validate();
    config.validate();
    PdeParams pp = params;
    if (!nonlinear) pp.kappa = 0.0;
    const bool has_nl = pp.kappa != cplx(0.0);

    const int N = config.Nx;
    const double L = config.L;
    const double h = L / double(N - 1);
    const int steps = config.Nt - 1;
    const double dt = config.T / double(steps);

    if (diag) {
        diag->cfl = pp.beta * dt / (h * h * h);
        diag->cfl_violation = diag->cfl > 50.0;
        diag->max_inner_used = 0;
    }

    BandedOperator op = build_operator(N, h, L, pp, opts);
    const double gamma = 1.0 - std::sqrt(0.5);
    BandedFactor fac;
    fac.factor(op, cplx(gamma * dt, 0.0));

    auto g_at = [&](double t) { return transforms::sample(g, t); };
    auto nl = [&](const std::vector<cplx>& u, std::vector<cplx>& out) {
        if (!has_nl) {
            std::fill(out.begin(), out.end(), cplx(0.0));
            return;
        }
        for (std::size_t i = 0; i < u.size(); ++i)
            out[i] = -I * nonlinear::nonlinearity(u[i], pp);
    };

    // initial data on the FD grid
    SpaceTimeField out(0.0, L, std::size_t(N), 0.0, config.T,
                       std::size_t(config.Nt));
    std::vector<cplx> u(std::size_t(op.n));
    for (int i = 1; i <= N - 2; ++i)
        u[std::size_t(i - 1)] = transforms::sample(u0, h * double(i));
    auto emit = [&](std::size_t slot, double t) {
        out.at(0, slot) = g_at(t);
        for (int i = 1; i <= N - 2; ++i)
            out.at(std::size_t(i), slot) = u[std::size_t(i - 1)];
        out.at(std::size_t(N - 1), slot) = 0.0;
    };
    emit(0, 0.0);
    out.at(0, 0) = transforms::sample(u0, 0.0);  // t = 0 carries the datum

    std::vector<cplx> base(u.size()), rhs(u.size()), stage(u.size()),
        nlv(u.size()), f1(u.size()), tmp(u.size());

    // implicit stage solve: U = base + gamma dt (A U + bc g + N(U))
    auto stage_solve = [&](const std::vector<cplx>& base_vec, double t_stage,
                           std::vector<cplx>& U) {
        const cplx gbc = g_at(t_stage);
        U = base_vec;  // initial guess
        double prev = 1e300;
        for (int it = 0; it < opts.max_inner; ++it) {
            nl(U, nlv);
            for (std::size_t i = 0; i < rhs.size(); ++i)
                rhs[i] = base_vec[i] +
                         gamma * dt * (op.bc[i] * gbc + nlv[i]);
            fac.solve(rhs);
            double delta = 0.0, scale = 1.0;
            for (std::size_t i = 0; i < rhs.size(); ++i) {
                delta = std::max(delta, std::abs(rhs[i] - U[i]));
                scale = std::max(scale, std::abs(rhs[i]));
            }
            U.swap(rhs);
            if (diag) diag->max_inner_used = std::max(diag->max_inner_used, it + 1);
            if (delta <= opts.inner_tol * scale) return;
            if (!has_nl) return;  // linear stage: one solve is exact
            if (delta > 4.0 * prev && it > 3)
                throw InnerSolveDiverged(
                    "fd_solve: inner fixed-point iteration diverged");
            prev = delta;
        }
        throw InnerSolveDiverged("fd_solve: inner iteration cap reached");
    };

    for (int n = 0; n < steps; ++n) {
        const double tn = dt * double(n);
        const double t1 = tn + gamma * dt;
        const double t2 = tn + dt;

        stage_solve(u, t1, stage);
        op.apply(stage, g_at(t1), f1);
        nl(stage, nlv);
        for (std::size_t i = 0; i < f1.size(); ++i) f1[i] += nlv[i];

        for (std::size_t i = 0; i < base.size(); ++i)
            base[i] = u[i] + dt * (1.0 - gamma) * f1[i];
        stage_solve(base, t2, u);

        emit(std::size_t(n + 1), t2);
    }
    return out;
}

std::vector<ConvergenceRow> convergence_study(const GridFunction& u0,
                                              const GridFunction& g,
                                              const SolverConfig& config,
                                              const PdeParams& params,
                                              bool nonlinear, int refinements) {
    if (refinements < 2) throw ConfigError("convergence_study: need >= 2 runs");
    std::vector<SpaceTimeField> runs;
    std::vector<double> hs;
    for (int r = 0; r < refinements; ++r) {
        SolverConfig c = config;
        const int f = 1 << r;
        c.Nx = (config.Nx - 1) * f + 1;
        c.Nt = (config.Nt - 1) * f + 1;
        runs.push_back(fd_solve(u0, g, c, params, nonlinear));
        hs.push_back(c.L / double(c.Nx - 1));
    }
    // Richardson reference: finest run + (finest - second finest)/3 on the
    // coarse points (2nd-order in time dominates)
    const SpaceTimeField& fine = runs.back();
    const SpaceTimeField& mid = runs[runs.size() - 2];
    const int f_fine = 1 << (refinements - 1);
    const int f_mid = 1 << (refinements - 2);

    std::vector<double> errs;
    for (int r = 0; r < refinements; ++r) {
        const int f = 1 << r;
        double acc = 0.0;
        for (int i = 0; i < config.Nx; ++i) {
            const cplx uf = fine.at(std::size_t(i) * f_fine, fine.nt - 1);
            const cplx um = mid.at(std::size_t(i) * f_mid, mid.nt - 1);
            const cplx ref = uf + (uf - um) / 3.0;
            const cplx uc =
                runs[std::size_t(r)].at(std::size_t(i) * f, runs[r].nt - 1);
            acc += std::norm(uc - ref);
        }
        errs.push_back(std::sqrt(acc * config.L / double(config.Nx - 1)));
    }
    std::vector<ConvergenceRow> rows;
    for (int r = 0; r < refinements; ++r) {
        ConvergenceRow row;
        row.h = hs[std::size_t(r)];
        row.error = errs[std::size_t(r)];
        row.order = (r + 1 < refinements && errs[r + 1] > 0.0)
                        ? std::log2(errs[r] / errs[r + 1])
                        : 0.0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace hnls::reference
