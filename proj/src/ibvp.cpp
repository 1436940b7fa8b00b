#include "hnls/ibvp.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "hnls/quadrature.hpp"
#include "hnls/transforms.hpp"

namespace hnls::ibvp {

namespace {

const cplx I(0.0, 1.0);

}  // namespace

GridFunction assemble_g0(const GridFunction& g, const GridFunction& ytrace,
                         const GridFunction& ztrace, double Tprime,
                         int n_out) {
    auto aligned = [&](const GridFunction& o) {
        return o.n() == g.n() && std::abs(o.a - g.a) < 1e-12 &&
               std::abs(o.b - g.b) < 1e-12;
    };
    if (!aligned(ytrace) || !aligned(ztrace))
        throw GridMismatch("assemble_g0: trace grids do not match g");
    GridFunction diff = g;
    for (std::size_t i = 0; i < diff.n(); ++i)
        diff.values[i] -= ytrace.values[i] + ztrace.values[i];
    return transforms::extend_boundary(diff, Tprime, n_out);
}

namespace {

// Integrand envelope |k|^j |w'(k)| |g0~(w(k), T')| at a gamma-branch height m.
double branch_envelope(const GridFunction& g0, const PdeParams& params,
                       double lambda, double m, int j) {
    double env = 0.0;
    for (int side : {1, 3}) {
        auto [k, kp] = contour::gamma_path(side, m, params, lambda);
        (void)kp;
        const cplx w = spectral::omega(k, params);
        const cplx tr = quad::filon_exp(g0.values, g0.a, g0.h(), w);
        env = std::max(env, std::pow(std::abs(k), j) *
                                std::abs(spectral::omega_prime(k, params)) *
                                std::abs(tr));
    }
    return env;
}

}  // namespace

double auto_truncation(const GridFunction& g0, const PdeParams& params,
                       double lambda, double tail_rtol, int j_max,
                       double M_cap) {
    g0.validate("auto_truncation");
    const double ht = g0.h();
    // cost guard: past ~3 pi / ht the sampled datum carries no content
    double m_cap_res = std::max(lambda + 1.0, 2.0 * lambda);
    while (std::abs(spectral::omega(
                        contour::gamma_path(3, m_cap_res, params, lambda).first,
                        params)) < 3.0 * pi / ht &&
           m_cap_res < 1e6)
        m_cap_res *= 1.05;
    if (M_cap <= 0.0) M_cap = m_cap_res;
    M_cap = std::min(M_cap, m_cap_res);

    const double m0 = lambda + 1e-3 * (1.0 + lambda);
    const int probes = 128;
    std::vector<double> ms(probes), env(probes);
    for (int q = 0; q < probes; ++q) {
        ms[q] = m0 * std::pow(M_cap / m0, double(q) / (probes - 1));
        env[q] = branch_envelope(g0, params, lambda, ms[q], j_max);
    }
    // truncation error proxy: remaining integral of the envelope, with a
    // conservative m^{-3} continuation beyond the last probe
    std::vector<double> tail(probes + 1, 0.0);
    tail[probes] = env[probes - 1] * ms[probes - 1] / 2.0;
    for (int q = probes - 1; q > 0; --q)
        tail[q] = tail[q + 1] + 0.5 * (env[q] + env[q - 1]) * (ms[q] - ms[q - 1]);
    tail[0] = tail[1];
    const double total = tail[0] + 1e-300;
    if (total <= 1e-280) return std::max(2.0 * lambda + 1.0, m0 + 1.0);
    for (int q = 1; q < probes; ++q)
        if (tail[q + 1] <= tail_rtol * total) return ms[q] * 1.1;
    throw TruncationInsufficient(
        "auto_truncation: integrand envelope tail does not fall below "
        "tail_rtol of its total within the resolution of the boundary grid; "
        "refine Nt_boundary or smooth the datum");
}

SpaceTimeField solve_reduced(const GridFunction& g0,
                             const contour::ContourSpec& ct,
                             const PdeParams& params, double xa, double xb,
                             int nx, double ta, double tb, int nt,
                             const ReducedOptions& opts) {
    g0.validate("solve_reduced");
    if (std::abs(g0.values.back()) >
        1e-10 * (1.0 + std::abs(g0.values.front())))
        throw ConfigError("solve_reduced: g0 must vanish at T' (compact "
                          "support from extend_boundary)");

    const std::size_t n_nodes = ct.nodes.size();
    std::vector<cplx> amp(n_nodes);
    std::vector<double> env(n_nodes);
    double env_max = 0.0;
    for (std::size_t i = 0; i < n_nodes; ++i) {
        const contour::ContourNode& nd = ct.nodes[i];
        const cplx w = spectral::omega(nd.k, params);
        const cplx tr = quad::filon_exp(g0.values, g0.a, g0.h(), w);
        const cplx wp = spectral::omega_prime(nd.k, params);
        cplx jfac = 1.0;
        for (int j = 0; j < opts.deriv_j; ++j) jfac *= I * nd.k;
        amp[i] = (-I / (2.0 * pi)) * jfac * wp * tr * nd.dk * nd.w;
        env[i] = std::abs(jfac * wp * tr);
        env_max = std::max(env_max, env[i]);
    }

    if (opts.check_tail && env_max > 0.0) {
        const double far = 0.9 * ct.truncation_M;
        double env_far = 0.0, integral = 0.0;
        for (std::size_t i = 0; i < n_nodes; ++i) {
            integral += env[i] * std::abs(ct.nodes[i].dk) * ct.nodes[i].w;
            const double depth = ct.form == contour::Form::Gamma
                                     ? ct.nodes[i].k.imag()
                                     : std::abs(ct.nodes[i].k.real());
            if (depth >= far) env_far = std::max(env_far, env[i]);
        }
        // pointwise-at-the-end value extrapolated to a remaining-tail proxy
        if (env_far * ct.truncation_M * 0.5 >
            50.0 * opts.tail_rtol * integral)
            throw TruncationInsufficient(
                "solve_reduced: integrand envelope at the contour ends is "
                "not negligible; increase truncation_M");
    }

    SpaceTimeField q(xa, xb, std::size_t(nx), ta, tb, std::size_t(nt));

    // blocked evaluation: q(x,t) = sum_i amp_i e^{i k_i x} e^{-w_i t}
    const std::size_t block = 768;
    std::vector<cplx> Ex(block * q.nx), Et(block * q.nt);
    for (std::size_t b0 = 0; b0 < n_nodes; b0 += block) {
        const std::size_t nb = std::min(block, n_nodes - b0);
        for (std::size_t b = 0; b < nb; ++b) {
            const cplx k = ct.nodes[b0 + b].k;
            const cplx w = spectral::omega(k, params);
            const cplx ex0 = std::exp(I * k * q.xa);
            const cplx exh = std::exp(I * k * q.hx());
            cplx e = ex0;
            for (std::size_t ix = 0; ix < q.nx; ++ix) {
                Ex[b * q.nx + ix] = e;
                e *= exh;
            }
            const cplx et0 = std::exp(-w * q.ta);
            const cplx eth = std::exp(-w * q.ht());
            cplx f = et0;
            for (std::size_t it = 0; it < q.nt; ++it) {
                Et[b * q.nt + it] = f;
                f *= eth;
            }
        }
        auto run_rows = [&](std::size_t it_lo, std::size_t it_hi) {
            for (std::size_t it = it_lo; it < it_hi; ++it) {
                cplx* row = &q.values[it * q.nx];
                for (std::size_t b = 0; b < nb; ++b) {
                    const cplx c = amp[b0 + b] * Et[b * q.nt + it];
                    const cplx* ex = &Ex[b * q.nx];
                    for (std::size_t ix = 0; ix < q.nx; ++ix)
                        row[ix] += c * ex[ix];
                }
            }
        };
        const int nthreads = std::max(1, opts.threads);
        if (nthreads == 1 || q.nt < 8) {
            run_rows(0, q.nt);
        } else {
            std::vector<std::thread> pool;
            const std::size_t chunk = (q.nt + nthreads - 1) / nthreads;
            for (int th = 0; th < nthreads; ++th) {
                const std::size_t lo = th * chunk;
                const std::size_t hi = std::min(q.nt, lo + chunk);
                if (lo >= hi) break;
                pool.emplace_back(run_rows, lo, hi);
            }
            for (auto& th : pool) th.join();
        }
    }
    return q;
}

namespace {

std::size_t time_index(const SpaceTimeField& q, double t) {
    if (q.nt == 1) {
        if (std::abs(t - q.ta) > 1e-9 * (1.0 + std::abs(t)))
            throw GridMismatch("requested time is not a field grid slice");
        return 0;
    }
    const double pos = (t - q.ta) / q.ht();
    const std::size_t n = std::size_t(std::lround(pos));
    if (n >= q.nt || std::abs(pos - double(n)) > 1e-6)
        throw GridMismatch("requested time is not a field grid slice");
    return n;
}

}  // namespace

GlobalRelationCheck global_relation_residual(const SpaceTimeField& q,
                                             const GridFunction& g0, cplx k,
                                             double t,
                                             const PdeParams& params) {
    if (k.imag() > 0.0)
        throw UpperHalfPlane("global_relation_residual: need Im(k) <= 0");
    const std::size_t n_t = time_index(q, t);
    const cplx w = spectral::omega(k, params);

    GridFunction slice = q.slice(n_t);
    const cplx qhat =
        quad::filon_exp(slice.values, slice.a, slice.h(), -I * k);

    // boundary x-derivative traces from one-sided stencils
    const double h = q.hx();
    GridFunction d1(q.ta, q.tb, q.nt, GridKind::Temporal);
    GridFunction d2(q.ta, q.tb, q.nt, GridKind::Temporal);
    for (std::size_t n = 0; n < q.nt; ++n) {
        const cplx f0 = q.at(0, n), f1 = q.at(1, n), f2 = q.at(2, n),
                   f3 = q.at(3, n), f4 = q.at(4, n);
        d1.values[n] =
            (-11.0 * f0 + 18.0 * f1 - 9.0 * f2 + 2.0 * f3) / (6.0 * h);
        d2.values[n] = (35.0 * f0 - 104.0 * f1 + 114.0 * f2 - 56.0 * f3 +
                        11.0 * f4) /
                       (12.0 * h * h);
    }
    const cplx g0t = quad::filon_exp(g0.values, g0.a, g0.h(), w, t);
    const cplx g1t = quad::filon_exp(d1.values, d1.a, d1.h(), w, t);
    const cplx g2t = quad::filon_exp(d2.values, d2.a, d2.h(), w, t);

    const double a = params.alpha, b = params.beta, d = params.delta;
    const cplx lhs = std::exp(w * t) * qhat;
    const cplx t0 = (-b * k * k + a * k + d) * g0t;
    const cplx t1 = I * (b * k - a) * g1t;
    const cplx t2 = b * g2t;
    GlobalRelationCheck out;
    out.residual = lhs - (t0 + t1 + t2);
    out.scale = std::max({std::abs(lhs), std::abs(t0), std::abs(t1),
                          std::abs(t2), 1e-300});
    return out;
}

cplx vanish_check(const SpaceTimeField& q, const contour::ContourSpec& ct,
                  double t, const PdeParams& params, double x_sample,
                  double eps_cut) {
    const std::size_t n_t = time_index(q, t);
    GridFunction slice = q.slice(n_t);
    const spectral::SpectralClassification cls = spectral::classify(params);

    cplx acc = 0.0;
    for (const contour::ContourNode& nd : ct.nodes) {
        auto [np, nm] = spectral::nu_both(nd.k, cls, params, eps_cut);
        if (np.imag() > 1e-9 || nm.imag() > 1e-9)
            throw UpperHalfPlane(
                "vanish_check: Im(nu) > 0 on the contour (deformation "
                "violated)");
        const cplx dnu = nm - np;
        if (std::abs(dnu) < 1e-8 * (1.0 + std::abs(nd.k)))
            throw DegenerateSymmetry("vanish_check: nu_- - nu_+ ~ 0 on node");
        const cplx qp = quad::filon_exp(
            slice.values, slice.a, slice.h(),
            -I * cplx(np.real(), std::min(np.imag(), 0.0)));
        const cplx qm = quad::filon_exp(
            slice.values, slice.a, slice.h(),
            -I * cplx(nm.real(), std::min(nm.imag(), 0.0)));
        const cplx bracket = ((nm - nd.k) / dnu) * qp - ((np - nd.k) / dnu) * qm;
        acc += std::exp(I * nd.k * x_sample) * bracket * nd.dk * nd.w;
    }
    return acc / (2.0 * pi);
}

std::pair<cplx, cplx> reconstruct_boundary_transforms(
    cplx qhat_nu_plus, cplx qhat_nu_minus, cplx g0_transform, cplx k, double t,
    const PdeParams& params, const spectral::SpectralClassification& cls,
    double eps_degenerate) {
    auto [np, nm] = spectral::nu_both(k, cls, params, 0.0);
    const cplx dnu_pm = np - nm;
    if (std::abs(dnu_pm) < eps_degenerate * (1.0 + std::abs(k)))
        throw DegenerateSymmetry(
            "reconstruct_boundary_transforms: nu_+ - nu_- ~ 0");
    const double a = params.alpha, b = params.beta;
    const cplx w = spectral::omega(k, params);
    const cplx ewt = std::exp(w * t);
    const cplx g1 = ewt * (qhat_nu_plus - qhat_nu_minus) / (I * b * dnu_pm) +
                    I * k * g0_transform;
    const cplx g2 = ewt *
                        ((b * nm - a) * qhat_nu_plus -
                         (b * np - a) * qhat_nu_minus) /
                        (b * b * (nm - np)) -
                    k * k * g0_transform;
    return {g1, g2};
}

double suplem_ratio(int j, const std::vector<double>& m_grid,
                    const PdeParams& params, double lambda) {
    double best = 0.0;
    for (double m : m_grid) {
        auto [k, kp] = contour::gamma_path(1, m, params, lambda);
        const double tau = (I * spectral::omega(k, params)).real();
        const double taup =
            (I * spectral::omega_prime(k, params) * kp).real();
        const double num = std::pow(std::abs(k), 2 * j) * taup;
        const double den = std::pow(1.0 + tau * tau, double(j + 1) / 3.0);
        best = std::max(best, num / den);
    }
    return best;
}

namespace {

struct KernelPhase {
    // phi(m) = m (x - y) + t (-8 b m^3 + 8 a m^2 + 2 (d - a^2/b) m - a d / b)
    double c3, c2, c1, c0;
    double operator()(double m) const {
        return ((c3 * m + c2) * m + c1) * m + c0;
    }
    double d1(double m) const { return (3.0 * c3 * m + 2.0 * c2) * m + c1; }
    double d2(double m) const { return 6.0 * c3 * m + 2.0 * c2; }
};

KernelPhase kernel_phase(double x, double y, double t,
                         const PdeParams& params) {
    const double a = params.alpha, b = params.beta, d = params.delta;
    KernelPhase p;
    p.c3 = -8.0 * b * t;
    p.c2 = 8.0 * a * t;
    p.c1 = (x - y) + 2.0 * t * (d - a * a / b);
    p.c0 = -t * a * d / b;
    return p;
}

}  // namespace

cplx oscillatory_kernel_K(double y, double x, double z, double t,
                          const PdeParams& params,
                          const contour::ContourSpec& ct, double quad_tol) {
    if (t == 0.0) throw TimeZero("oscillatory_kernel_K: t must be nonzero");
    if (z < 0.0) throw OutOfInterval("oscillatory_kernel_K: need z >= 0");
    const double a3 = params.alpha / (3.0 * params.beta);
    const double c3t = params.discriminant() /
                       (3.0 * params.beta * params.beta);
    auto s_of = [&](double m) {
        return std::sqrt(std::max(0.0, 3.0 * (m - a3) * (m - a3) - c3t));
    };
    auto p_of = [&](double m) { return std::exp(-z * s_of(m)); };
    const KernelPhase phi = kernel_phase(x, y, t, params);
    const double cm = ct.c_minus;

    // lower truncation: beyond stationary points, with either exponential
    // amplitude decay or a controlled integration-by-parts remainder
    double m_lo = cm - 2.0;
    const double disc_q = phi.c2 * phi.c2 - 3.0 * phi.c3 * phi.c1;
    if (disc_q > 0.0) {
        const double r1 = (-phi.c2 - std::sqrt(disc_q)) / (3.0 * phi.c3);
        const double r2 = (-phi.c2 + std::sqrt(disc_q)) / (3.0 * phi.c3);
        m_lo = std::min(m_lo, std::min(r1, r2) - 1.0);
    }
    for (int it = 0; it < 200; ++it) {
        const double damp = p_of(m_lo);
        const double dp = std::abs(phi.d1(m_lo));
        if (damp < 1e-16) break;
        if (dp > 10.0 &&
            damp * (1.0 / dp + std::abs(phi.d2(m_lo)) / (dp * dp * dp)) <
                0.05 * quad_tol)
            break;
        m_lo = cm - 1.6 * (cm - m_lo);
    }

    // stationary points inside (m_lo, c_-) split the panel grading
    std::vector<double> splits{m_lo};
    if (disc_q > 0.0) {
        for (double r : {(-phi.c2 - std::sqrt(disc_q)) / (3.0 * phi.c3),
                         (-phi.c2 + std::sqrt(disc_q)) / (3.0 * phi.c3)})
            if (r > m_lo + 1e-12 && r < cm - 1e-12) splits.push_back(r);
    }
    std::sort(splits.begin(), splits.end());
    splits.push_back(cm);

    auto integrand = [&](double m) {
        return std::exp(I * phi(m)) * p_of(m);
    };

    cplx acc = 0.0;
    for (std::size_t seg = 0; seg + 1 < splits.size(); ++seg) {
        const double aa = splits[seg], bb = splits[seg + 1];
        const double span = std::abs(phi(bb) - phi(aa));
        int n_panels = std::max(2, int(std::ceil(span / pi)) + 2);
        std::vector<double> breaks = quad::graded_breakpoints(
            aa, bb, [&](double m) { return phi(m); }, n_panels);
        // geometric refinement against the amplitude corner at c_-
        if (seg + 2 == splits.size() && ct.lambda == 0.0) {
            const double w = breaks[breaks.size() - 1] -
                             breaks[breaks.size() - 2];
            for (int lvl = 1; lvl <= 8; ++lvl)
                breaks.insert(breaks.end() - 1,
                              cm - w * std::pow(0.25, lvl));
            std::sort(breaks.begin(), breaks.end());
        }
        acc += quad::integrate_panels(breaks, integrand, 8);
    }
    // IBP tail below m_lo when the amplitude alone did not kill it
    if (p_of(m_lo) >= 1e-16) {
        const double dp = phi.d1(m_lo);
        const double sp = s_of(m_lo) > 0.0
                              ? 3.0 * (m_lo - a3) / s_of(m_lo)
                              : 0.0;
        const cplx e = std::exp(I * phi(m_lo)) * p_of(m_lo);
        const cplx lead = e / (I * dp);
        const cplx corr = e * ((-z * sp) / (I * dp) - phi.d2(m_lo) /
                                                          (I * dp * I * dp)) /
                          (I * dp);
        acc += lead - corr;
    }
    return acc;
}

GridFunction modified_laplace(const GridFunction& f, LaplaceDirection dir,
                              const PdeParams& params, double lambda,
                              const LaplaceOptions& opts) {
    f.validate("modified_laplace");
    const double a3 = params.alpha / (3.0 * params.beta);
    const double c3t =
        params.discriminant() / (3.0 * params.beta * params.beta);
    auto s_of = [&](double m) {
        const double rad = 3.0 * (m - a3) * (m - a3) - c3t;
        if (rad < -1e-12)
            throw NegativeRadicand("modified_laplace: m beyond c_-");
        return std::sqrt(std::max(0.0, rad));
    };
    auto [cmin, cplus] = contour::c_pm(params, lambda);
    (void)cplus;

    if (dir == LaplaceDirection::Forward) {
        if (f.b > cmin + 1e-9)
            throw OutOfInterval("modified_laplace: forward input must live on "
                                "(-inf, c_-]");
        GridFunction out(0.0, opts.x_max, std::size_t(opts.n_out),
                         GridKind::Spatial);
        const double hm = f.h();
        for (std::size_t i = 0; i < out.n(); ++i) {
            const double x = out.coord(i);
            cplx acc = 0.0;
            for (std::size_t q = 0; q < f.n(); ++q) {
                const double wq = (q == 0 || q + 1 == f.n()) ? 0.5 : 1.0;
                acc += wq * std::exp(-x * s_of(f.coord(q))) * f.values[q];
            }
            out.values[i] = acc * hm;
        }
        return out;
    }
    // adjoint: output on an m-grid ending at c_-
    const double m_lo = opts.m_lo != 0.0 ? opts.m_lo : cmin - 10.0;
    GridFunction out(m_lo, cmin, std::size_t(opts.n_out), GridKind::Spatial);
    const double hx = f.h();
    for (std::size_t i = 0; i < out.n(); ++i) {
        const double s = s_of(out.coord(i));
        cplx acc = 0.0;
        for (std::size_t q = 0; q < f.n(); ++q) {
            const double wq = (q == 0 || q + 1 == f.n()) ? 0.5 : 1.0;
            acc += wq * std::exp(-f.coord(q) * s) * f.values[q];
        }
        out.values[i] = acc * hx;
    }
    return out;
}

}  // namespace hnls::ibvp
