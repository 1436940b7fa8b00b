#include "hnls/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace hnls::quad {

namespace {

GaussRule compute_gauss(int n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev-like initial guess
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = x;
        r.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return r;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gauss(order)).first;
    return it->second;
}

cplx trapz(std::span<const cplx> f, double h) {
    if (f.size() < 2) return 0.0;
    cplx s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s * h;
}

double trapz_abs2(std::span<const cplx> f, double h) {
    if (f.size() < 2) return 0.0;
    double s = 0.5 * (std::norm(f.front()) + std::norm(f.back()));
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += std::norm(f[i]);
    return s * h;
}

void exp_moments(cplx c, double s, cplx out[4]) {
    const cplx z = c * s;
    if (std::abs(z) < 0.5) {
        // M_j = s^{j+1} sum_m z^m / (m! (j+m+1))
        for (int j = 0; j < 4; ++j) {
            cplx term = 1.0 / double(j + 1);
            cplx sum = term;
            cplx zm = 1.0;
            double fact = 1.0;
            for (int m = 1; m < 24; ++m) {
                zm *= z;
                fact *= m;
                term = zm / (fact * double(j + m + 1));
                sum += term;
                if (std::abs(term) < 1e-18 * std::abs(sum)) break;
            }
            out[j] = sum * std::pow(s, j + 1);
        }
        return;
    }
    const cplx e = std::exp(z);
    out[0] = (e - 1.0) / c;
    double sj = 1.0;
    for (int j = 1; j < 4; ++j) {
        sj *= s;
        out[j] = (sj * e - double(j) * out[j - 1]) / c;
    }
}

namespace {

// Cubic coefficients around sigma-origin x_i for cell [x_i, x_{i+1}];
// stencil picks 4 samples clamped to the grid.
void cell_cubic(std::span<const cplx> f, std::size_t i, double h, cplx c[4]) {
    const std::size_t n = f.size();
    if (n == 2) {  // linear fallback
        c[0] = f[0 + i];
        c[1] = (f[i + 1] - f[i]) / h;
        c[2] = c[3] = 0.0;
        return;
    }
    if (n == 3) {  // quadratic through all three, expanded around x_i
        const cplx d1 = (f[2] - f[0]) / (2.0 * h);
        const cplx d2 = (f[0] - 2.0 * f[1] + f[2]) / (h * h);
        c[0] = f[i];
        c[1] = d1 + d2 * ((double(i) - 1.0) * h);
        c[2] = 0.5 * d2;
        c[3] = 0.0;
        return;
    }
    const double h2 = h * h, h3 = h2 * h;
    if (i == 0) {
        c[0] = f[0];
        c[1] = (-11.0 * f[0] + 18.0 * f[1] - 9.0 * f[2] + 2.0 * f[3]) / (6.0 * h);
        c[2] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (2.0 * h2);
        c[3] = (-f[0] + 3.0 * f[1] - 3.0 * f[2] + f[3]) / (6.0 * h3);
    } else if (i + 2 >= n) {  // last cell: stencil f[n-4..n-1], origin x_{n-2}
        const cplx fa = f[n - 4], fb = f[n - 3], fc = f[n - 2], fd = f[n - 1];
        c[0] = fc;
        c[1] = (fa - 6.0 * fb + 3.0 * fc + 2.0 * fd) / (6.0 * h);
        c[2] = (fb - 2.0 * fc + fd) / (2.0 * h2);
        c[3] = (-fa + 3.0 * fb - 3.0 * fc + fd) / (6.0 * h3);
    } else {  // interior: stencil f[i-1..i+2], origin x_i
        const cplx fa = f[i - 1], fb = f[i], fc = f[i + 1], fd = f[i + 2];
        c[0] = fb;
        c[1] = (-2.0 * fa - 3.0 * fb + 6.0 * fc - fd) / (6.0 * h);
        c[2] = (fa - 2.0 * fb + fc) / (2.0 * h2);
        c[3] = (-fa + 3.0 * fb - 3.0 * fc + fd) / (6.0 * h3);
    }
}

}  // namespace

cplx filon_exp(std::span<const cplx> f, double a, double h, cplx c,
               double x_end) {
    const std::size_t n = f.size();
    if (n < 2 || x_end <= a) return 0.0;
    const double b = a + h * double(n - 1);
    if (x_end > b + 1e-12 * (std::abs(b) + h))
        throw OutOfInterval("filon_exp: x_end beyond the sampled interval");
    x_end = std::min(x_end, b);

    const std::size_t full = std::min<std::size_t>(
        n - 2, std::size_t(std::floor((x_end - a) / h + 1e-12)));

    cplx full_m[4];
    exp_moments(c, h, full_m);
    const cplx r = std::exp(c * h);

    cplx acc = 0.0;
    cplx ecx = std::exp(c * a);
    cplx coef[4];
    for (std::size_t i = 0; i < full; ++i) {
        cell_cubic(f, i, h, coef);
        acc += ecx * (coef[0] * full_m[0] + coef[1] * full_m[1] +
                      coef[2] * full_m[2] + coef[3] * full_m[3]);
        ecx *= r;
    }
    const double rem = x_end - (a + h * double(full));
    if (rem > 1e-14 * h) {
        cplx part_m[4];
        exp_moments(c, rem, part_m);
        cell_cubic(f, full, h, coef);
        acc += ecx * (coef[0] * part_m[0] + coef[1] * part_m[1] +
                      coef[2] * part_m[2] + coef[3] * part_m[3]);
    }
    return acc;
}

std::vector<double> graded_breakpoints(double a, double b,
                                       const std::function<double(double)>& psi,
                                       int n_panels) {
    std::vector<double> breaks;
    breaks.reserve(n_panels + 1);
    breaks.push_back(a);
    const double pa = psi(a), pb = psi(b);
    for (int j = 1; j < n_panels; ++j) {
        const double target = pa + (pb - pa) * double(j) / double(n_panels);
        double lo = breaks.back(), hi = b;
        const bool incr = pb > pa;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            if ((psi(mid) < target) == incr)
                lo = mid;
            else
                hi = mid;
        }
        breaks.push_back(0.5 * (lo + hi));
    }
    breaks.push_back(b);
    return breaks;
}

cplx integrate_panels(const std::vector<double>& breaks,
                      const std::function<cplx(double)>& g, int gl_order) {
    const GaussRule& rule = gauss_legendre(gl_order);
    cplx acc = 0.0;
    for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
        const double mid = 0.5 * (breaks[j] + breaks[j + 1]);
        const double rad = 0.5 * (breaks[j + 1] - breaks[j]);
        cplx panel = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q)
            panel += rule.weights[q] * g(mid + rad * rule.nodes[q]);
        acc += panel * rad;
    }
    return acc;
}

}  // namespace hnls::quad
