#ifndef HNLS_QUADRATURE_HPP
#define HNLS_QUADRATURE_HPP

#include <functional>
#include <span>
#include <vector>

#include "hnls/types.hpp"

namespace hnls::quad {

// Gauss-Legendre nodes and weights on [-1, 1]; cached per order.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(int order);

// Composite trapezoid of uniformly sampled values with spacing h.
cplx trapz(std::span<const cplx> f, double h);
double trapz_abs2(std::span<const cplx> f, double h);

// integral_a^{x_end} e^{c x} f(x) dx for f sampled uniformly on [a, b].
// f is replaced cell-by-cell with its local cubic interpolant and each cell
// is integrated exactly against the exponential, so the result stays
// accurate for arbitrarily large |Im c| (no aliasing from oscillation).
// Requires Re(c) * (x - a) bounded above on the grid; all call sites here
// have Re(c) <= 0. x_end defaults to b; a partial final cell is allowed.
cplx filon_exp(std::span<const cplx> f, double a, double h, cplx c,
               double x_end);
inline cplx filon_exp(std::span<const cplx> f, double a, double h, cplx c) {
    return filon_exp(f, a, h, c, a + h * double(f.size() - 1));
}

// Moments M_j = integral_0^s e^{c u} u^j du, j = 0..3.
void exp_moments(cplx c, double s, cplx out[4]);

// Breakpoints a = m_0 < ... < m_N = b such that |psi(m_{j+1}) - psi(m_j)|
// is roughly constant, for monotone psi; used to grade oscillatory panels.
std::vector<double> graded_breakpoints(double a, double b,
                                       const std::function<double(double)>& psi,
                                       int n_panels);

// Composite Gauss-Legendre of g over explicit panel breakpoints.
cplx integrate_panels(const std::vector<double>& breaks,
                      const std::function<cplx(double)>& g, int gl_order);

}  // namespace hnls::quad

#endif
