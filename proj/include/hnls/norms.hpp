#ifndef HNLS_NORMS_HPP
#define HNLS_NORMS_HPP

#include <optional>

#include "hnls/types.hpp"

namespace hnls::norms {

// Exact fraction arithmetic for the admissibility identity 3/mu + 1/r = 1/2.
struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational make(long long n, long long d);
    static std::optional<Rational> from_double(double v,
                                               long long max_den = 1000000);
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    bool operator==(const Rational& o) const {
        return num == o.num && den == o.den;
    }
    double value() const { return double(num) / double(den); }
};

struct SobolevSpec {
    double s = 0.0;
    std::optional<double> mu;
    std::optional<double> r;
    // exact fractions behind mu, r when the inputs were rational
    std::optional<Rational> mu_exact, r_exact;

    double temporal_exponent() const { return (s + 1.0) / 3.0; }  // m

    // 3/mu + 1/r - 1/2; exactly zero (rational) when exact forms exist
    double admissibility_residual() const;
    void validate() const;
};

// Fourier-side H^s norm of a whole-line grid function (periodic spectrum).
double hs_norm_line(const GridFunction& f, double s);

// Discrete L^2 norm consistent with hs_norm_line at s = 0 (periodic
// rectangle sum; the last duplicated endpoint is not double counted).
double l2_norm_periodic(const GridFunction& f);

// Gagliardo-type temporal seminorm
//   ( 2 int_0^T int_0^{T-t} |z(t+l) - z(t)|^2 / l^{1+2m} dl dt )^{1/2},
// 0 < m < 1, with a quadratically graded mesh absorbing the l -> 0 panel.
double fractional_time_seminorm(const GridFunction& z, double m);

// L^r norm of F^{-1}[(1+k^2)^{s/2} F f] on the periodic grid.
double bessel_norm(const GridFunction& f, double s, double r);

// L^mu in time of the per-slice Bessel norm of the (extended) field.
double mixed_norm(const SpaceTimeField& u, const SobolevSpec& spec);

// mu = 6(p+1)/(p(1-2s)), r = 2(p+1)/(1+2sp) for 0 <= s < 1/2,
// 1 <= p <= 6/(1-2s); exact rational arithmetic when s, p are rational.
SobolevSpec strichartz_exponents(double s, double p);

// Piecewise exponent sigma(s): (1-2s)/6 on [-1,1/2), (2-s)/3 on (1/2,2),
// and 1/2 at s = 2. Throws HalfExcluded at s = 1/2.
double sigma_exponent(double s);

// Growth/smoothness condition on (s, p) for the high regularity theory.
bool high_reg_condition_check(double s, double p);

// |u0(0) - g(0)| <= tol (1 + |u0(0)|)
bool compatibility_check(const GridFunction& u0, const GridFunction& g,
                         double s, double tol);

}  // namespace hnls::norms

#endif
