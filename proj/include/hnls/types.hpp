#ifndef HNLS_TYPES_HPP
#define HNLS_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace hnls {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Error hierarchy. Numerical preconditions throw; callers that can recover
// (contour deformation, horizon halving) catch the specific type.
// ---------------------------------------------------------------------------
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define HNLS_DEFINE_ERROR(NAME)                                  \
    struct NAME : Error {                                        \
        explicit NAME(const std::string& msg) : Error(msg) {}    \
    }

HNLS_DEFINE_ERROR(OnBranchCut);
HNLS_DEFINE_ERROR(UpperHalfPlane);
HNLS_DEFINE_ERROR(TailTooLarge);
HNLS_DEFINE_ERROR(TruncationInsufficient);
HNLS_DEFINE_ERROR(DegenerateSymmetry);
HNLS_DEFINE_ERROR(GridMismatch);
HNLS_DEFINE_ERROR(TimeZero);
HNLS_DEFINE_ERROR(ExponentOutOfRange);
HNLS_DEFINE_ERROR(RangeViolation);
HNLS_DEFINE_ERROR(HalfExcluded);
HNLS_DEFINE_ERROR(NegativeRadicand);
HNLS_DEFINE_ERROR(OutOfInterval);
HNLS_DEFINE_ERROR(NoContraction);
HNLS_DEFINE_ERROR(IncompatibleData);
HNLS_DEFINE_ERROR(RegularityGate);
HNLS_DEFINE_ERROR(InnerSolveDiverged);
HNLS_DEFINE_ERROR(ConfigError);

#undef HNLS_DEFINE_ERROR

// ---------------------------------------------------------------------------
// Equation coefficients of  i u_t + i beta u_xxx + alpha u_xx + i delta u_x
//                           = kappa |u|^p u.
// beta > 0 is the standing assumption (one boundary condition at x = 0).
// ---------------------------------------------------------------------------
struct PdeParams {
    double alpha = 0.0;
    double beta  = 1.0;
    double delta = 0.0;
    cplx   kappa = 0.0;
    double p     = 2.0;

    double discriminant() const { return alpha * alpha + 3.0 * beta * delta; }

    void validate() const;
};

enum class DiscCase { PositiveDisc, ZeroDisc, NegativeDisc };

// ---------------------------------------------------------------------------
// Uniformly sampled function on a closed interval, endpoints included.
// ---------------------------------------------------------------------------
enum class GridKind { Spatial, Temporal };

struct GridFunction {
    double a = 0.0;
    double b = 1.0;
    std::vector<cplx> values;
    GridKind kind = GridKind::Spatial;

    GridFunction() = default;
    GridFunction(double a_, double b_, std::size_t n, GridKind k)
        : a(a_), b(b_), values(n, cplx(0.0)), kind(k) {}

    std::size_t n() const { return values.size(); }
    double h() const { return (b - a) / double(values.size() - 1); }
    double coord(std::size_t i) const { return a + h() * double(i); }

    void validate(const char* who) const;
};

// Complex samples u(x_i, t_n) on a uniform space-time grid; x runs fastest.
struct SpaceTimeField {
    double xa = 0.0, xb = 1.0;
    double ta = 0.0, tb = 1.0;
    std::size_t nx = 0, nt = 0;
    std::vector<cplx> values;

    SpaceTimeField() = default;
    SpaceTimeField(double xa_, double xb_, std::size_t nx_, double ta_,
                   double tb_, std::size_t nt_)
        : xa(xa_), xb(xb_), ta(ta_), tb(tb_), nx(nx_), nt(nt_),
          values(nx_ * nt_, cplx(0.0)) {}

    double hx() const { return nx > 1 ? (xb - xa) / double(nx - 1) : 0.0; }
    double ht() const { return nt > 1 ? (tb - ta) / double(nt - 1) : 0.0; }
    double x(std::size_t i) const { return xa + hx() * double(i); }
    double t(std::size_t n) const { return ta + ht() * double(n); }

    cplx& at(std::size_t ix, std::size_t it) { return values[it * nx + ix]; }
    const cplx& at(std::size_t ix, std::size_t it) const {
        return values[it * nx + ix];
    }

    GridFunction slice(std::size_t it) const {
        GridFunction g(xa, xb, nx, GridKind::Spatial);
        for (std::size_t i = 0; i < nx; ++i) g.values[i] = at(i, it);
        return g;
    }
};

// ---------------------------------------------------------------------------
// Numerical parameters shared by the solver pipeline.
// ---------------------------------------------------------------------------
struct SolverConfig {
    double T      = 1.0;    // solution horizon
    double Tprime = 2.0;    // transform horizon, > T
    double L      = 30.0;   // spatial cutoff of the half-line grid
    int    Nx     = 513;    // samples on [0, L]
    int    Nt     = 257;    // samples on [0, T]
    int    Nt_boundary = 2049;  // samples on [0, Tprime] for boundary data

    double contour_density = 1.0;
    double truncation_M    = 0.0;   // <= 0 requests the automatic rule
    double lambda_margin   = 1.5;   // multiplies the lower bound on lambda
    int    gl_order        = 6;     // Gauss-Legendre points per panel

    double quad_tol        = 1.0e-6;
    double tail_tol        = 1.0e-9;
    double contour_tail_rtol = 1.0e-5;  // truncation criterion, relative
    double eps_cut         = 1.0e-10;
    double decay_tol       = 1.0e-8;
    double fixed_point_tol = 1.0e-10;
    int    max_picard      = 25;
    double smallness_gate  = 0.5;   // critical-p data-norm threshold

    int threads = 1;

    void validate() const;
};

}  // namespace hnls

#endif
