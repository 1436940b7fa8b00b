#ifndef HNLS_SCENARIO_HPP
#define HNLS_SCENARIO_HPP

#include <string>

#include "hnls/types.hpp"

// Config-driven problem setup: PDE parameters, numerics, and the initial /
// boundary data given either as named analytic profiles or CSV paths.

namespace hnls::scenario {

struct Profile {
    enum class Kind { Gaussian, Bump, Mode, Zero, Csv } kind = Kind::Zero;
    double amplitude = 1.0;
    double center = 0.0;
    double width = 1.0;
    double k0 = 0.0;      // carrier wavenumber for Mode
    std::string csv_path;

    cplx eval(double x) const;
    GridFunction sample(double a, double b, int n, GridKind gk) const;
};

struct Setup {
    PdeParams params;
    SolverConfig config;
    double s = 1.0;           // Sobolev regularity exponent
    Profile u0, g;
    std::uint64_t seed = 0x243F6A8885A308D3ull;

    GridFunction sample_u0() const;
    GridFunction sample_g(int n = 0) const;
};

Setup parse_config_file(const std::string& path);
Setup parse_config_json(const std::string& text);
Setup default_setup();

}  // namespace hnls::scenario

#endif
