#include "hnls/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hnls/io.hpp"

namespace hnls::scenario {

using nlohmann::json;

cplx Profile::eval(double x) const {
    const double r = (x - center) / width;
    switch (kind) {
        case Kind::Zero:
            return 0.0;
        case Kind::Gaussian:
            return amplitude * std::exp(-0.5 * r * r);
        case Kind::Bump:
            if (std::abs(r) >= 1.0) return 0.0;
            return amplitude * std::exp(1.0 - 1.0 / (1.0 - r * r));
        case Kind::Mode:
            return amplitude * std::exp(-0.5 * r * r) *
                   std::exp(cplx(0.0, k0 * x));
        case Kind::Csv:
            throw Error("Profile::eval: CSV profiles are grid-backed");
    }
    return 0.0;
}

GridFunction Profile::sample(double a, double b, int n, GridKind gk) const {
    if (kind == Kind::Csv) {
        GridFunction g = io::load_grid_csv(csv_path, gk);
        if (std::abs(g.a - a) > 1e-9 || std::abs(g.b - b) > 1e-9)
            throw ConfigError("CSV profile domain does not match the request");
        return g;
    }
    GridFunction g(a, b, std::size_t(n), gk);
    for (std::size_t i = 0; i < g.n(); ++i) g.values[i] = eval(g.coord(i));
    return g;
}

GridFunction Setup::sample_u0() const {
    return u0.sample(0.0, config.L, config.Nx, GridKind::Spatial);
}

GridFunction Setup::sample_g(int n) const {
    if (n <= 1) n = (config.Nt_boundary - 1) / 2 + 1;
    return g.sample(0.0, config.T, n, GridKind::Temporal);
}

namespace {

Profile parse_profile(const json& j) {
    Profile p;
    if (j.is_string()) {
        p.kind = Profile::Kind::Csv;
        p.csv_path = j.get<std::string>();
        return p;
    }
    const std::string kind = j.value("kind", "zero");
    if (kind == "gaussian")
        p.kind = Profile::Kind::Gaussian;
    else if (kind == "bump")
        p.kind = Profile::Kind::Bump;
    else if (kind == "mode")
        p.kind = Profile::Kind::Mode;
    else if (kind == "zero")
        p.kind = Profile::Kind::Zero;
    else if (kind == "csv") {
        p.kind = Profile::Kind::Csv;
        p.csv_path = j.at("path").get<std::string>();
        return p;
    } else {
        throw ConfigError("unknown profile kind: " + kind);
    }
    p.amplitude = j.value("amplitude", 1.0);
    p.center = j.value("center", 0.0);
    p.width = j.value("width", 1.0);
    p.k0 = j.value("k0", 0.0);
    if (p.width <= 0.0) throw ConfigError("profile width must be positive");
    return p;
}

}  // namespace

Setup parse_config_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config JSON parse error: ") + e.what());
    }
    Setup s;
    if (j.contains("params")) {
        const json& p = j["params"];
        s.params.alpha = p.value("alpha", 0.0);
        s.params.beta = p.value("beta", 1.0);
        s.params.delta = p.value("delta", 0.0);
        s.params.kappa =
            cplx(p.value("kappa_re", 0.0), p.value("kappa_im", 0.0));
        s.params.p = p.value("p", 2.0);
    }
    if (j.contains("sobolev")) s.s = j["sobolev"].value("s", 1.0);
    if (j.contains("numerics")) {
        const json& n = j["numerics"];
        SolverConfig& c = s.config;
        c.T = n.value("T", c.T);
        c.Tprime = n.value("Tprime", 2.0 * c.T);
        c.L = n.value("L", c.L);
        c.Nx = n.value("Nx", c.Nx);
        c.Nt = n.value("Nt", c.Nt);
        c.Nt_boundary = n.value("Nt_boundary", c.Nt_boundary);
        c.contour_density = n.value("contour_density", c.contour_density);
        c.truncation_M = n.value("truncation_M", c.truncation_M);
        c.lambda_margin = n.value("lambda_margin", c.lambda_margin);
        c.gl_order = n.value("gl_order", c.gl_order);
        if (n.contains("tolerances")) {
            const json& t = n["tolerances"];
            c.quad_tol = t.value("quad_tol", c.quad_tol);
            c.tail_tol = t.value("tail_tol", c.tail_tol);
            c.contour_tail_rtol =
                t.value("contour_tail_rtol", c.contour_tail_rtol);
            c.eps_cut = t.value("eps_cut", c.eps_cut);
            c.decay_tol = t.value("decay_tol", c.decay_tol);
            c.fixed_point_tol = t.value("fixed_point_tol", c.fixed_point_tol);
            c.max_picard = t.value("max_picard", c.max_picard);
            c.smallness_gate = t.value("smallness_gate", c.smallness_gate);
        }
    }
    if (j.contains("scenario")) {
        const json& sc = j["scenario"];
        if (sc.contains("u0")) s.u0 = parse_profile(sc["u0"]);
        if (sc.contains("g")) s.g = parse_profile(sc["g"]);
    }
    if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();

    try {
        s.params.validate();
        s.config.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    return s;
}

Setup parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_json(ss.str());
}

Setup default_setup() {
    Setup s;
    s.params.alpha = 0.0;
    s.params.beta = 1.0;
    s.params.delta = 0.0;
    s.params.kappa = 0.0;
    s.params.p = 2.0;
    s.u0.kind = Profile::Kind::Gaussian;
    s.u0.amplitude = 1.0;
    s.u0.center = 10.0;
    s.u0.width = 1.0;
    s.g.kind = Profile::Kind::Zero;
    return s;
}

}  // namespace hnls::scenario
