#include "hnls/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hnls/spectral.hpp"

namespace hnls::io {

namespace {

std::ofstream open_out(const std::string& path, bool binary = false) {
    std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
    if (!f) throw Error("cannot open for writing: " + path);
    f << std::setprecision(17);
    return f;
}

}  // namespace

void write_grid_csv(const std::string& path, const GridFunction& g) {
    std::ofstream f = open_out(path);
    f << "coordinate,re,im\n";
    for (std::size_t i = 0; i < g.n(); ++i)
        f << g.coord(i) << ',' << g.values[i].real() << ','
          << g.values[i].imag() << '\n';
}

GridFunction load_grid_csv(const std::string& path, GridKind kind) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open for reading: " + path);
    std::string line;
    std::getline(f, line);  // header
    std::vector<double> xs;
    std::vector<cplx> vs;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        double x, re, im;
        char c;
        if (!(ss >> x >> c >> re >> c >> im))
            throw Error("malformed CSV row in " + path + ": " + line);
        xs.push_back(x);
        vs.push_back(cplx(re, im));
    }
    if (xs.size() < 2) throw Error("grid CSV needs at least 2 rows: " + path);
    const double h = (xs.back() - xs.front()) / double(xs.size() - 1);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double expect = xs.front() + h * double(i);
        if (std::abs(xs[i] - expect) > 1e-9 * (1.0 + std::abs(expect)))
            throw Error("non-uniform grid spacing in " + path);
    }
    GridFunction g(xs.front(), xs.back(), xs.size(), kind);
    g.values = std::move(vs);
    return g;
}

void write_field_csv(const std::string& path, const SpaceTimeField& u) {
    std::ofstream f = open_out(path);
    f << "x,t,re,im\n";
    for (std::size_t n = 0; n < u.nt; ++n)
        for (std::size_t i = 0; i < u.nx; ++i)
            f << u.x(i) << ',' << u.t(n) << ',' << u.at(i, n).real() << ','
              << u.at(i, n).imag() << '\n';
}

void write_field_bin(const std::string& path, const SpaceTimeField& u) {
    std::ofstream f = open_out(path, true);
    const char magic[8] = {'H', 'N', 'L', 'S', 'F', 'L', 'D', '1'};
    f.write(magic, 8);
    const std::uint32_t version = 1;
    f.write(reinterpret_cast<const char*>(&version), 4);
    const std::uint64_t nx = u.nx, nt = u.nt;
    f.write(reinterpret_cast<const char*>(&nx), 8);
    f.write(reinterpret_cast<const char*>(&nt), 8);
    for (double v : {u.xa, u.xb, u.ta, u.tb})
        f.write(reinterpret_cast<const char*>(&v), 8);
    for (const cplx& z : u.values) {
        const double re = z.real(), im = z.imag();
        f.write(reinterpret_cast<const char*>(&re), 8);
        f.write(reinterpret_cast<const char*>(&im), 8);
    }
}

SpaceTimeField read_field_bin(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for reading: " + path);
    char magic[8];
    f.read(magic, 8);
    if (std::memcmp(magic, "HNLSFLD1", 8) != 0)
        throw Error("bad magic in " + path);
    std::uint32_t version = 0;
    f.read(reinterpret_cast<char*>(&version), 4);
    if (version != 1) throw Error("unsupported field version in " + path);
    std::uint64_t nx = 0, nt = 0;
    f.read(reinterpret_cast<char*>(&nx), 8);
    f.read(reinterpret_cast<char*>(&nt), 8);
    double xa, xb, ta, tb;
    for (double* v : {&xa, &xb, &ta, &tb}) f.read(reinterpret_cast<char*>(v), 8);
    SpaceTimeField u(xa, xb, nx, ta, tb, nt);
    for (cplx& z : u.values) {
        double re, im;
        f.read(reinterpret_cast<char*>(&re), 8);
        f.read(reinterpret_cast<char*>(&im), 8);
        z = cplx(re, im);
    }
    if (!f) throw Error("truncated field file: " + path);
    return u;
}

void write_contour_csv(const std::string& path,
                       const contour::ContourSpec& ct) {
    std::ofstream f = open_out(path);
    f << "m,re_k,im_k,re_omega,im_omega\n";
    for (const contour::ContourNode& n : ct.nodes) {
        const cplx w = spectral::omega(n.k, ct.params);
        f << n.m << ',' << n.k.real() << ',' << n.k.imag() << ',' << w.real()
          << ',' << w.imag() << '\n';
    }
}

}  // namespace hnls::io
