#ifndef HNLS_IO_HPP
#define HNLS_IO_HPP

#include <string>

#include "hnls/contour.hpp"
#include "hnls/types.hpp"

namespace hnls::io {

// Grid CSV: header "coordinate,re,im"; loader validates uniform spacing
// to 1e-9 relative.
void write_grid_csv(const std::string& path, const GridFunction& g);
GridFunction load_grid_csv(const std::string& path, GridKind kind);

// Field CSV: header "x,t,re,im", t-major rows.
void write_field_csv(const std::string& path, const SpaceTimeField& f);

// Compact binary layout, little-endian:
//   magic "HNLSFLD1" (8 bytes), u32 version, u64 nx, u64 nt,
//   f64 xa, xb, ta, tb, then nx*nt*(re,im) doubles, x fastest.
void write_field_bin(const std::string& path, const SpaceTimeField& f);
SpaceTimeField read_field_bin(const std::string& path);

// Contour CSV: rows (m, re k, im k, re w, im w) per node.
void write_contour_csv(const std::string& path,
                       const contour::ContourSpec& ct);

}  // namespace hnls::io

#endif
