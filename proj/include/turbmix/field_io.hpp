#pragma once

#include <iosfwd>
#include <string>

#include "turbmix/field_grid.hpp"

namespace turbmix {

/// Self-describing binary snapshot, little endian throughout:
///   bytes  0..4   magic "TSPF1"
///   u32            dimension d
///   d * u64        samples per axis
///   d * f64        spacing per axis [m]
///   u32            component count
///   f64[]          samples, one component after another, each row-major
///                  over the grid (last axis fastest)
void write_field_snapshot(std::ostream& os, const VectorField& field);
void write_field_snapshot(const std::string& path, const VectorField& field);

VectorField read_field_snapshot(std::istream& is);
VectorField read_field_snapshot(const std::string& path);

/// Delimited text export (coordinates then components); for small grids.
void write_field_text(std::ostream& os, const VectorField& field);

}  // namespace turbmix
