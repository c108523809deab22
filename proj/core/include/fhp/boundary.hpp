#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fhp/errors.hpp"
#include "fhp/lattice.hpp"

namespace fhp {

// Parses an ASCII PBM ("P1") obstacle mask. Pixel 1 -> WALL, 0 -> FLUID.
// Dimensions must match the target lattice exactly.
std::vector<CellKind> load_mask(std::istream& in, int width, int height);
std::vector<CellKind> load_mask_file(const std::string& path, int width, int height);

// Installs a mask onto a lattice. In walled mode the border ring is forced
// to WALL regardless of the mask content.
void apply_mask(Lattice& lattice, const std::vector<CellKind>& mask);

} // namespace fhp
