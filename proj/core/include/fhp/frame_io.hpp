#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fhp/observables.hpp"

namespace fhp {

// 8-bit grayscale raster of block densities, gray = round(255 * rho / 6).
struct Frame {
    std::int64_t index = 0;
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // row 0 at the top of the image
};

Frame render_frame(const MacroField& field, std::int64_t step_index);

// Binary PGM, magic P5, maxval 255. Byte-identical for identical fields.
void write_pgm(const Frame& frame, const std::string& path);

std::string frame_filename(std::int64_t index);
std::string field_filename(std::int64_t index);

// One row per block: bx,by,rho,ux,uy,pxx,pxy,pyy, with a header line.
void write_field_csv(const MacroField& field, const std::string& path);
std::string field_csv(const MacroField& field);

} // namespace fhp
