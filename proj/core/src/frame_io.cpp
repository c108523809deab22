#include "fhp/frame_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fhp/errors.hpp"

namespace fhp {

Frame render_frame(const MacroField& field, std::int64_t step_index) {
    Frame frame;
    frame.index = step_index;
    frame.width = field.blocks_x;
    frame.height = field.blocks_y;
    frame.pixels.resize(static_cast<std::size_t>(frame.width) * frame.height);
    for (int by = 0; by < field.blocks_y; ++by) {
        for (int bx = 0; bx < field.blocks_x; ++bx) {
            // Image rows run top to bottom; block row 0 is at the bottom.
            const std::size_t out =
                static_cast<std::size_t>(field.blocks_y - 1 - by) * frame.width + bx;
            const double gray = 255.0 * field.rho[field.index(bx, by)] / 6.0;
            frame.pixels[out] = static_cast<std::uint8_t>(std::floor(gray + 0.5));
        }
    }
    return frame;
}

void write_pgm(const Frame& frame, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write frame: " + path);
    out << "P5\n" << frame.width << " " << frame.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(frame.pixels.data()),
              static_cast<std::streamsize>(frame.pixels.size()));
    if (!out) throw ConfigError("write failed: " + path);
}

std::string frame_filename(std::int64_t index) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%06lld.pgm", static_cast<long long>(index));
    return name;
}

std::string field_filename(std::int64_t index) {
    char name[32];
    std::snprintf(name, sizeof(name), "field_%06lld.csv", static_cast<long long>(index));
    return name;
}

std::string field_csv(const MacroField& field) {
    std::ostringstream out;
    out.precision(9);
    out << "bx,by,rho,ux,uy,pxx,pxy,pyy\n";
    for (int by = 0; by < field.blocks_y; ++by) {
        for (int bx = 0; bx < field.blocks_x; ++bx) {
            const std::size_t b = field.index(bx, by);
            out << bx << "," << by << "," << field.rho[b] << "," << field.ux[b] << ","
                << field.uy[b] << "," << field.pxx[b] << "," << field.pxy[b] << ","
                << field.pyy[b] << "\n";
        }
    }
    return out.str();
}

void write_field_csv(const MacroField& field, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write field: " + path);
    out << field_csv(field);
    if (!out) throw ConfigError("write failed: " + path);
}

} // namespace fhp
