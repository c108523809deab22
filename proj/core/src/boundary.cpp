#include "fhp/boundary.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace fhp {

namespace {

// Reads the next whitespace-separated token, skipping '#' comments and
// tracking the current line for error reports.
bool next_token(std::istream& in, std::string& token, int& line) {
    token.clear();
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
            if (c == '\n') ++line;
            continue;
        }
        if (c == '\n') {
            ++line;
            continue;
        }
        if (std::isspace(c)) continue;
        break;
    }
    if (c == EOF) return false;
    token.push_back(static_cast<char>(c));
    while ((c = in.get()) != EOF && !std::isspace(c) && c != '#') {
        token.push_back(static_cast<char>(c));
    }
    if (c == '\n') ++line;
    if (c == '#') in.unget();
    return true;
}

} // namespace

std::vector<CellKind> load_mask(std::istream& in, int width, int height) {
    int line = 1;
    std::string token;
    if (!next_token(in, token, line)) throw ConfigError("empty mask file", line);
    if (token != "P1")
        throw ConfigError("expected PBM magic \"P1\", got \"" + token + "\"", line);

    int dims[2];
    for (int k = 0; k < 2; ++k) {
        if (!next_token(in, token, line)) throw ConfigError("missing mask dimensions", line);
        try {
            dims[k] = std::stoi(token);
        } catch (const std::exception&) {
            throw ConfigError("bad mask dimension \"" + token + "\"", line);
        }
    }
    if (dims[0] != width || dims[1] != height) {
        std::ostringstream msg;
        msg << "mask is " << dims[0] << "x" << dims[1] << " but lattice is " << width << "x"
            << height;
        throw ConfigError(msg.str(), line);
    }

    std::vector<CellKind> mask(static_cast<std::size_t>(width) * height, CellKind::Fluid);
    // PBM rows run top to bottom; lattice row 0 is the bottom, so flip y.
    for (int row = 0; row < height; ++row) {
        for (int x = 0; x < width; ++x) {
            if (!next_token(in, token, line))
                throw ConfigError("mask data ended early", line);
            // P1 pixels may be packed without spaces; accept digit runs.
            for (char ch : token) {
                if (ch != '0' && ch != '1')
                    throw ConfigError(std::string("bad mask pixel '") + ch + "'", line);
            }
            for (std::size_t k = 0; k < token.size(); ++k) {
                if (x + static_cast<int>(k) >= width) break;
                const int y = height - 1 - row;
                mask[static_cast<std::size_t>(y) * width + x + k] =
                    token[k] == '1' ? CellKind::Wall : CellKind::Fluid;
            }
            x += static_cast<int>(token.size()) - 1;
        }
    }
    return mask;
}

std::vector<CellKind> load_mask_file(const std::string& path, int width, int height) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open mask file: " + path);
    return load_mask(in, width, height);
}

void apply_mask(Lattice& lattice, const std::vector<CellKind>& mask) {
    if (mask.size() != lattice.size())
        throw ConfigError("mask size does not match lattice");
    lattice.mask() = mask;
    if (lattice.boundary() == BoundaryKind::Walled) lattice.wall_border();
}

} // namespace fhp
