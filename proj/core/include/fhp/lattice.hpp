#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fhp {

// Six lattice directions, 0-based. Direction i points along
// (cos 60°i, sin 60°i); 0 = +x, counting counterclockwise.
inline constexpr int kNumDirections = 6;
inline constexpr std::uint8_t kStateMask = 0x3f;

constexpr int opposite(int dir) { return (dir + 3) % kNumDirections; }

inline constexpr double kHalfSqrt3 = 0.8660254037844386;

inline constexpr std::array<double, 6> kDirX = {1.0, 0.5, -0.5, -1.0, -0.5, 0.5};
inline constexpr std::array<double, 6> kDirY = {0.0, kHalfSqrt3, kHalfSqrt3,
                                                0.0, -kHalfSqrt3, -kHalfSqrt3};

// Direction components in integer units: x in halves, y in multiples of
// sqrt(3)/2. Exact arithmetic for conservation checks.
inline constexpr std::array<int, 6> kDirX2 = {2, 1, -1, -2, -1, 1};
inline constexpr std::array<int, 6> kDirYs = {0, 1, 1, 0, -1, -1};

// One site: bit i = occupation number of direction i. The bit encoding is
// the exclusion principle; a direction never holds more than one particle.
using SiteState = std::uint8_t;

inline int site_mass(SiteState s) { return std::popcount(static_cast<unsigned>(s & kStateMask)); }

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Lattice spacing over time step; velocities are v * c_i.
struct LatticeUnits {
    double spacing = 1.0;
    double tick = 1.0;
    double speed() const { return spacing / tick; }
};

inline Vec2 site_momentum(SiteState s, const LatticeUnits& units = {}) {
    const double v = units.speed();
    Vec2 m;
    for (int i = 0; i < kNumDirections; ++i) {
        if (s & (1u << i)) {
            m.x += v * kDirX[i];
            m.y += v * kDirY[i];
        }
    }
    return m;
}

enum class BoundaryKind { Periodic, Walled };

enum class CellKind : std::uint8_t { Fluid = 0, Wall = 1 };

struct Coord {
    int x = 0;
    int y = 0;
    bool operator==(const Coord&) const = default;
};

// Offset-row neighbor tables. Rows with odd y are shifted +1/2 in x.
// [parity][direction] -> (dx, dy).
inline constexpr int kNeighborDx[2][6] = {
    {1, 0, -1, -1, -1, 0},  // even rows
    {1, 1, 0, -1, 0, 1},    // odd rows
};
inline constexpr int kNeighborDy[2][6] = {
    {0, 1, 1, 0, -1, -1},
    {0, 1, 1, 0, -1, -1},
};

// Destination of a particle leaving p along direction dir, with periodic
// wrap. Walled lattices keep the outer ring solid, so the wrap seam never
// transports mass there.
inline Coord neighbor(Coord p, int dir, int width, int height) {
    const int parity = p.y & 1;
    int nx = p.x + kNeighborDx[parity][dir];
    int ny = p.y + kNeighborDy[parity][dir];
    if (nx < 0) nx += width;
    if (nx >= width) nx -= width;
    if (ny < 0) ny += height;
    if (ny >= height) ny -= height;
    return {nx, ny};
}

// Physical position of a site in lattice units.
inline Vec2 site_position(int x, int y) {
    return {x + 0.5 * (y & 1), y * kHalfSqrt3};
}

class Lattice {
public:
    Lattice(int width, int height, BoundaryKind boundary = BoundaryKind::Periodic)
        : width_(width), height_(height), boundary_(boundary),
          cells_(static_cast<std::size_t>(width) * height, 0),
          mask_(static_cast<std::size_t>(width) * height, CellKind::Fluid) {
        if (width <= 0 || height <= 0)
            throw std::invalid_argument("lattice dimensions must be positive");
        if (boundary == BoundaryKind::Periodic && (height % 2) != 0)
            throw std::invalid_argument(
                "periodic boundaries require an even height (row parity must close)");
        if (boundary == BoundaryKind::Walled) wall_border();
    }

    int width() const { return width_; }
    int height() const { return height_; }
    BoundaryKind boundary() const { return boundary_; }
    std::size_t size() const { return cells_.size(); }

    std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

    SiteState cell(int x, int y) const { return cells_[index(x, y)]; }
    SiteState& cell(int x, int y) { return cells_[index(x, y)]; }

    CellKind kind(int x, int y) const { return mask_[index(x, y)]; }
    bool is_wall(int x, int y) const { return mask_[index(x, y)] == CellKind::Wall; }
    void set_wall(int x, int y, bool wall = true) {
        mask_[index(x, y)] = wall ? CellKind::Wall : CellKind::Fluid;
    }

    const std::vector<SiteState>& cells() const { return cells_; }
    std::vector<SiteState>& cells() { return cells_; }
    const std::vector<CellKind>& mask() const { return mask_; }
    std::vector<CellKind>& mask() { return mask_; }

    std::int64_t total_mass() const {
        std::int64_t total = 0;
        for (SiteState s : cells_) total += site_mass(s);
        return total;
    }

    void wall_border() {
        for (int x = 0; x < width_; ++x) {
            set_wall(x, 0);
            set_wall(x, height_ - 1);
        }
        for (int y = 0; y < height_; ++y) {
            set_wall(0, y);
            set_wall(width_ - 1, y);
        }
    }

    bool operator==(const Lattice& other) const = default;

private:
    int width_;
    int height_;
    BoundaryKind boundary_;
    std::vector<SiteState> cells_;
    std::vector<CellKind> mask_;
};

} // namespace fhp
