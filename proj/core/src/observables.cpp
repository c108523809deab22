#include "fhp/observables.hpp"

#include <cmath>
#include <stdexcept>

#include "fhp/errors.hpp"

namespace fhp {

MacroField coarse_grain(std::span<const Lattice* const> history, int block,
                        const LatticeUnits& units) {
    if (history.empty()) throw std::invalid_argument("coarse_grain: empty history");
    const Lattice& first = *history.front();
    const int w = first.width();
    const int h = first.height();
    if (block < 1 || w % block != 0 || h % block != 0)
        throw ConfigError("block size must divide both lattice dimensions");
    const int bw = w / block;
    const int bh = h / block;

    MacroField field;
    field.block = block;
    field.window = static_cast<int>(history.size());
    field.blocks_x = bw;
    field.blocks_y = bh;
    const std::size_t nblocks = static_cast<std::size_t>(bw) * bh;

    // Per-block occupation counts, one slot per direction.
    std::vector<std::int64_t> counts(nblocks * kNumDirections, 0);
    for (const Lattice* lattice : history) {
        if (lattice->width() != w || lattice->height() != h)
            throw std::invalid_argument("coarse_grain: mismatched lattice dimensions");
        for (int y = 0; y < h; ++y) {
            const std::size_t brow = static_cast<std::size_t>(y / block) * bw;
            for (int x = 0; x < w; ++x) {
                const SiteState s = lattice->cell(x, y);
                if (!s) continue;
                std::int64_t* slot = counts.data() + (brow + x / block) * kNumDirections;
                for (int i = 0; i < kNumDirections; ++i) slot[i] += (s >> i) & 1;
            }
        }
    }

    const double samples = static_cast<double>(field.window) * block * block;
    const double v = units.speed();
    field.rho.resize(nblocks);
    field.ux.resize(nblocks);
    field.uy.resize(nblocks);
    field.pxx.resize(nblocks);
    field.pxy.resize(nblocks);
    field.pyy.resize(nblocks);
    for (std::size_t b = 0; b < nblocks; ++b) {
        const std::int64_t* slot = counts.data() + b * kNumDirections;
        double rho = 0.0, gx = 0.0, gy = 0.0, pxx = 0.0, pxy = 0.0, pyy = 0.0;
        for (int i = 0; i < kNumDirections; ++i) {
            const double ni = static_cast<double>(slot[i]) / samples;
            rho += ni;
            gx += v * kDirX[i] * ni;
            gy += v * kDirY[i] * ni;
            pxx += v * v * kDirX[i] * kDirX[i] * ni;
            pxy += v * v * kDirX[i] * kDirY[i] * ni;
            pyy += v * v * kDirY[i] * kDirY[i] * ni;
        }
        field.rho[b] = rho;
        field.ux[b] = rho > 0.0 ? gx / rho : 0.0;
        field.uy[b] = rho > 0.0 ? gy / rho : 0.0;
        field.pxx[b] = pxx;
        field.pxy[b] = pxy;
        field.pyy[b] = pyy;
    }
    return field;
}

MacroField coarse_grain(const Lattice& lattice, int block, const LatticeUnits& units) {
    const Lattice* one[] = {&lattice};
    return coarse_grain(std::span<const Lattice* const>(one, 1), block, units);
}

double g_factor(double rho) { return (2.0 / 3.0) * (3.0 - rho) / (6.0 - rho); }

double equilibrium_occupation(double rho, Vec2 u, int i, const TheoryParams& params) {
    const double v = params.speed;
    const double v2 = v * v;
    const double cu = v * (kDirX[i] * u.x + kDirY[i] * u.y);
    // Q_i contracted with u u: (v_i . u)^2 - (v^2/d) |u|^2.
    const double u2 = u.x * u.x + u.y * u.y;
    const double quu = cu * cu - (v2 / params.d) * u2;
    return params.a * rho + (params.b * rho / v2) * cu +
           (rho * g_factor(rho) / (v2 * v2)) * quu;
}

double theory_pressure(double rho, Vec2 u, const TheoryParams& params) {
    const double v2 = params.speed * params.speed;
    const double u2 = u.x * u.x + u.y * u.y;
    return params.a * params.c2 * v2 * rho -
           (params.c2 / params.d - params.c4) * rho * g_factor(rho) * u2;
}

double theory_sound_speed(const TheoryParams& params) {
    return params.speed * std::sqrt(params.a * params.c2);
}

double theory_viscosity(double rho, const TheoryParams& params, double dt) {
    if (rho <= 0.0 || rho >= 6.0)
        throw std::domain_error("viscosity undefined outside 0 < rho < 6");
    const double s = rho / 6.0;
    const double lambda = 2.0 * s * (1.0 - s) * (1.0 - s) * (1.0 - s);
    const double v2 = params.speed * params.speed;
    return dt * v2 * params.b * params.c4 * (1.0 / lambda - 0.5);
}

double relative_density_spread(const MacroField& field) {
    const std::size_t n = field.rho.size();
    if (n == 0) return 0.0;
    double mean = 0.0;
    for (double r : field.rho) mean += r;
    mean /= static_cast<double>(n);
    if (mean <= 0.0) return 0.0;
    double var = 0.0;
    for (double r : field.rho) var += (r - mean) * (r - mean);
    var /= static_cast<double>(n);
    return std::sqrt(var) / mean;
}

} // namespace fhp
