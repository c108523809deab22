#pragma once

#include <deque>
#include <span>
#include <vector>

#include "fhp/lattice.hpp"

namespace fhp {

// Block-averaged macroscopic fields: density, velocity, and the momentum
// flux tensor, from occupation probabilities averaged over block sites and
// a time window.
struct MacroField {
    int block = 1;       // sites per block edge
    int window = 1;      // time steps averaged
    int blocks_x = 0;
    int blocks_y = 0;
    std::vector<double> rho;  // mean particles per site, [0, 6]
    std::vector<double> ux, uy;
    std::vector<double> pxx, pxy, pyy;

    std::size_t index(int bx, int by) const {
        return static_cast<std::size_t>(by) * blocks_x + bx;
    }
};

// Space-time averaging of a window of consecutive post-step lattices.
// block must divide both lattice dimensions; every lattice in the history
// must share dimensions.
MacroField coarse_grain(std::span<const Lattice* const> history, int block,
                        const LatticeUnits& units = {});
MacroField coarse_grain(const Lattice& lattice, int block, const LatticeUnits& units = {});

// Lattice constants of the hexagonal six-velocity gas. C4 is pinned by
// b*C4 = 1/(d+2), the combination both viscosity expressions use.
struct TheoryParams {
    int z = 6;
    int d = 2;
    double a = 1.0 / 6.0;
    double b = 2.0 / 6.0;
    double c2 = 3.0;
    double c4 = 0.75;  // (1/(d+2)) / b
    double speed = 1.0;
};

// Density-dependent factor in the quadratic term of the equilibrium
// expansion; vanishes at half filling.
double g_factor(double rho);

// Second-order low-Mach expansion of the Fermi-Dirac equilibrium
// occupation for direction i.
double equilibrium_occupation(double rho, Vec2 u, int i, const TheoryParams& params = {});

// Equation of state. The implied sound speed is speed / sqrt(2).
double theory_pressure(double rho, Vec2 u, const TheoryParams& params = {});

double theory_sound_speed(const TheoryParams& params = {});

// Total kinematic viscosity (collisional plus lattice correction).
// Undefined at rho = 0 and rho = 6 where collisions vanish.
double theory_viscosity(double rho, const TheoryParams& params = {}, double dt = 1.0);

// Spatial relative standard deviation of the block densities; the
// relaxation diagnostic.
double relative_density_spread(const MacroField& field);

} // namespace fhp
