#pragma once

#include <array>
#include <cstdint>

#include "fhp/lattice.hpp"
#include "fhp/rng.hpp"

namespace fhp {

// Slow reference collision rule, evaluated bit by bit from the two- and
// three-body indicators. Used to build the lookup table and as the oracle
// the table is verified against; never called on the hot path.
SiteState collide_reference(SiteState state, bool q);

// Precomputed collision outcomes for all 64 states, one table per
// chirality. The two tables differ only on the six head-on pair states.
struct CollisionTable {
    std::array<SiteState, 64> out[2];
    // True where the outcome depends on the chirality coin.
    std::array<bool, 64> needs_coin;

    SiteState apply(SiteState s, bool q) const { return out[q ? 1 : 0][s & kStateMask]; }
};

CollisionTable build_collision_table();

// Per-site, per-step chirality coin q(r,t). Counter-based: the draw is a
// pure function of (seed, t, x, y), so results do not depend on worker
// count or traversal order.
class ChiralityStream {
public:
    explicit ChiralityStream(std::uint64_t seed)
        : rng_(seed, CounterRng::kChirality) {}

    bool draw(std::int64_t t, int x, int y) const {
        return rng_.coin(static_cast<std::uint64_t>(t),
                         static_cast<std::uint64_t>(x),
                         static_cast<std::uint64_t>(y));
    }

private:
    CounterRng rng_;
};

// Full bounce-back: every particle reverses direction. No-slip wall rule,
// applied at WALL sites instead of the collision table.
inline SiteState bounce_back(SiteState s) {
    return static_cast<SiteState>(((s << 3) | (s >> 3)) & kStateMask);
}

// One time step: collide (or bounce at walls), then stream. Streaming is
// gather-form: bit i of the new site comes from bit i of the post-collision
// state at neighbor(p, opposite(i)). Owns the scratch buffers so repeated
// stepping does not allocate.
class Stepper {
public:
    Stepper(const CollisionTable& table, ChiralityStream chirality, int threads = 1);

    // Advances the lattice in place by one step at time index t.
    void advance(Lattice& lattice, std::int64_t t);

    int threads() const { return threads_; }

private:
    void collide_rows(const Lattice& lattice, std::int64_t t, int y0, int y1);
    void stream_rows(Lattice& lattice, int y0, int y1);

    const CollisionTable& table_;
    ChiralityStream chirality_;
    int threads_;
    std::vector<SiteState> post_;
    std::vector<SiteState> next_;
};

} // namespace fhp
