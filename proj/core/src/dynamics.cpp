#include "fhp/dynamics.hpp"

#include <algorithm>
#include <cassert>
#include <thread>
#include <vector>

namespace fhp {

namespace {

inline int bit(SiteState s, int i) { return (s >> (i % kNumDirections)) & 1; }

// Head-on pair indicator D_i: exactly directions i and i+3 occupied.
inline int pair_indicator(SiteState s, int i) {
    return bit(s, i) * bit(s, i + 3) * (1 - bit(s, i + 1)) * (1 - bit(s, i + 2)) *
           (1 - bit(s, i + 4)) * (1 - bit(s, i + 5));
}

// Symmetric three-body indicator T_i: directions i, i+2, i+4 occupied,
// the others empty.
inline int triple_indicator(SiteState s, int i) {
    return bit(s, i) * bit(s, i + 2) * bit(s, i + 4) * (1 - bit(s, i + 1)) *
           (1 - bit(s, i + 3)) * (1 - bit(s, i + 5));
}

} // namespace

SiteState collide_reference(SiteState state, bool q) {
    const SiteState s = state & kStateMask;
    int d[kNumDirections];
    int t[kNumDirections];
    for (int i = 0; i < kNumDirections; ++i) {
        d[i] = pair_indicator(s, i);
        t[i] = triple_indicator(s, i);
    }
    const int qi = q ? 1 : 0;
    SiteState result = 0;
    for (int i = 0; i < kNumDirections; ++i) {
        // Pair collisions rotate by +-60 degrees (the coin picks the side);
        // three-body collisions reverse every particle.
        const int omega = -d[i] + qi * d[(i + 5) % 6] + (1 - qi) * d[(i + 1) % 6] -
                          t[i] + t[(i + 3) % 6];
        const int n = bit(s, i) + omega;
        assert(n == 0 || n == 1);
        result |= static_cast<SiteState>(n << i);
    }
    return result;
}

CollisionTable build_collision_table() {
    CollisionTable table;
    for (int s = 0; s < 64; ++s) {
        table.out[0][s] = collide_reference(static_cast<SiteState>(s), false);
        table.out[1][s] = collide_reference(static_cast<SiteState>(s), true);
        table.needs_coin[s] = table.out[0][s] != table.out[1][s];
    }
    return table;
}

Stepper::Stepper(const CollisionTable& table, ChiralityStream chirality, int threads)
    : table_(table), chirality_(chirality), threads_(threads < 1 ? 1 : threads) {}

void Stepper::collide_rows(const Lattice& lattice, std::int64_t t, int y0, int y1) {
    const int w = lattice.width();
    const auto& cells = lattice.cells();
    const auto& mask = lattice.mask();
    for (int y = y0; y < y1; ++y) {
        const std::size_t row = static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            const SiteState s = cells[row + x];
            if (mask[row + x] == CellKind::Wall) {
                post_[row + x] = bounce_back(s);
            } else if (table_.needs_coin[s]) {
                post_[row + x] = table_.out[chirality_.draw(t, x, y) ? 1 : 0][s];
            } else {
                post_[row + x] = table_.out[0][s];
            }
        }
    }
}

void Stepper::stream_rows(Lattice& lattice, int y0, int y1) {
    const int w = lattice.width();
    const int h = lattice.height();
    for (int y = y0; y < y1; ++y) {
        SiteState* dst = next_.data() + static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x) dst[x] = 0;
        const int parity = y & 1;
        for (int i = 0; i < kNumDirections; ++i) {
            // Source of bit i is the reverse-direction neighbor.
            const int j = opposite(i);
            const int dx = kNeighborDx[parity][j];
            int sy = y + kNeighborDy[parity][j];
            if (sy < 0) sy += h;
            if (sy >= h) sy -= h;
            const SiteState* src = post_.data() + static_cast<std::size_t>(sy) * w;
            const SiteState m = static_cast<SiteState>(1u << i);
            // Split at the wrap seam so the inner loops stay contiguous.
            if (dx == 0) {
                for (int x = 0; x < w; ++x) dst[x] |= src[x] & m;
            } else if (dx == 1) {
                for (int x = 0; x < w - 1; ++x) dst[x] |= src[x + 1] & m;
                dst[w - 1] |= src[0] & m;
            } else {
                dst[0] |= src[w - 1] & m;
                for (int x = 1; x < w; ++x) dst[x] |= src[x - 1] & m;
            }
        }
    }
}

void Stepper::advance(Lattice& lattice, std::int64_t t) {
    const std::size_t n = lattice.size();
    if (post_.size() != n) post_.resize(n);
    if (next_.size() != n) next_.resize(n);
    const int h = lattice.height();

    auto parallel_rows = [&](auto&& body) {
        if (threads_ == 1 || h < 2 * threads_) {
            body(0, h);
            return;
        }
        std::vector<std::thread> workers;
        workers.reserve(threads_);
        const int chunk = (h + threads_ - 1) / threads_;
        for (int k = 0; k < threads_; ++k) {
            const int y0 = k * chunk;
            const int y1 = std::min(h, y0 + chunk);
            if (y0 >= y1) break;
            workers.emplace_back([&, y0, y1] { body(y0, y1); });
        }
        for (auto& worker : workers) worker.join();
    };

    parallel_rows([&](int y0, int y1) { collide_rows(lattice, t, y0, y1); });
    parallel_rows([&](int y0, int y1) { stream_rows(lattice, y0, y1); });
    lattice.cells().swap(next_);
}

} // namespace fhp
