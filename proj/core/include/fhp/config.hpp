#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fhp/errors.hpp"
#include "fhp/lattice.hpp"

namespace fhp {

enum class ScenarioKind { Uniform, Hole, MultiHole, ChannelFlow };

// Zero-density region of the initial condition, in site coordinates.
struct Region {
    enum class Shape { Disk, Rect };
    Shape shape = Shape::Disk;
    // Disk: cx, cy, r. Rect: x, y, w, h.
    double p0 = 0, p1 = 0, p2 = 0, p3 = 0;

    bool contains(int x, int y) const;
    bool operator==(const Region&) const = default;
};

// Flat key = value run configuration. Every field has a textual home; a
// serialize/parse round trip reproduces the struct exactly.
struct SimConfig {
    int width = 0;
    int height = 0;
    std::int64_t steps = 0;
    std::uint64_t seed = 0;
    ScenarioKind scenario = ScenarioKind::Uniform;
    double fill = 0.0;
    double fill_bias = -1.0;  // < 0 means "same as fill"
    int bias_direction = 0;
    BoundaryKind boundary = BoundaryKind::Periodic;
    std::string mask_path;
    std::vector<Region> regions;
    int block = 10;
    int window = 50;
    std::int64_t frame_every = 0;  // 0 disables frame output
    std::string output_dir = "out";
    int threads = 1;

    // Probe knobs (measure subcommands).
    double amplitude = 0.1;    // shear-wave velocity amplitude
    int ensembles = 16;
    double pulse_delta = 0.1;  // extra fill probability of the sound pulse
    double pulse_radius = 16.0;

    double effective_bias() const { return fill_bias < 0.0 ? fill : fill_bias; }
    bool operator==(const SimConfig&) const = default;
};

// Parses the flat config format: one key = value per line, '#' comments,
// unknown keys rejected. Throws ConfigError naming the key and line.
SimConfig parse_config(const std::string& text);
SimConfig load_config_file(const std::string& path);

std::string serialize_config(const SimConfig& config);

std::string to_string(ScenarioKind kind);
std::string to_string(BoundaryKind kind);

} // namespace fhp
