#include "fhp/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace fhp {

bool Region::contains(int x, int y) const {
    if (shape == Shape::Disk) {
        const double dx = x - p0;
        const double dy = y - p1;
        return dx * dx + dy * dy <= p2 * p2;
    }
    return x >= p0 && x < p0 + p2 && y >= p1 && y < p1 + p3;
}

std::string to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::Uniform: return "uniform";
        case ScenarioKind::Hole: return "hole";
        case ScenarioKind::MultiHole: return "multi_hole";
        case ScenarioKind::ChannelFlow: return "channel_flow";
    }
    return "uniform";
}

std::string to_string(BoundaryKind kind) {
    return kind == BoundaryKind::Periodic ? "periodic" : "walled";
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& value, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for `" + key + "`: " + value, line);
    }
}

std::int64_t parse_int(const std::string& value, const std::string& key, int line) {
    std::int64_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError("bad integer value for `" + key + "`: " + value, line);
    return out;
}

std::uint64_t parse_uint(const std::string& value, const std::string& key, int line) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError("bad integer value for `" + key + "`: " + value, line);
    return out;
}

Region parse_region(const std::string& value, int line) {
    std::istringstream in(value);
    std::string shape;
    in >> shape;
    Region region;
    std::vector<double> params;
    double p;
    while (in >> p) params.push_back(p);
    if (shape == "disk" && params.size() == 3) {
        region.shape = Region::Shape::Disk;
        region.p0 = params[0];
        region.p1 = params[1];
        region.p2 = params[2];
        return region;
    }
    if (shape == "rect" && params.size() == 4) {
        region.shape = Region::Shape::Rect;
        region.p0 = params[0];
        region.p1 = params[1];
        region.p2 = params[2];
        region.p3 = params[3];
        return region;
    }
    throw ConfigError("bad region `" + value + "` (expected `disk cx cy r` or `rect x y w h`)",
                      line);
}

void check_range(bool ok, const std::string& key, const std::string& what, int line) {
    if (!ok) throw ConfigError("value for `" + key + "` out of range: " + what, line);
}

std::string format_double(double d) {
    std::ostringstream out;
    out.precision(17);
    out << d;
    return out.str();
}

} // namespace

SimConfig parse_config(const std::string& text) {
    SimConfig config;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string stripped = raw;
        if (const auto hash = stripped.find('#'); hash != std::string::npos)
            stripped.erase(hash);
        stripped = trim(stripped);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected `key = value`, got: " + stripped, line);
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw ConfigError("missing key before `=`", line);
        if (key != "region" && !seen.insert(key).second)
            throw ConfigError("duplicate key `" + key + "`", line);

        if (key == "width") {
            config.width = static_cast<int>(parse_int(value, key, line));
            check_range(config.width > 0, key, value, line);
        } else if (key == "height") {
            config.height = static_cast<int>(parse_int(value, key, line));
            check_range(config.height > 0, key, value, line);
        } else if (key == "steps") {
            config.steps = parse_int(value, key, line);
            check_range(config.steps >= 0, key, value, line);
        } else if (key == "seed") {
            config.seed = parse_uint(value, key, line);
        } else if (key == "scenario") {
            if (value == "uniform") config.scenario = ScenarioKind::Uniform;
            else if (value == "hole") config.scenario = ScenarioKind::Hole;
            else if (value == "multi_hole") config.scenario = ScenarioKind::MultiHole;
            else if (value == "channel_flow") config.scenario = ScenarioKind::ChannelFlow;
            else throw ConfigError("unknown scenario `" + value + "`", line);
        } else if (key == "fill") {
            config.fill = parse_double(value, key, line);
            check_range(config.fill >= 0.0 && config.fill <= 1.0, key, value, line);
        } else if (key == "fill_bias") {
            config.fill_bias = parse_double(value, key, line);
            check_range(config.fill_bias >= 0.0 && config.fill_bias <= 1.0, key, value, line);
        } else if (key == "bias_direction") {
            config.bias_direction = static_cast<int>(parse_int(value, key, line));
            check_range(config.bias_direction >= 0 && config.bias_direction < kNumDirections,
                        key, value, line);
        } else if (key == "boundary") {
            if (value == "periodic") config.boundary = BoundaryKind::Periodic;
            else if (value == "walled") config.boundary = BoundaryKind::Walled;
            else throw ConfigError("unknown boundary `" + value + "`", line);
        } else if (key == "mask") {
            config.mask_path = value;
        } else if (key == "region") {
            config.regions.push_back(parse_region(value, line));
        } else if (key == "block") {
            config.block = static_cast<int>(parse_int(value, key, line));
            check_range(config.block > 0, key, value, line);
        } else if (key == "window") {
            config.window = static_cast<int>(parse_int(value, key, line));
            check_range(config.window > 0, key, value, line);
        } else if (key == "frame_every") {
            config.frame_every = parse_int(value, key, line);
            check_range(config.frame_every >= 0, key, value, line);
        } else if (key == "output_dir") {
            config.output_dir = value;
        } else if (key == "threads") {
            config.threads = static_cast<int>(parse_int(value, key, line));
            check_range(config.threads > 0, key, value, line);
        } else if (key == "amplitude") {
            config.amplitude = parse_double(value, key, line);
            check_range(config.amplitude >= 0.0 && config.amplitude <= 1.0, key, value, line);
        } else if (key == "ensembles") {
            config.ensembles = static_cast<int>(parse_int(value, key, line));
            check_range(config.ensembles > 0, key, value, line);
        } else if (key == "pulse_delta") {
            config.pulse_delta = parse_double(value, key, line);
            check_range(config.pulse_delta >= 0.0 && config.pulse_delta <= 1.0, key, value,
                        line);
        } else if (key == "pulse_radius") {
            config.pulse_radius = parse_double(value, key, line);
            check_range(config.pulse_radius > 0.0, key, value, line);
        } else {
            throw ConfigError("unknown key `" + key + "`", line);
        }
    }

    for (const char* required : {"width", "height", "steps", "seed", "scenario", "fill"}) {
        if (!seen.count(required))
            throw ConfigError(std::string("missing required key `") + required + "`");
    }
    if (config.boundary == BoundaryKind::Periodic && (config.height % 2) != 0)
        throw ConfigError("periodic boundaries require an even height");
    if (config.width % config.block != 0 || config.height % config.block != 0)
        throw ConfigError("block must divide width and height");
    for (const Region& region : config.regions) {
        const bool inside = region.p0 >= 0 && region.p1 >= 0 && region.p0 < config.width &&
                            region.p1 < config.height;
        if (!inside) throw ConfigError("region lies outside the lattice");
    }
    return config;
}

SimConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string serialize_config(const SimConfig& config) {
    std::ostringstream out;
    out << "width = " << config.width << "\n";
    out << "height = " << config.height << "\n";
    out << "steps = " << config.steps << "\n";
    out << "seed = " << config.seed << "\n";
    out << "scenario = " << to_string(config.scenario) << "\n";
    out << "fill = " << format_double(config.fill) << "\n";
    if (config.fill_bias >= 0.0)
        out << "fill_bias = " << format_double(config.fill_bias) << "\n";
    out << "bias_direction = " << config.bias_direction << "\n";
    out << "boundary = " << to_string(config.boundary) << "\n";
    if (!config.mask_path.empty()) out << "mask = " << config.mask_path << "\n";
    for (const Region& region : config.regions) {
        if (region.shape == Region::Shape::Disk) {
            out << "region = disk " << format_double(region.p0) << " "
                << format_double(region.p1) << " " << format_double(region.p2) << "\n";
        } else {
            out << "region = rect " << format_double(region.p0) << " "
                << format_double(region.p1) << " " << format_double(region.p2) << " "
                << format_double(region.p3) << "\n";
        }
    }
    out << "block = " << config.block << "\n";
    out << "window = " << config.window << "\n";
    out << "frame_every = " << config.frame_every << "\n";
    out << "output_dir = " << config.output_dir << "\n";
    out << "threads = " << config.threads << "\n";
    out << "amplitude = " << format_double(config.amplitude) << "\n";
    out << "ensembles = " << config.ensembles << "\n";
    out << "pulse_delta = " << format_double(config.pulse_delta) << "\n";
    out << "pulse_radius = " << format_double(config.pulse_radius) << "\n";
    return out.str();
}

} // namespace fhp
