// FHP lattice-gas fluid simulator command line.
//
// Subcommands:
//   run             execute a scenario from a config file
//   collision-table dump all 128 collision outcomes
//   verify          run the conservation / table / streaming invariant suite
//   measure         run the sound-speed or viscosity probe

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fhp/boundary.hpp"
#include "fhp/config.hpp"
#include "fhp/dynamics.hpp"
#include "fhp/frame_io.hpp"
#include "fhp/observables.hpp"
#include "fhp/rng.hpp"
#include "fhp/scenario.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& mask_override) {
    fhp::SimConfig config = fhp::load_config_file(config_path);
    if (!mask_override.empty()) config.mask_path = mask_override;
    const fhp::RunResult result = fhp::run(config);
    const auto& s = result.summary;
    std::printf("scenario:        %s\n", fhp::to_string(config.scenario).c_str());
    std::printf("lattice:         %dx%d, %s boundaries\n", config.width, config.height,
                fhp::to_string(config.boundary).c_str());
    std::printf("steps:           %lld\n", static_cast<long long>(s.steps));
    std::printf("mass start/end:  %lld / %lld%s\n", static_cast<long long>(s.start_mass),
                static_cast<long long>(s.end_mass),
                s.start_mass == s.end_mass ? " (conserved)" : " (NOT conserved)");
    std::printf("wall time:       %.3f s\n", s.seconds);
    std::printf("site updates/s:  %.3e\n", s.site_updates_per_second);
    if (!result.spread_series.empty())
        std::printf("final density spread: %.4f\n", result.spread_series.back().second);
    return 0;
}

int cmd_collision_table() {
    const fhp::CollisionTable table = fhp::build_collision_table();
    for (int q = 0; q < 2; ++q)
        for (int s = 0; s < 64; ++s)
            std::printf("%d %d %d\n", q, s, static_cast<int>(table.out[q][s]));
    return 0;
}

bool check(const char* name, bool ok, int& failures) {
    std::printf("%-42s %s\n", name, ok ? "ok" : "FAIL");
    if (!ok) ++failures;
    return ok;
}

int cmd_verify() {
    int failures = 0;
    const fhp::CollisionTable table = fhp::build_collision_table();

    bool table_matches = true;
    bool conserves = true;
    for (int s = 0; s < 64; ++s) {
        for (int q = 0; q < 2; ++q) {
            const fhp::SiteState out =
                fhp::collide_reference(static_cast<fhp::SiteState>(s), q != 0);
            table_matches &= table.out[q][s] == out;
            conserves &= fhp::site_mass(out) == fhp::site_mass(static_cast<fhp::SiteState>(s));
            int px = 0, py = 0, qx = 0, qy = 0;
            for (int i = 0; i < fhp::kNumDirections; ++i) {
                if (s & (1 << i)) {
                    px += fhp::kDirX2[i];
                    py += fhp::kDirYs[i];
                }
                if (out & (1 << i)) {
                    qx += fhp::kDirX2[i];
                    qy += fhp::kDirYs[i];
                }
            }
            conserves &= px == qx && py == qy;
        }
    }
    check("collision table matches reference formula", table_matches, failures);
    check("all 128 entries conserve mass and momentum", conserves, failures);

    bool involution = true;
    {
        const int w = 12, h = 8;
        for (int y = 0; y < h && involution; ++y)
            for (int x = 0; x < w && involution; ++x)
                for (int i = 0; i < fhp::kNumDirections; ++i) {
                    const fhp::Coord n = fhp::neighbor({x, y}, i, w, h);
                    const fhp::Coord back = fhp::neighbor(n, fhp::opposite(i), w, h);
                    involution &= back == fhp::Coord{x, y};
                }
    }
    check("neighbor map is an involution under reversal", involution, failures);

    {
        fhp::SimConfig config;
        config.width = 100;
        config.height = 100;
        config.steps = 1000;
        config.seed = 7;
        config.scenario = fhp::ScenarioKind::Uniform;
        config.fill = 0.5;
        config.block = 10;
        const fhp::RunResult result = fhp::run(config);
        check("periodic mass conservation over 1000 steps",
              result.summary.start_mass == result.summary.end_mass, failures);
    }

    {
        fhp::SimConfig config;
        config.width = 100;
        config.height = 100;
        config.steps = 1000;
        config.seed = 11;
        config.scenario = fhp::ScenarioKind::Uniform;
        config.fill = 0.5;
        config.boundary = fhp::BoundaryKind::Walled;
        config.block = 10;
        fhp::Lattice lattice = fhp::init_lattice(config);
        // Random interior obstacles.
        const fhp::CounterRng rng(config.seed, fhp::CounterRng::kMask);
        for (int y = 1; y < config.height - 1; ++y)
            for (int x = 1; x < config.width - 1; ++x)
                if (rng.uniform(x, y, 0) < 0.02) {
                    lattice.set_wall(x, y);
                    lattice.cell(x, y) = 0;
                }
        const std::int64_t before = lattice.total_mass();
        fhp::Stepper stepper(table, fhp::ChiralityStream(config.seed), 1);
        for (int t = 0; t < 1000; ++t) stepper.advance(lattice, t);
        check("bounce-back mass conservation over 1000 steps",
              before == lattice.total_mass(), failures);
    }

    std::printf("%s\n", failures == 0 ? "all invariants hold" : "invariant failures detected");
    return failures == 0 ? 0 : 1;
}

int cmd_measure(const std::string& probe, const std::string& config_path) {
    const fhp::SimConfig config = fhp::load_config_file(config_path);
    fhp::ProbeResult result;
    if (probe == "viscosity") {
        result = fhp::probe_viscosity(config);
    } else if (probe == "sound") {
        result = fhp::probe_sound_speed(config);
    } else {
        std::fprintf(stderr, "unknown probe `%s` (expected viscosity or sound)\n",
                     probe.c_str());
        return 2;
    }
    std::cout << fhp::format_probe_report(result);
    std::cout << "t,value\n";
    for (const auto& [t, value] : result.series) std::printf("%g,%.9g\n", t, value);
    return result.conclusive ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"FHP lattice-gas fluid simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string mask_override;
    auto* run_cmd = app.add_subcommand("run", "Execute a scenario from a config file");
    run_cmd->add_option("--config", config_path, "Path to the run configuration")->required();
    run_cmd->add_option("--mask", mask_override, "PBM P1 obstacle mask (overrides config)");

    app.add_subcommand("collision-table", "Print all 128 collision outcomes as `q in out`");
    app.add_subcommand("verify", "Run the invariant suite; nonzero exit on any failure");

    std::string probe;
    std::string measure_config;
    auto* measure_cmd = app.add_subcommand("measure", "Run a transport-coefficient probe");
    measure_cmd->add_option("probe", probe, "viscosity | sound")->required();
    measure_cmd->add_option("--config", measure_config, "Path to the probe configuration")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(config_path, mask_override);
        if (app.get_subcommand("collision-table")->parsed()) return cmd_collision_table();
        if (app.get_subcommand("verify")->parsed()) return cmd_verify();
        if (measure_cmd->parsed()) return cmd_measure(probe, measure_config);
    } catch (const fhp::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
