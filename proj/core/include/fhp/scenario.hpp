#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fhp/config.hpp"
#include "fhp/dynamics.hpp"
#include "fhp/lattice.hpp"
#include "fhp/observables.hpp"

namespace fhp {

// Zero-density regions used when the config names a scenario but no
// explicit regions.
std::vector<Region> default_regions(ScenarioKind kind, int width, int height);

// Initial condition: every (site, direction) outside the zero regions is an
// independent Bernoulli(fill) draw; the biased direction (channel flow)
// uses fill_bias instead. Deterministic in the seed.
Lattice init_lattice(const SimConfig& config);

// Shear-wave initial condition for the viscosity probe:
// u_x(y) = amplitude * sin(2*pi*y / height) imprinted via the linear term
// of the equilibrium occupations.
Lattice init_shear_wave(int width, int height, double fill, double amplitude,
                        std::uint64_t seed);

// Over-dense disk at the lattice center for the sound-speed probe.
Lattice init_pulse(int width, int height, double fill, double delta, double radius,
                   std::uint64_t seed);

struct RunSummary {
    std::int64_t start_mass = 0;
    std::int64_t end_mass = 0;
    std::int64_t steps = 0;
    double seconds = 0.0;
    double site_updates_per_second = 0.0;
};

struct RunResult {
    Lattice lattice;
    RunSummary summary;
    // (step, relative block-density spread), sampled every sample_every steps.
    std::vector<std::pair<std::int64_t, double>> spread_series;
};

// Executes the configured scenario. Frames and field CSVs are written to
// config.output_dir every frame_every steps when frame_every > 0. The
// optional per-step hook sees the lattice after each step.
RunResult run(const SimConfig& config,
              const std::function<void(std::int64_t, const Lattice&)>& on_step = {});

struct ProbeResult {
    std::string name;
    double measured = 0.0;
    double theory = 0.0;
    std::string units;
    bool conclusive = true;
    std::string message;
    std::vector<std::pair<double, double>> series;

    double relative_error() const {
        return theory != 0.0 ? std::abs(measured - theory) / std::abs(theory) : 0.0;
    }
};

std::string format_probe_report(const ProbeResult& result);

// Density-spread relaxation of the hole scenarios: series of spatial
// std-dev vs time; measured value is the step where the spread first falls
// below 10% of its initial value.
ProbeResult probe_relaxation(const SimConfig& config);

// Sound-speed measurement: tracks the radius of the outgoing density ring
// of a central pulse and fits radius vs time. Theory: v / sqrt(2).
ProbeResult probe_sound_speed(const SimConfig& config);

// Viscosity measurement: exponential decay of the fundamental shear mode,
// averaged over config.ensembles seeds. Theory from the transport formula
// at rho = 6 * fill.
ProbeResult probe_viscosity(const SimConfig& config);

} // namespace fhp
