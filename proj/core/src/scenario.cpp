#include "fhp/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "fhp/boundary.hpp"
#include "fhp/frame_io.hpp"
#include "fhp/rng.hpp"

namespace fhp {

namespace {

constexpr int kSpreadSampleEvery = 10;

std::uint64_t ensemble_seed(std::uint64_t base, int ensemble) {
    return base + static_cast<std::uint64_t>(ensemble);
}

MacroField grain_history(const std::deque<Lattice>& history, int block) {
    std::vector<const Lattice*> ptrs;
    ptrs.reserve(history.size());
    for (const Lattice& l : history) ptrs.push_back(&l);
    return coarse_grain(std::span<const Lattice* const>(ptrs.data(), ptrs.size()), block);
}

// Least-squares line fit; returns {slope, intercept, r2}.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

LineFit fit_line(const std::vector<std::pair<double, double>>& points) {
    LineFit fit;
    const std::size_t n = points.size();
    if (n < 2) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (const auto& [x, y] : points) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    const double nd = static_cast<double>(n);
    const double vx = sxx - sx * sx / nd;
    const double cxy = sxy - sx * sy / nd;
    const double vy = syy - sy * sy / nd;
    if (vx <= 0.0) return fit;
    fit.slope = cxy / vx;
    fit.intercept = (sy - fit.slope * sx) / nd;
    fit.r2 = vy > 0.0 ? (cxy * cxy) / (vx * vy) : 1.0;
    return fit;
}

} // namespace

std::vector<Region> default_regions(ScenarioKind kind, int width, int height) {
    std::vector<Region> regions;
    const double cx = width / 2.0;
    const double cy = height / 2.0;
    const double extent = std::min(width, height);
    if (kind == ScenarioKind::Hole) {
        regions.push_back({Region::Shape::Disk, cx, cy, extent / 5.0, 0.0});
    } else if (kind == ScenarioKind::MultiHole) {
        const double r = extent / 8.0;
        for (double fx : {0.25, 0.75})
            for (double fy : {0.25, 0.75})
                regions.push_back({Region::Shape::Disk, fx * width, fy * height, r, 0.0});
    }
    return regions;
}

Lattice init_lattice(const SimConfig& config) {
    Lattice lattice(config.width, config.height, config.boundary);
    if (!config.mask_path.empty())
        apply_mask(lattice,
                   load_mask_file(config.mask_path, config.width, config.height));

    std::vector<Region> regions = config.regions;
    if (regions.empty())
        regions = default_regions(config.scenario, config.width, config.height);

    const bool biased = config.scenario == ScenarioKind::ChannelFlow;
    const double bias = config.effective_bias();
    const CounterRng rng(config.seed, CounterRng::kInitFill);
    for (int y = 0; y < config.height; ++y) {
        for (int x = 0; x < config.width; ++x) {
            if (lattice.is_wall(x, y)) continue;
            bool zero = false;
            for (const Region& region : regions) {
                if (region.contains(x, y)) {
                    zero = true;
                    break;
                }
            }
            if (zero) continue;
            SiteState s = 0;
            for (int i = 0; i < kNumDirections; ++i) {
                const double p = (biased && i == config.bias_direction) ? bias : config.fill;
                if (rng.uniform(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y),
                                static_cast<std::uint64_t>(i)) < p)
                    s |= static_cast<SiteState>(1u << i);
            }
            lattice.cell(x, y) = s;
        }
    }
    return lattice;
}

Lattice init_shear_wave(int width, int height, double fill, double amplitude,
                        std::uint64_t seed) {
    Lattice lattice(width, height, BoundaryKind::Periodic);
    const CounterRng rng(seed, CounterRng::kInitFill);
    for (int y = 0; y < height; ++y) {
        const double ux = amplitude * std::sin(2.0 * std::numbers::pi * y / height);
        for (int x = 0; x < width; ++x) {
            SiteState s = 0;
            for (int i = 0; i < kNumDirections; ++i) {
                // Linear term of the equilibrium expansion: N_i = f (1 + 2 u.c_i).
                const double p = std::clamp(fill * (1.0 + 2.0 * ux * kDirX[i]), 0.0, 1.0);
                if (rng.uniform(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y),
                                static_cast<std::uint64_t>(i)) < p)
                    s |= static_cast<SiteState>(1u << i);
            }
            lattice.cell(x, y) = s;
        }
    }
    return lattice;
}

Lattice init_pulse(int width, int height, double fill, double delta, double radius,
                   std::uint64_t seed) {
    Lattice lattice(width, height, BoundaryKind::Periodic);
    const double cx = width / 2.0;
    const double cy = height / 2.0;
    const CounterRng rng(seed, CounterRng::kInitFill);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double dx = x - cx;
            const double dy = y - cy;
            const double p =
                (dx * dx + dy * dy <= radius * radius) ? std::min(fill + delta, 1.0) : fill;
            SiteState s = 0;
            for (int i = 0; i < kNumDirections; ++i) {
                if (rng.uniform(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y),
                                static_cast<std::uint64_t>(i)) < p)
                    s |= static_cast<SiteState>(1u << i);
            }
            lattice.cell(x, y) = s;
        }
    }
    return lattice;
}

RunResult run(const SimConfig& config,
              const std::function<void(std::int64_t, const Lattice&)>& on_step) {
    const CollisionTable table = build_collision_table();
    Stepper stepper(table, ChiralityStream(config.seed), config.threads);

    RunResult result{init_lattice(config), {}, {}};
    Lattice& lattice = result.lattice;
    result.summary.start_mass = lattice.total_mass();
    result.summary.steps = config.steps;

    const bool want_fields =
        config.width % config.block == 0 && config.height % config.block == 0;
    std::deque<Lattice> history;
    if (want_fields) {
        history.push_back(lattice);
        result.spread_series.emplace_back(
            0, relative_density_spread(grain_history(history, config.block)));
    }

    if (config.frame_every > 0)
        std::filesystem::create_directories(config.output_dir);

    const auto start = std::chrono::steady_clock::now();
    double compute_seconds = 0.0;
    for (std::int64_t t = 0; t < config.steps; ++t) {
        stepper.advance(lattice, t);
        const std::int64_t done = t + 1;

        if (want_fields) {
            history.push_back(lattice);
            while (static_cast<int>(history.size()) > config.window) history.pop_front();

            const bool sample = done % kSpreadSampleEvery == 0 || done == config.steps;
            const bool frame = config.frame_every > 0 && done % config.frame_every == 0;
            if (sample || frame) {
                const MacroField field = grain_history(history, config.block);
                if (sample)
                    result.spread_series.emplace_back(done, relative_density_spread(field));
                if (frame) {
                    const auto dir = std::filesystem::path(config.output_dir);
                    write_pgm(render_frame(field, done), (dir / frame_filename(done)).string());
                    write_field_csv(field, (dir / field_filename(done)).string());
                }
            }
        }
        if (on_step) on_step(done, lattice);
    }
    compute_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();

    result.summary.end_mass = lattice.total_mass();
    result.summary.seconds = compute_seconds;
    result.summary.site_updates_per_second =
        compute_seconds > 0.0 ? static_cast<double>(config.steps) * lattice.size() /
                                    compute_seconds
                              : 0.0;
    return result;
}

std::string format_probe_report(const ProbeResult& result) {
    std::ostringstream out;
    out.precision(6);
    out << "probe:     " << result.name << "\n";
    out << "measured:  " << result.measured << " " << result.units << "\n";
    out << "theory:    " << result.theory << " " << result.units << "\n";
    if (result.theory != 0.0)
        out << "rel.error: " << result.relative_error() << "\n";
    out << "status:    " << (result.conclusive ? "conclusive" : "inconclusive") << "\n";
    if (!result.message.empty()) out << "note:      " << result.message << "\n";
    return out.str();
}

ProbeResult probe_relaxation(const SimConfig& config) {
    ProbeResult result;
    result.name = "relaxation";
    result.units = "steps";

    const RunResult run_result = run(config);
    double initial = -1.0;
    double threshold_step = -1.0;
    for (const auto& [step, spread] : run_result.spread_series) {
        result.series.emplace_back(static_cast<double>(step), spread);
        if (initial < 0.0 && step == 0) initial = spread;
        if (initial > 0.0 && threshold_step < 0.0 && step > 0 && spread < 0.1 * initial)
            threshold_step = static_cast<double>(step);
    }
    if (threshold_step < 0.0) {
        result.conclusive = false;
        result.message = "density spread never fell below 10% of its initial value";
        result.measured = static_cast<double>(config.steps);
    } else {
        result.measured = threshold_step;
        result.message = "step at which the density spread fell below 10% of initial";
    }
    return result;
}

ProbeResult probe_sound_speed(const SimConfig& config) {
    ProbeResult result;
    result.name = "sound-speed";
    result.units = "lattice units / step";
    result.theory = theory_sound_speed();

    if (config.pulse_delta <= 0.0) {
        result.conclusive = false;
        result.message = "pulse_delta is zero; no signal to track";
        return result;
    }

    const int w = config.width;
    const int h = config.height;
    const Vec2 center = site_position(w / 2, h / 2);
    const int nbins =
        static_cast<int>(std::min(w / 2.0, h * kHalfSqrt3 / 2.0)) - 1;
    if (nbins < 8) {
        result.conclusive = false;
        result.message = "lattice too small for ring tracking";
        return result;
    }

    // Radial histogram bins, physical units, width 1.
    std::vector<int> bin_of(static_cast<std::size_t>(w) * h, -1);
    std::vector<double> bin_sites(nbins, 0.0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const Vec2 p = site_position(x, y);
            const double r = std::hypot(p.x - center.x, p.y - center.y);
            const int bin = static_cast<int>(r);
            if (bin < nbins) {
                bin_of[static_cast<std::size_t>(y) * w + x] = bin;
                bin_sites[bin] += 1.0;
            }
        }
    }

    const std::int64_t steps = config.steps;
    std::vector<std::vector<double>> profile(static_cast<std::size_t>(steps) + 1,
                                             std::vector<double>(nbins, 0.0));
    const CollisionTable table = build_collision_table();
    double background = 0.0;
    for (int e = 0; e < config.ensembles; ++e) {
        const std::uint64_t seed = ensemble_seed(config.seed, e);
        Lattice lattice = init_pulse(w, h, config.fill, config.pulse_delta,
                                     config.pulse_radius, seed);
        background += static_cast<double>(lattice.total_mass()) / lattice.size();
        Stepper stepper(table, ChiralityStream(seed), config.threads);
        for (std::int64_t t = 0; t <= steps; ++t) {
            auto& row = profile[static_cast<std::size_t>(t)];
            const auto& cells = lattice.cells();
            for (std::size_t idx = 0; idx < cells.size(); ++idx) {
                const int bin = bin_of[idx];
                if (bin >= 0) row[bin] += site_mass(cells[idx]);
            }
            if (t < steps) stepper.advance(lattice, t);
        }
    }
    background /= config.ensembles;

    // Ring radius vs time: smoothed peak of the density excess.
    std::vector<std::pair<double, double>> track;
    const double detach = config.pulse_radius + 2.0;
    for (std::int64_t t = 0; t <= steps; ++t) {
        const auto& row = profile[static_cast<std::size_t>(t)];
        std::vector<double> excess(nbins, 0.0);
        for (int bin = 0; bin < nbins; ++bin)
            excess[bin] = row[bin] / (bin_sites[bin] * config.ensembles) - background;
        double best = -1e300;
        int best_bin = -1;
        for (int bin = 1; bin < nbins - 1; ++bin) {
            const double smoothed = (excess[bin - 1] + excess[bin] + excess[bin + 1]) / 3.0;
            if (smoothed > best) {
                best = smoothed;
                best_bin = bin;
            }
        }
        const double radius = best_bin + 0.5;
        result.series.emplace_back(static_cast<double>(t), radius);
        // Fit only while the ring is detached from the source and clear of
        // the boundary.
        if (radius > detach && best_bin < nbins - 3)
            track.emplace_back(static_cast<double>(t), radius);
    }

    if (track.size() < 10) {
        result.conclusive = false;
        result.message = "ring not detectable";
        return result;
    }
    const LineFit fit = fit_line(track);
    result.measured = fit.slope;
    std::ostringstream note;
    note.precision(4);
    note << "radius fit over " << track.size() << " samples, R^2 = " << fit.r2;
    result.message = note.str();
    result.conclusive = fit.r2 > 0.9 && fit.slope > 0.0;
    return result;
}

ProbeResult probe_viscosity(const SimConfig& config) {
    ProbeResult result;
    result.name = "viscosity";
    result.units = "lattice units^2 / step";

    const double rho = 6.0 * config.fill;
    try {
        result.theory = theory_viscosity(rho);
    } catch (const std::domain_error&) {
        result.conclusive = false;
        result.message = "viscosity undefined at this density";
        return result;
    }
    if (config.amplitude <= 0.0) {
        result.conclusive = false;
        result.message = "amplitude is zero; no shear mode to observe";
        return result;
    }

    const int w = config.width;
    const int h = config.height;
    const std::int64_t steps = config.steps;
    // Wavenumber of the fundamental mode in row-index units, matching how
    // the wave is imprinted (one period across the H rows).
    const double k = 2.0 * std::numbers::pi / h;

    std::vector<double> amplitude(static_cast<std::size_t>(steps) + 1, 0.0);
    std::vector<double> row_sin(h);
    for (int y = 0; y < h; ++y)
        row_sin[y] = std::sin(2.0 * std::numbers::pi * y / h);

    const CollisionTable table = build_collision_table();
    for (int e = 0; e < config.ensembles; ++e) {
        const std::uint64_t seed = ensemble_seed(config.seed, e);
        Lattice lattice = init_shear_wave(w, h, config.fill, config.amplitude, seed);
        Stepper stepper(table, ChiralityStream(seed), config.threads);
        for (std::int64_t t = 0; t <= steps; ++t) {
            // Fundamental sine mode of the row-averaged x velocity.
            double mode = 0.0;
            for (int y = 0; y < h; ++y) {
                double px = 0.0;
                int mass = 0;
                for (int x = 0; x < w; ++x) {
                    const SiteState s = lattice.cell(x, y);
                    if (!s) continue;
                    mass += site_mass(s);
                    for (int i = 0; i < kNumDirections; ++i)
                        if (s & (1u << i)) px += kDirX[i];
                }
                if (mass > 0) mode += (px / mass) * row_sin[y];
            }
            amplitude[static_cast<std::size_t>(t)] += 2.0 * mode / h;
            if (t < steps) stepper.advance(lattice, t);
        }
    }
    for (double& a : amplitude) a /= config.ensembles;

    // Fit ln a(t) until the signal has decayed to 15% of its start.
    std::vector<std::pair<double, double>> points;
    const double floor_level = 0.15 * amplitude[0];
    for (std::int64_t t = 0; t <= steps; ++t) {
        const double a = amplitude[static_cast<std::size_t>(t)];
        result.series.emplace_back(static_cast<double>(t), a);
        if (a <= floor_level) break;
        points.emplace_back(static_cast<double>(t), std::log(a));
    }
    if (points.size() < 10 || amplitude[0] <= 0.0) {
        result.conclusive = false;
        result.message = "shear signal below noise";
        return result;
    }
    const LineFit fit = fit_line(points);
    if (fit.slope >= 0.0) {
        result.conclusive = false;
        result.message = "non-decaying fit; signal below noise";
        return result;
    }
    result.measured = -fit.slope / (k * k);
    std::ostringstream note;
    note.precision(4);
    note << "decay fit over " << points.size() << " steps, " << config.ensembles
         << " ensembles, R^2 = " << fit.r2;
    result.message = note.str();
    return result;
}

} // namespace fhp
