#include "physarum/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "physarum/io.hpp"

namespace physarum {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string step_tag(std::uint64_t step) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%07llu", static_cast<unsigned long long>(step));
    return buf;
}

std::vector<Vec2> reference_polyline(const Scenario& sc) {
    std::vector<Vec2> ref = sc.data_vertices;
    if (ref.size() >= 2 && sc.stimulus_polyline.closed) ref.push_back(ref.front());
    return ref;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

nlohmann::json manifest_json(const Scenario& sc, const RunOptions& options,
                             const std::vector<std::string>& artifacts) {
    nlohmann::json j;
    j["name"] = sc.name;
    j["scenario"] = options.scenario_path;
    j["seed"] = sc.seed;
    j["steps"] = sc.run_steps;
    j["warmup_halt"] = sc.warmup_halt;
    j["snapshot_every"] = sc.snapshot_every;
    j["lattice"] = {{"width", sc.width}, {"height", sc.height}};
    j["material_width"] = sc.material_width;
    j["extraction"] = sc.extraction == ExtractionMode::column_mean ? "column_mean" : "skeleton";
    j["protocol"] = sc.protocol == ProtocolMode::removal ? "removal"
                    : sc.protocol == ProtocolMode::weak  ? "weak"
                                                         : "hold";
    j["params"] = {{"sensor_angle", sc.sensory.sensor_angle},
                   {"rotation_angle", sc.sensory.rotation_angle},
                   {"sensor_offset", sc.sensory.sensor_offset},
                   {"deposit", sc.sensory.deposit},
                   {"decay", sc.diffusion.decay},
                   {"kernel_radius", sc.diffusion.kernel_radius},
                   {"division_range", {sc.adaptation.division_min, sc.adaptation.division_max}},
                   {"survival_range", {sc.adaptation.survival_min, sc.adaptation.survival_max}},
                   {"test_period", sc.adaptation.test_period},
                   {"strong_magnitude", sc.strong_magnitude},
                   {"weak_magnitude", sc.weak_magnitude}};
    j["artifacts"] = artifacts;
    return j;
}

}  // namespace

void apply_overrides(Scenario& scenario, const RunOverrides& o) {
    if (o.seed) scenario.seed = *o.seed;
    if (o.steps) scenario.run_steps = *o.steps;
    if (o.snapshot_every) {
        if (*o.snapshot_every == 0) throw ScenarioError("snapshot_every override must be >= 1");
        scenario.snapshot_every = *o.snapshot_every;
    }
    if (o.warmup_halt) {
        // the stimulus schedule was built around the old warm-up window
        const std::uint64_t old = scenario.warmup_halt;
        scenario.warmup_halt = *o.warmup_halt;
        for (Stimulus& s : scenario.stimuli) {
            if (s.active_until == old) s.active_until = *o.warmup_halt;
            if (s.active_from == old) s.active_from = *o.warmup_halt;
        }
    }
    if (o.sensor_angle) scenario.sensory.sensor_angle = *o.sensor_angle;
    if (o.rotation_angle) scenario.sensory.rotation_angle = *o.rotation_angle;
    if (o.sensor_offset) {
        if (*o.sensor_offset < 1.0) throw ScenarioError("sensor_offset override must be >= 1");
        scenario.sensory.sensor_offset = *o.sensor_offset;
    }
    if (o.deposit) scenario.sensory.deposit = *o.deposit;
    if (o.decay) {
        if (*o.decay < 0.0 || *o.decay >= 1.0) throw ScenarioError("decay override must be in [0,1)");
        scenario.diffusion.decay = *o.decay;
    }
    if (o.kernel_radius) {
        if (*o.kernel_radius < 1) throw ScenarioError("kernel_radius override must be >= 1");
        scenario.diffusion.kernel_radius = *o.kernel_radius;
    }
}

std::string metrics_to_csv(const std::vector<SnapshotRecord>& metrics) {
    std::string out = "step,particle_count,deviation_distance,curve_rmse,component_count\n";
    for (const SnapshotRecord& r : metrics) {
        out += std::to_string(r.step);
        out += ',';
        out += std::to_string(r.particle_count);
        out += ',';
        out += format_double(r.deviation_distance);
        out += ',';
        out += format_double(r.curve_rmse);
        out += ',';
        out += std::to_string(r.component_count);
        out += '\n';
    }
    return out;
}

RunResult run_scenario(const Scenario& input, const RunOptions& options, const SnapshotHook& hook) {
    RunResult result;
    result.scenario = input;
    apply_overrides(result.scenario, options.overrides);
    const Scenario& sc = result.scenario;

    const bool to_disk = !options.outdir.empty();
    if (to_disk) std::filesystem::create_directories(options.outdir);

    World world = make_world(sc);
    const std::vector<Vec2> reference = reference_polyline(sc);
    const bool has_baseline = sc.clamp_points.size() >= 2;
    const std::optional<Vec2> anchor =
        !sc.clamp_points.empty() ? std::optional<Vec2>(sc.clamp_points.front())
        : !sc.data_vertices.empty() ? std::optional<Vec2>(sc.data_vertices.front())
                                    : std::nullopt;

    std::string frames_csv = "step,field_file,mask_file,field_max,pgm_scale\n";

    const auto snapshot = [&]() {
        SnapshotRecord rec;
        rec.step = world.clock();
        rec.particle_count = world.population();
        rec.component_count = component_count(world);
        MaterialCurve curve;
        if (world.population() > 0) curve = extract_curve(world, sc.extraction, anchor);
        rec.deviation_distance = has_baseline && world.population() > 0
                                     ? deviation_distance(world, sc.clamp_points[0], sc.clamp_points[1])
                                     : kNaN;
        rec.curve_rmse = !reference.empty() && !curve.samples.empty()
                             ? curve_rmse(curve, reference)
                             : kNaN;

        if (to_disk) {
            const std::string tag = step_tag(rec.step);
            if (options.write_frames) {
                PgmImage img;
                const double scale = field_to_pgm(world.field(), img);
                const std::string field_file = "field_" + tag + ".pgm";
                write_pgm(options.outdir / field_file, img);
                const std::string mask_file = "mask_" + tag + ".pgm";
                write_pgm(options.outdir / mask_file,
                          mask_to_pgm(world.width(), world.height(), occupied_cells(world)));
                frames_csv += std::to_string(rec.step) + "," + field_file + "," + mask_file + "," +
                              format_double(world.field().max_value()) + "," + format_double(scale) +
                              "\n";
                result.artifacts.push_back(field_file);
                result.artifacts.push_back(mask_file);
            }
            if (options.write_curves) {
                std::string csv = "x,y\n";
                for (Vec2 p : curve.samples)
                    csv += format_double(p.x) + "," + format_double(p.y) + "\n";
                const std::string curve_file = "curve_" + tag + ".csv";
                write_text(options.outdir / curve_file, csv);
                result.artifacts.push_back(curve_file);
            }
            if (options.write_roster) {
                std::string csv = "id,x,y,heading\n";
                for (std::int32_t id : world.alive_ids()) {
                    const Particle& p = world.particle(id);
                    csv += std::to_string(id) + "," + format_double(p.pos.x) + "," +
                           format_double(p.pos.y) + "," + format_double(p.heading) + "\n";
                }
                const std::string roster_file = "roster_" + tag + ".csv";
                write_text(options.outdir / roster_file, csv);
                result.artifacts.push_back(roster_file);
            }
        }
        result.curves.push_back(std::move(curve));
        result.metrics.push_back(rec);
        if (hook) hook(world, rec);
    };

    snapshot();
    for (std::uint64_t step = 0; step < sc.run_steps; ++step) {
        const auto projections = schedule_stimuli(sc, step);
        world.scheduler_step(projections, step < sc.warmup_halt);
        if (world.clock() % sc.snapshot_every == 0 || world.clock() == sc.run_steps) snapshot();
    }

    if (to_disk) {
        write_text(options.outdir / "metrics.csv", metrics_to_csv(result.metrics));
        result.artifacts.push_back("metrics.csv");
        if (options.write_frames) {
            write_text(options.outdir / "frames.csv", frames_csv);
            result.artifacts.push_back("frames.csv");
        }
        nlohmann::json manifest = manifest_json(sc, options, result.artifacts);
        write_text(options.outdir / "manifest.json", manifest.dump(2) + "\n");
    }
    return result;
}

}  // namespace physarum
