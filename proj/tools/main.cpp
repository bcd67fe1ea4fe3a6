#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "physarum/analysis.hpp"
#include "physarum/io.hpp"
#include "physarum/oracle.hpp"
#include "physarum/runner.hpp"

namespace fs = std::filesystem;
using namespace physarum;

namespace {

struct MappingFlags {
    std::optional<double> x_scale, x_origin, y_origin, y_scale;
    bool mapped() const {
        return x_scale.has_value() || x_origin.has_value() || y_origin.has_value() ||
               y_scale.has_value();
    }
    void add_to(CLI::App& cmd) {
        cmd.add_option("--x-scale", x_scale, "pixels per sample (emit lattice x,y)");
        cmd.add_option("--x-origin", x_origin, "lattice x of sample 0");
        cmd.add_option("--y-origin", y_origin, "lattice row of value 0");
        cmd.add_option("--y-scale", y_scale, "pixels per data unit");
    }
    Series1D apply(std::vector<double> values) const {
        Series1D s;
        s.values = std::move(values);
        s.x_scale = x_scale.value_or(1.0);
        s.x_origin = x_origin.value_or(0.0);
        s.y_origin = y_origin.value_or(0.0);
        s.y_scale = y_scale.value_or(1.0);
        return s;
    }
};

std::vector<double> read_series_csv(const fs::path& path) {
    std::vector<double> values;
    for (const auto& row : read_csv_numeric(path)) values.push_back(row.back());
    if (values.size() < 2) throw std::runtime_error(path.string() + ": series needs at least 2 rows");
    return values;
}

std::vector<Vec2> read_points_csv(const fs::path& path) {
    std::vector<Vec2> points;
    for (const auto& row : read_csv_numeric(path)) {
        if (row.size() < 2) throw std::runtime_error(path.string() + ": rows need x and y columns");
        points.push_back({row[0], row[1]});
    }
    return points;
}

void emit(const std::string& text, const std::optional<fs::path>& out) {
    if (!out) {
        std::cout << text;
        return;
    }
    std::ofstream f(*out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + out->string() + " for writing");
    f << text;
}

std::string series_csv(const Series1D& s, bool mapped) {
    std::string text = mapped ? "x,y\n" : "index,value\n";
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (mapped) {
            text += format_double(s.x_origin + static_cast<double>(i) * s.x_scale) + "," +
                    format_double(s.y_origin - s.values[i] * s.y_scale) + "\n";
        } else {
            text += std::to_string(i) + "," + format_double(s.values[i]) + "\n";
        }
    }
    return text;
}

std::string points_csv(const std::vector<Vec2>& points) {
    std::string text = "x,y\n";
    for (Vec2 p : points) text += format_double(p.x) + "," + format_double(p.y) + "\n";
    return text;
}

int cmd_run(const fs::path& scenario_path, const fs::path& outdir, const RunOverrides& overrides,
            bool frames, bool roster, bool quiet) {
    Scenario scenario = load_scenario(scenario_path);
    RunOptions options;
    options.outdir = outdir;
    options.overrides = overrides;
    options.write_frames = frames;
    options.write_roster = roster;
    options.scenario_path = scenario_path.string();
    const RunResult result = run_scenario(scenario, options);
    if (!quiet) {
        const SnapshotRecord& last = result.metrics.back();
        std::printf("run %s: %zu snapshots, final step %llu, %d particles, %d components\n",
                    result.scenario.name.c_str(), result.metrics.size(),
                    static_cast<unsigned long long>(last.step), last.particle_count,
                    last.component_count);
        std::printf("artifacts in %s\n", outdir.string().c_str());
    }
    return 0;
}

int cmd_compare(const fs::path& rundir, const std::vector<fs::path>& oracle_files,
                const std::optional<fs::path>& out) {
    const fs::path metrics_path = rundir / "metrics.csv";
    if (!fs::exists(metrics_path))
        throw std::runtime_error(rundir.string() + ": not a run directory (no metrics.csv)");
    const auto metrics = read_csv_numeric(metrics_path);
    if (metrics.empty()) throw std::runtime_error(metrics_path.string() + ": empty metrics");

    // lattice size from the manifest, to catch mismatched coordinate scales
    double lattice_w = 0.0, lattice_h = 0.0;
    {
        std::ifstream mf(rundir / "manifest.json");
        if (mf) {
            nlohmann::json j = nlohmann::json::parse(mf, nullptr, false);
            if (!j.is_discarded() && j.contains("lattice")) {
                lattice_w = j["lattice"].value("width", 0);
                lattice_h = j["lattice"].value("height", 0);
            }
        }
    }

    std::vector<std::vector<Vec2>> oracles;
    for (const fs::path& f : oracle_files) {
        std::vector<Vec2> curve = read_points_csv(f);
        if (curve.empty()) throw std::runtime_error(f.string() + ": empty oracle curve");
        if (lattice_w > 0.0) {
            for (Vec2 p : curve)
                if (p.x < 0.0 || p.x >= lattice_w || p.y < 0.0 || p.y >= lattice_h)
                    throw std::runtime_error(
                        f.string() + ": oracle curve leaves the run's lattice (mismatched scales?)");
        }
        oracles.push_back(std::move(curve));
    }

    std::string report = "step,deviation_distance";
    for (const fs::path& f : oracle_files) report += ",rmse_" + csv_escape(f.stem().string());
    report += "\n";

    std::vector<double> best_rmse(oracle_files.size(), 1e300);
    std::vector<long long> best_step(oracle_files.size(), -1);
    for (const auto& row : metrics) {
        const auto step = static_cast<unsigned long long>(row[0]);
        char tag[32];
        std::snprintf(tag, sizeof(tag), "%07llu", step);
        const fs::path curve_path = rundir / ("curve_" + std::string(tag) + ".csv");
        if (!fs::exists(curve_path)) continue;
        MaterialCurve curve;
        curve.samples = read_points_csv(curve_path);
        if (curve.samples.empty()) continue;
        report += std::to_string(step) + "," + format_double(row[2]);
        for (std::size_t k = 0; k < oracles.size(); ++k) {
            const double rmse = curve_rmse(curve, oracles[k]);
            report += "," + format_double(rmse);
            if (rmse < best_rmse[k]) {
                best_rmse[k] = rmse;
                best_step[k] = static_cast<long long>(step);
            }
        }
        report += "\n";
    }
    emit(report, out);
    for (std::size_t k = 0; k < oracle_files.size(); ++k)
        std::fprintf(stderr, "best_step %s %lld (rmse %.3f)\n",
                     oracle_files[k].stem().string().c_str(), best_step[k], best_rmse[k]);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Physarum-style material simulator and curve oracles"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "simulate a scenario file");
    fs::path scenario_path, outdir = "out";
    RunOverrides overrides;
    bool no_frames = false, roster = false, quiet = false;
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--out", outdir, "output directory");
    run->add_option("--seed", overrides.seed, "RNG seed override");
    run->add_option("--steps", overrides.steps, "scheduler steps override");
    run->add_option("--snapshot-every", overrides.snapshot_every, "snapshot interval override");
    run->add_option("--warmup", overrides.warmup_halt, "warm-up halt override");
    run->add_option("--sa", overrides.sensor_angle, "sensor angle (degrees)");
    run->add_option("--ra", overrides.rotation_angle, "rotation angle (degrees)");
    run->add_option("--so", overrides.sensor_offset, "sensor offset (pixels)");
    run->add_option("--deposit", overrides.deposit, "deposit per successful move");
    run->add_option("--decay", overrides.decay, "field decay per step");
    run->add_option("--kernel-radius", overrides.kernel_radius, "diffusion kernel radius");
    run->add_flag("--no-frames", no_frames, "skip PGM frames");
    run->add_flag("--roster", roster, "write per-snapshot particle rosters");
    run->add_flag("--quiet", quiet, "suppress the summary line");

    auto* oracle = app.add_subcommand("oracle", "exact reference computations");
    oracle->require_subcommand(1);
    std::optional<fs::path> oracle_out;
    fs::path input_csv;

    auto* movavg = oracle->add_subcommand("movavg", "centered moving average of a series CSV");
    int window = 1;
    MappingFlags movavg_map;
    movavg->add_option("--window", window, "odd window size")->required();
    movavg_map.add_to(*movavg);
    movavg->add_option("input", input_csv, "series CSV (value per row)")->required();
    movavg->add_option("--out", oracle_out, "output CSV (default stdout)");

    auto* lp = oracle->add_subcommand("lowpass", "iterated 3-tap low-pass of a series CSV");
    double alpha = 0.5;
    int iterations = 1;
    MappingFlags lp_map;
    lp->add_option("--alpha", alpha, "smoothing strength in (0,1]");
    lp->add_option("--iterations", iterations, "iteration count")->required();
    lp_map.add_to(*lp);
    lp->add_option("input", input_csv, "series CSV (value per row)")->required();
    lp->add_option("--out", oracle_out, "output CSV (default stdout)");

    auto* bsp = oracle->add_subcommand("bspline", "sample a B-spline through control points");
    int degree = 2, samples = 512;
    bool clamped = false, closed = false;
    bsp->add_option("--degree", degree, "spline degree")->required();
    bsp->add_flag("--clamped", clamped, "repeat end knots so the curve hits the endpoints");
    bsp->add_flag("--closed", closed, "close the shape by overlapping points");
    bsp->add_option("--samples", samples, "points to emit");
    bsp->add_option("input", input_csv, "control points CSV (x,y per row)")->required();
    bsp->add_option("--out", oracle_out, "output CSV (default stdout)");

    auto* hull = oracle->add_subcommand("hull", "convex hull of a point set");
    hull->add_option("input", input_csv, "points CSV (x,y per row)")->required();
    hull->add_option("--out", oracle_out, "output CSV (default stdout)");

    auto* compare = app.add_subcommand("compare", "score a run against oracle curves");
    fs::path rundir;
    std::vector<fs::path> oracle_files;
    std::optional<fs::path> report_out;
    compare->add_option("rundir", rundir, "run output directory")->required();
    compare->add_option("oracle", oracle_files, "oracle curve CSVs (x,y)")->required();
    compare->add_option("--out", report_out, "report CSV (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(scenario_path, outdir, overrides, !no_frames, roster, quiet);
        if (*movavg) {
            const Series1D s = movavg_map.apply(read_series_csv(input_csv));
            emit(series_csv(moving_average(s, {window}), movavg_map.mapped()), oracle_out);
            return 0;
        }
        if (*lp) {
            const Series1D s = lp_map.apply(read_series_csv(input_csv));
            emit(series_csv(lowpass(s, alpha, iterations), lp_map.mapped()), oracle_out);
            return 0;
        }
        if (*bsp) {
            std::vector<Vec2> points = read_points_csv(input_csv);
            SplineSpec spec;
            if (closed) {
                spec = close_spline(std::move(points), degree, clamped);
            } else {
                spec.control_points = std::move(points);
                spec.degree = degree;
                spec.clamped = clamped;
            }
            emit(points_csv(bspline_sample(spec, samples)), oracle_out);
            return 0;
        }
        if (*hull) {
            emit(points_csv(convex_hull(read_points_csv(input_csv))), oracle_out);
            return 0;
        }
        if (*compare) return cmd_compare(rundir, oracle_files, report_out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
