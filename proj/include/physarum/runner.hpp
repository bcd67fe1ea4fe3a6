#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "physarum/analysis.hpp"
#include "physarum/scenario.hpp"

namespace physarum {

/// Per-run parameter overrides (CLI flags). Only runtime knobs; the material
/// pattern itself always comes from the scenario file.
struct RunOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> steps;
    std::optional<std::uint64_t> snapshot_every;
    std::optional<std::uint64_t> warmup_halt;
    std::optional<double> sensor_angle;
    std::optional<double> rotation_angle;
    std::optional<double> sensor_offset;
    std::optional<double> deposit;
    std::optional<double> decay;
    std::optional<int> kernel_radius;
};

void apply_overrides(Scenario& scenario, const RunOverrides& overrides);

struct SnapshotRecord {
    std::uint64_t step = 0;
    int particle_count = 0;
    double deviation_distance = 0.0;  // NaN without a 2-point clamp baseline
    double curve_rmse = 0.0;          // vs the original data polyline; NaN without one
    int component_count = 0;
};

struct RunOptions {
    std::filesystem::path outdir;  // empty: keep everything in memory
    RunOverrides overrides;
    bool write_frames = true;
    bool write_curves = true;
    bool write_roster = false;
    std::string scenario_path;  // recorded in the manifest
};

struct RunResult {
    std::vector<SnapshotRecord> metrics;
    std::vector<MaterialCurve> curves;  // one per snapshot
    std::vector<std::string> artifacts;
    Scenario scenario;  // with overrides applied
};

using SnapshotHook = std::function<void(const World&, const SnapshotRecord&)>;

/// Execute the scheduler for run_steps steps, snapshotting at step 0, every
/// snapshot_every steps, and at the final step. With an output directory the
/// run also writes PGM frames, per-snapshot curve CSVs, metrics.csv, a
/// frames.csv sidecar, and manifest.json; metrics bytes are reproducible from
/// (scenario, seed) alone.
RunResult run_scenario(const Scenario& scenario, const RunOptions& options,
                       const SnapshotHook& hook = {});

/// metrics.csv serialization used by both the runner and the tests.
std::string metrics_to_csv(const std::vector<SnapshotRecord>& metrics);

}  // namespace physarum
