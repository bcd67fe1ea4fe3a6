#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "physarum/mask.hpp"
#include "physarum/series.hpp"
#include "physarum/world.hpp"

#include "json.hpp"

namespace physarum {

/// Scenario file problems carry the offending field path (or parse location).
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Stimulus {
    enum class Kind { polyline_mask, point_set };
    static constexpr std::uint64_t kForever = std::numeric_limits<std::uint64_t>::max();

    Kind kind = Kind::polyline_mask;
    CellMask cells;
    double magnitude = 2.55;
    std::uint64_t active_from = 0;
    std::uint64_t active_until = kForever;  // exclusive
};

enum class ExtractionMode { column_mean, skeleton };
enum class PreprocessMode { none, rectilinear, pipe };
enum class ProtocolMode { removal, weak, hold };

/// A fully resolved run plan: masks rasterized, material placed, stimulus
/// schedule expanded. Loading is pure; each scenario yields independent
/// worlds.
struct Scenario {
    std::string name;
    int width = 640;
    int height = 240;
    std::uint64_t seed = 1;
    std::uint64_t run_steps = 0;
    std::uint64_t warmup_halt = 20;
    std::uint64_t snapshot_every = 100;
    int material_width = 5;
    int clamp_radius = 2;  // clamp dots are drawn as discs of this radius
    ExtractionMode extraction = ExtractionMode::column_mean;
    PreprocessMode preprocess = PreprocessMode::none;
    int pipe_radius = 7;
    ProtocolMode protocol = ProtocolMode::removal;
    double strong_magnitude = 2.55;
    double weak_magnitude = 0.255;

    std::vector<Vec2> data_vertices;  // original data points (before preprocessing)
    Polyline2D stimulus_polyline;     // after preprocessing; empty for PGM masks
    CellMask base_mask;               // rasterized stimulus pattern
    CellMask material_mask;           // cells seeded with one particle each
    CellMask pipe_mask;               // preprocess == pipe only
    std::vector<Vec2> clamp_points;
    std::vector<Stimulus> stimuli;

    SensoryParams sensory;
    AdaptationParams adaptation;
    DiffusionParams diffusion;
};

Scenario load_scenario(const std::filesystem::path& path);
Scenario scenario_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir,
                            std::string name = {});

/// Stimuli whose activity window contains `step`.
std::vector<Projection> schedule_stimuli(const Scenario& scenario, std::uint64_t step);

/// Dilate a pattern into the material footprint (disc radius floor(width/2)).
/// Throws when the dilated mask leaves the lattice.
CellMask material_footprint(const CellMask& base, int width_px, int lattice_w, int lattice_h);

/// Build a world from the scenario and seed it with one particle per
/// material cell (random headings).
World make_world(const Scenario& scenario, std::optional<std::uint64_t> seed_override = {});

}  // namespace physarum
