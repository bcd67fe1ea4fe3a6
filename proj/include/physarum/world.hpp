#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "physarum/field.hpp"
#include "physarum/occupancy.hpp"
#include "physarum/rng.hpp"

namespace physarum {

struct Particle {
    Vec2 pos;               // continuous; rounds to the registered occupancy cell
    double heading = 0.0;   // degrees in [0, 360)
    bool moved = false;     // successful forward move in the last movement phase
    bool alive = false;
};

struct SensoryParams {
    double sensor_angle = 90.0;    // SA, degrees
    double rotation_angle = 45.0;  // RA, degrees
    double sensor_offset = 5.0;    // SO, pixels; < 3 gives weak local coupling
    double deposit = 5.0;          // units added on each successful move
};

struct AdaptationParams {
    int division_radius = 4;   // 9x9 window
    int division_min = 1;
    int division_max = 10;
    int survival_radius = 2;   // 5x5 window
    int survival_min = 0;
    int survival_max = 24;
    int test_period = 2;       // scheduler steps between adaptation passes
};

/// One chemoattractant source set active this step.
struct Projection {
    std::span<const Cell> cells;
    double magnitude;
};

struct StepStats {
    int successful_moves = 0;
    int divisions = 0;
    int removals = 0;

    StepStats& operator+=(const StepStats& o) {
        successful_moves += o.successful_moves;
        divisions += o.divisions;
        removals += o.removals;
        return *this;
    }
};

/// The particle population and the lattice it is coupled through. A world is
/// a single logical thread of execution; distinct worlds are independent.
class World {
public:
    World(int width, int height, SensoryParams sensory, AdaptationParams adaptation,
          DiffusionParams diffusion, std::uint64_t seed);

    int width() const { return field_.width(); }
    int height() const { return field_.height(); }

    const Field& field() const { return field_; }
    Field& field() { return field_; }
    const OccupancyGrid& occupancy() const { return occupancy_; }

    const SensoryParams& sensory() const { return sensory_; }
    const AdaptationParams& adaptation() const { return adaptation_; }
    const DiffusionParams& diffusion() const { return diffusion_; }
    Rng& rng() { return rng_; }

    std::uint64_t clock() const { return clock_; }

    /// Place a new particle; its cell must be free. Returns the particle id.
    std::int32_t spawn(Vec2 pos, double heading);
    /// Spawn with a heading drawn uniformly from [0, 360).
    std::int32_t spawn(Vec2 pos) { return spawn(pos, rng_.uniform(0.0, 360.0)); }

    int population() const { return population_; }
    const Particle& particle(std::int32_t id) const { return particles_[id]; }
    std::span<const Particle> particles() const { return particles_; }

    /// Ids of live particles in ascending order.
    std::vector<std::int32_t> alive_ids() const;

    // --- per-particle operations (the scheduler calls these; exposed for tests) ---

    /// Sensory stage: read FL, F, FR at offset SO and angles (heading-SA,
    /// heading, heading+SA); keep course when F >= both, otherwise rotate by
    /// RA toward the stronger side (tie away from F breaks at random).
    /// Returns the new heading.
    double sense(std::int32_t id);

    /// Motor stage: try a unit step along the heading. A blocked target
    /// (occupied by another particle, or outside the lattice) leaves the
    /// position unchanged and resamples the heading uniformly. A successful
    /// move deposits `deposit` units at the new cell.
    bool move(std::int32_t id);

    /// Division/removal tests for one particle (division first, then
    /// survival; both always evaluated). Window counts include the particle.
    void adapt(std::int32_t id, StepStats& stats);

    // --- scheduler stages ---

    void project(std::span<const Projection> projections);
    StepStats movement_phase();
    StepStats adaptation_phase();
    void diffusion_phase();

    /// One scheduler step: project, then (unless halted) move every particle
    /// in a fresh random order and run the adaptation pass every test_period
    /// steps, then diffuse and advance the clock.
    StepStats scheduler_step(std::span<const Projection> projections, bool halted = false);

    /// Roster/grid audit; used by tests and the acceptance suite.
    bool occupancy_consistent() const;

private:
    void remove(std::int32_t id);

    Field field_;
    Field scratch_;
    OccupancyGrid occupancy_;
    std::vector<Particle> particles_;
    std::vector<std::int32_t> free_ids_;
    int population_ = 0;
    SensoryParams sensory_;
    AdaptationParams adaptation_;
    DiffusionParams diffusion_;
    Rng rng_;
    std::uint64_t clock_ = 0;
};

}  // namespace physarum
