#include "physarum/world.hpp"

#include <cmath>
#include <stdexcept>

namespace physarum {

World::World(int width, int height, SensoryParams sensory, AdaptationParams adaptation,
             DiffusionParams diffusion, std::uint64_t seed)
    : field_(width, height),
      scratch_(width, height),
      occupancy_(width, height),
      sensory_(sensory),
      adaptation_(adaptation),
      diffusion_(diffusion),
      rng_(seed) {
    if (sensory_.sensor_offset < 1.0)
        throw std::invalid_argument("sensor_offset must be >= 1");
    if (adaptation_.test_period < 1)
        throw std::invalid_argument("test_period must be >= 1");
}

std::int32_t World::spawn(Vec2 pos, double heading) {
    const Cell c = to_cell(pos);
    if (!occupancy_.in_bounds(c)) throw std::out_of_range("spawn outside lattice");
    if (!occupancy_.empty(c)) throw std::invalid_argument("spawn on occupied cell");

    std::int32_t id;
    if (!free_ids_.empty()) {
        id = free_ids_.back();
        free_ids_.pop_back();
    } else {
        id = static_cast<std::int32_t>(particles_.size());
        particles_.emplace_back();
    }
    particles_[id] = Particle{pos, normalize_deg(heading), false, true};
    occupancy_.place(c, id);
    ++population_;
    return id;
}

void World::remove(std::int32_t id) {
    Particle& p = particles_[id];
    occupancy_.clear(to_cell(p.pos));
    p.alive = false;
    free_ids_.push_back(id);
    --population_;
}

std::vector<std::int32_t> World::alive_ids() const {
    std::vector<std::int32_t> ids;
    ids.reserve(population_);
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(particles_.size()); ++i)
        if (particles_[i].alive) ids.push_back(i);
    return ids;
}

double World::sense(std::int32_t id) {
    Particle& p = particles_[id];
    const double so = sensory_.sensor_offset;
    const auto probe = [&](double angle_deg) {
        const double a = deg_to_rad(angle_deg);
        return field_.sample(p.pos.x + so * std::cos(a), p.pos.y + so * std::sin(a));
    };
    const double fl = probe(p.heading - sensory_.sensor_angle);
    const double f = probe(p.heading);
    const double fr = probe(p.heading + sensory_.sensor_angle);

    if (f >= fl && f >= fr) {
        // keep course
    } else if (fl > fr) {
        p.heading = normalize_deg(p.heading - sensory_.rotation_angle);
    } else if (fr > fl) {
        p.heading = normalize_deg(p.heading + sensory_.rotation_angle);
    } else {
        const double sign = rng_.below(2) == 0 ? -1.0 : 1.0;
        p.heading = normalize_deg(p.heading + sign * sensory_.rotation_angle);
    }
    return p.heading;
}

bool World::move(std::int32_t id) {
    Particle& p = particles_[id];
    const double a = deg_to_rad(p.heading);
    const Vec2 next{p.pos.x + std::cos(a), p.pos.y + std::sin(a)};
    const Cell target = to_cell(next);
    const Cell current = to_cell(p.pos);

    // A target cell holding the mover itself is free; only another particle
    // (or the lattice edge) abandons the move.
    const bool open = occupancy_.in_bounds(target) &&
                      (target == current || occupancy_.empty(target));
    if (!open) {
        p.moved = false;
        p.heading = rng_.uniform(0.0, 360.0);
        return false;
    }
    if (!(target == current)) {
        occupancy_.clear(current);
        occupancy_.place(target, id);
    }
    p.pos = next;
    p.moved = true;
    field_.add(target, sensory_.deposit);
    return true;
}

void World::adapt(std::int32_t id, StepStats& stats) {
    Particle& p = particles_[id];
    const Cell c = to_cell(p.pos);

    if (p.moved) {
        const int n9 = occupancy_.count_window(c, adaptation_.division_radius);
        if (n9 >= adaptation_.division_min && n9 <= adaptation_.division_max) {
            Cell open[8];
            int n_open = 0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const Cell q{c.x + dx, c.y + dy};
                    if (occupancy_.in_bounds(q) && occupancy_.empty(q)) open[n_open++] = q;
                }
            if (n_open > 0) {
                const Cell q = open[rng_.below(static_cast<std::uint64_t>(n_open))];
                spawn({static_cast<double>(q.x), static_cast<double>(q.y)});
                ++stats.divisions;
            }
        }
    }

    const int n5 = occupancy_.count_window(c, adaptation_.survival_radius);
    if (n5 < adaptation_.survival_min || n5 > adaptation_.survival_max) {
        remove(id);
        ++stats.removals;
    }
}

void World::project(std::span<const Projection> projections) {
    for (const Projection& pr : projections) field_.project(pr.cells, pr.magnitude);
}

StepStats World::movement_phase() {
    StepStats stats;
    std::vector<std::int32_t> order = alive_ids();
    rng_.shuffle(order);
    for (std::int32_t id : order) {
        sense(id);
        if (move(id)) ++stats.successful_moves;
    }
    return stats;
}

StepStats World::adaptation_phase() {
    StepStats stats;
    std::vector<std::int32_t> order = alive_ids();
    rng_.shuffle(order);
    for (std::int32_t id : order)
        if (particles_[id].alive) adapt(id, stats);
    return stats;
}

void World::diffusion_phase() {
    diffuse_into(field_, scratch_, diffusion_);
    std::swap(field_, scratch_);
}

StepStats World::scheduler_step(std::span<const Projection> projections, bool halted) {
    project(projections);
    StepStats stats;
    if (!halted) {
        stats += movement_phase();
        if (clock_ % static_cast<std::uint64_t>(adaptation_.test_period) == 0)
            stats += adaptation_phase();
    }
    diffusion_phase();
    ++clock_;
    return stats;
}

bool World::occupancy_consistent() const {
    int seen = 0;
    for (int y = 0; y < occupancy_.height(); ++y)
        for (int x = 0; x < occupancy_.width(); ++x) {
            const std::int32_t id = occupancy_.at({x, y});
            if (id == OccupancyGrid::kEmpty) continue;
            ++seen;
            if (id < 0 || id >= static_cast<std::int32_t>(particles_.size())) return false;
            const Particle& p = particles_[id];
            if (!p.alive) return false;
            if (!(to_cell(p.pos) == Cell{x, y})) return false;
        }
    return seen == population_;
}

}  // namespace physarum
