#include "physarum/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "physarum/io.hpp"

namespace physarum {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ScenarioError("scenario." + path + ": " + what);
}

const json* find(const json& j, const std::string& key) {
    const auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

double get_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

double number_or(const json& j, const std::string& key, const std::string& path, double fallback) {
    const json* v = find(j, key);
    return v ? get_number(*v, join(path, key)) : fallback;
}

std::uint64_t uint_or(const json& j, const std::string& key, const std::string& path,
                      std::uint64_t fallback) {
    const json* v = find(j, key);
    if (!v) return fallback;
    if (v->is_number_unsigned()) return v->get<std::uint64_t>();
    if (v->is_number_integer() && v->get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(v->get<std::int64_t>());
    fail(join(path, key), "expected a nonnegative integer");
}

int int_or(const json& j, const std::string& key, const std::string& path, int fallback) {
    const json* v = find(j, key);
    if (!v) return fallback;
    if (!v->is_number_integer()) fail(join(path, key), "expected an integer");
    return v->get<int>();
}

std::string string_or(const json& j, const std::string& key, const std::string& path,
                      const std::string& fallback) {
    const json* v = find(j, key);
    if (!v) return fallback;
    if (!v->is_string()) fail(join(path, key), "expected a string");
    return v->get<std::string>();
}

std::vector<Vec2> parse_points(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of [x, y] pairs");
    std::vector<Vec2> pts;
    pts.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& p = j[i];
        const std::string at = path + "[" + std::to_string(i) + "]";
        if (!p.is_array() || p.size() != 2) fail(at, "expected [x, y]");
        pts.push_back({get_number(p[0], at + "[0]"), get_number(p[1], at + "[1]")});
    }
    return pts;
}

std::vector<double> load_series_values(const json& j, const std::string& path,
                                       const std::filesystem::path& base_dir) {
    if (const json* values = find(j, "values")) {
        if (!values->is_array()) fail(path + ".values", "expected an array of numbers");
        std::vector<double> out;
        out.reserve(values->size());
        for (std::size_t i = 0; i < values->size(); ++i)
            out.push_back(get_number((*values)[i], path + ".values[" + std::to_string(i) + "]"));
        return out;
    }
    if (const json* csv = find(j, "csv")) {
        if (!csv->is_string()) fail(path + ".csv", "expected a file path");
        const auto rows = read_csv_numeric(base_dir / csv->get<std::string>());
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& row : rows) out.push_back(row.back());  // value is the last column
        return out;
    }
    fail(path, "needs either \"values\" or \"csv\"");
}

CellMask mask_from_pgm(const std::filesystem::path& file) {
    const PgmImage img = read_pgm(file);
    CellMask mask;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            if (img.pixels[static_cast<std::size_t>(y) * img.width + x] > 127)
                mask.push_back({x, y});
    return mask;
}

void check_in_bounds(const std::vector<Vec2>& pts, int w, int h, const std::string& path) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Cell c = to_cell(pts[i]);
        if (c.x < 0 || c.x >= w || c.y < 0 || c.y >= h)
            fail(path + "[" + std::to_string(i) + "]", "point outside the lattice");
    }
}

}  // namespace

CellMask material_footprint(const CellMask& base, int width_px, int lattice_w, int lattice_h) {
    if (base.empty()) throw ScenarioError("scenario.data: initial mask is empty");
    if (width_px < 1) throw ScenarioError("scenario.material_width: must be >= 1");
    CellMask dilated = dilate_disc(base, width_px / 2);
    for (Cell c : dilated)
        if (c.x < 0 || c.x >= lattice_w || c.y < 0 || c.y >= lattice_h)
            throw ScenarioError("scenario.material_width: dilated material leaves the lattice");
    return dilated;
}

Scenario scenario_from_json(const json& j, const std::filesystem::path& base_dir, std::string name) {
    if (!j.is_object()) throw ScenarioError("scenario: expected a JSON object");
    Scenario sc;
    sc.name = string_or(j, "name", "", std::move(name));

    if (const json* lattice = find(j, "lattice")) {
        sc.width = int_or(*lattice, "width", "lattice", sc.width);
        sc.height = int_or(*lattice, "height", "lattice", sc.height);
    }
    if (sc.width < 8 || sc.height < 8) fail("lattice", "lattice too small");

    sc.seed = uint_or(j, "seed", "", sc.seed);
    sc.run_steps = uint_or(j, "steps", "", sc.run_steps);
    sc.warmup_halt = uint_or(j, "warmup_halt", "", sc.warmup_halt);
    sc.snapshot_every = uint_or(j, "snapshot_every", "", sc.snapshot_every);
    if (sc.snapshot_every == 0) fail("snapshot_every", "must be >= 1");
    sc.material_width = int_or(j, "material_width", "", sc.material_width);
    if (sc.material_width < 1) fail("material_width", "must be >= 1");
    sc.clamp_radius = int_or(j, "clamp_radius", "", sc.clamp_radius);
    if (sc.clamp_radius < 0) fail("clamp_radius", "must be >= 0");

    const std::string extraction = string_or(j, "extraction", "", "column_mean");
    if (extraction == "column_mean")
        sc.extraction = ExtractionMode::column_mean;
    else if (extraction == "skeleton")
        sc.extraction = ExtractionMode::skeleton;
    else
        fail("extraction", "expected \"column_mean\" or \"skeleton\"");

    if (const json* params = find(j, "params")) {
        sc.sensory.sensor_angle = number_or(*params, "sensor_angle", "params", sc.sensory.sensor_angle);
        sc.sensory.rotation_angle =
            number_or(*params, "rotation_angle", "params", sc.sensory.rotation_angle);
        sc.sensory.sensor_offset =
            number_or(*params, "sensor_offset", "params", sc.sensory.sensor_offset);
        sc.sensory.deposit = number_or(*params, "deposit", "params", sc.sensory.deposit);
        sc.diffusion.decay = number_or(*params, "decay", "params", sc.diffusion.decay);
        sc.diffusion.kernel_radius =
            int_or(*params, "kernel_radius", "params", sc.diffusion.kernel_radius);
        sc.adaptation.test_period = int_or(*params, "test_period", "params", sc.adaptation.test_period);
        if (const json* div = find(*params, "division_range")) {
            if (!div->is_array() || div->size() != 2) fail("params.division_range", "expected [min, max]");
            sc.adaptation.division_min = (*div)[0].get<int>();
            sc.adaptation.division_max = (*div)[1].get<int>();
        }
        if (const json* sur = find(*params, "survival_range")) {
            if (!sur->is_array() || sur->size() != 2) fail("params.survival_range", "expected [min, max]");
            sc.adaptation.survival_min = (*sur)[0].get<int>();
            sc.adaptation.survival_max = (*sur)[1].get<int>();
        }
        if (sc.adaptation.test_period < 1) fail("params.test_period", "must be >= 1");
        if (sc.diffusion.decay < 0.0 || sc.diffusion.decay >= 1.0)
            fail("params.decay", "must be in [0, 1)");
        if (sc.diffusion.kernel_radius < 1) fail("params.kernel_radius", "must be >= 1");
        if (sc.sensory.sensor_offset < 1.0) fail("params.sensor_offset", "must be >= 1");
    }

    // --- data pattern ---
    const json* data = find(j, "data");
    if (!data || !data->is_object()) fail("data", "required object");
    Polyline2D polyline;
    bool have_polyline = false;
    if (const json* series = find(*data, "series")) {
        Series1D s;
        s.values = load_series_values(*series, "data.series", base_dir);
        s.x_scale = number_or(*series, "x_scale", "data.series", 1.0);
        s.x_origin = number_or(*series, "x_origin", "data.series", 0.0);
        s.y_origin = number_or(*series, "y_origin", "data.series", 0.0);
        s.y_scale = number_or(*series, "y_scale", "data.series", 1.0);
        if (s.values.size() < 2) fail("data.series", "needs at least 2 values");
        polyline = series_to_polyline(s);
        have_polyline = true;
        // 1D patterns must sit at least one sensor offset away from every edge
        const double so = sc.sensory.sensor_offset;
        for (std::size_t i = 0; i < polyline.points.size(); ++i) {
            const Vec2 p = polyline.points[i];
            if (p.x < so || p.x > sc.width - 1 - so || p.y < so || p.y > sc.height - 1 - so)
                fail("data.series", "mapped sample " + std::to_string(i) +
                                        " closer than sensor_offset to the lattice edge");
        }
    } else if (const json* poly = find(*data, "polyline")) {
        const json* pts = find(*poly, "points");
        Polyline2D in;
        if (pts) {
            in.points = parse_points(*pts, "data.polyline.points");
        } else if (const json* csv = find(*poly, "csv")) {
            if (!csv->is_string()) fail("data.polyline.csv", "expected a file path");
            for (const auto& row : read_csv_numeric(base_dir / csv->get<std::string>())) {
                if (row.size() < 2) fail("data.polyline.csv", "rows need x and y columns");
                in.points.push_back({row[0], row[1]});
            }
        } else {
            fail("data.polyline", "needs either \"points\" or \"csv\"");
        }
        in.closed = find(*poly, "closed") && (*poly)["closed"].get<bool>();
        if (in.points.size() < 2) fail("data.polyline", "needs at least 2 points");
        for (std::size_t i = 0; i + 1 < in.points.size(); ++i)
            if (in.points[i] == in.points[i + 1])
                fail("data.polyline.points[" + std::to_string(i + 1) + "]",
                     "repeated consecutive point");
        check_in_bounds(in.points, sc.width, sc.height, "data.polyline.points");
        polyline = std::move(in);
        have_polyline = true;
    } else if (const json* pgm = find(*data, "mask_pgm")) {
        if (!pgm->is_string()) fail("data.mask_pgm", "expected a file path");
        sc.base_mask = mask_from_pgm(base_dir / pgm->get<std::string>());
        if (sc.base_mask.empty()) fail("data.mask_pgm", "mask has no set pixels");
        for (Cell c : sc.base_mask)
            if (c.x >= sc.width || c.y >= sc.height) fail("data.mask_pgm", "mask exceeds the lattice");
    } else {
        fail("data", "needs \"series\", \"polyline\" or \"mask_pgm\"");
    }

    // --- preprocessing ---
    if (const json* pre = find(j, "preprocess")) {
        const std::string mode =
            pre->is_string() ? pre->get<std::string>() : string_or(*pre, "mode", "preprocess", "none");
        if (mode == "none") {
            sc.preprocess = PreprocessMode::none;
        } else if (mode == "rectilinear") {
            sc.preprocess = PreprocessMode::rectilinear;
        } else if (mode == "pipe") {
            sc.preprocess = PreprocessMode::pipe;
            if (pre->is_object()) sc.pipe_radius = int_or(*pre, "radius", "preprocess", sc.pipe_radius);
            if (sc.pipe_radius < 1) fail("preprocess.radius", "must be >= 1");
        } else {
            fail("preprocess.mode", "expected \"none\", \"rectilinear\" or \"pipe\"");
        }
        if (sc.preprocess != PreprocessMode::none && !have_polyline)
            fail("preprocess", "preprocessing needs polyline or series data");
    }

    if (have_polyline) {
        sc.data_vertices = polyline.points;
        Polyline2D shaped = polyline;
        if (sc.preprocess == PreprocessMode::rectilinear) {
            try {
                shaped = rectilinear_preprocess(polyline);
            } catch (const std::invalid_argument& e) {
                fail("preprocess", e.what());
            }
        }
        try {
            sc.base_mask = rasterize(shaped);
        } catch (const std::invalid_argument& e) {
            fail("data", e.what());
        }
        sc.stimulus_polyline = std::move(shaped);
        if (sc.preprocess == PreprocessMode::pipe) {
            sc.pipe_mask = dilate_disc(sc.base_mask, sc.pipe_radius);
            for (Cell c : sc.pipe_mask)
                if (c.x < 0 || c.x >= sc.width || c.y < 0 || c.y >= sc.height)
                    fail("preprocess.radius", "pipe exceeds the lattice");
        }
    }

    // --- material ---
    if (sc.preprocess == PreprocessMode::pipe) {
        sc.material_mask = sc.pipe_mask;  // the material fills the pipe
    } else {
        sc.material_mask = material_footprint(sc.base_mask, sc.material_width, sc.width, sc.height);
    }

    // --- protocol & stimuli ---
    const json* protocol = find(j, "protocol");
    std::string mode = "removal";
    if (protocol) {
        if (protocol->is_string())
            mode = protocol->get<std::string>();
        else if (protocol->is_object())
            mode = string_or(*protocol, "mode", "protocol", mode);
    }
    if (protocol && protocol->is_object()) {
        sc.strong_magnitude = number_or(*protocol, "strong", "protocol", sc.strong_magnitude);
        sc.weak_magnitude = number_or(*protocol, "weak", "protocol", sc.weak_magnitude);
    }
    if (sc.strong_magnitude <= 0.0) fail("protocol.strong", "must be > 0");
    if (sc.weak_magnitude <= 0.0) fail("protocol.weak", "must be > 0");
    if (mode == "removal")
        sc.protocol = ProtocolMode::removal;
    else if (mode == "weak")
        sc.protocol = ProtocolMode::weak;
    else if (mode == "hold")
        sc.protocol = ProtocolMode::hold;
    else
        fail("protocol.mode", "expected \"removal\", \"weak\" or \"hold\"");

    // --- clamps ---
    if (const json* clamps = find(j, "clamps")) {
        if (clamps->is_string()) {
            const std::string which = clamps->get<std::string>();
            if (which == "none") {
            } else if (which == "endpoints") {
                if (sc.data_vertices.size() < 2) fail("clamps", "no data endpoints to clamp");
                sc.clamp_points = {sc.data_vertices.front(), sc.data_vertices.back()};
            } else if (which == "vertices") {
                sc.clamp_points = sc.data_vertices;
            } else {
                fail("clamps", "expected \"none\", \"endpoints\", \"vertices\" or a point array");
            }
        } else {
            sc.clamp_points = parse_points(*clamps, "clamps");
        }
    }
    {
        // clamp points must lie on the material
        std::set<Cell> cells(sc.material_mask.begin(), sc.material_mask.end());
        for (std::size_t i = 0; i < sc.clamp_points.size(); ++i)
            if (!cells.count(to_cell(sc.clamp_points[i])))
                fail("clamps[" + std::to_string(i) + "]", "clamp point is not on the initial material");
    }

    // stimulus schedule: strong pattern during warm-up; afterwards the
    // protocol decides whether the pattern vanishes, weakens, or holds.
    const std::uint64_t warmup_end = sc.warmup_halt;
    switch (sc.protocol) {
        case ProtocolMode::removal:
            sc.stimuli.push_back({Stimulus::Kind::polyline_mask, sc.base_mask, sc.strong_magnitude,
                                  0, warmup_end});
            break;
        case ProtocolMode::weak:
            sc.stimuli.push_back({Stimulus::Kind::polyline_mask, sc.base_mask, sc.strong_magnitude,
                                  0, warmup_end});
            sc.stimuli.push_back({Stimulus::Kind::polyline_mask, sc.base_mask, sc.weak_magnitude,
                                  warmup_end, Stimulus::kForever});
            break;
        case ProtocolMode::hold:
            sc.stimuli.push_back({Stimulus::Kind::polyline_mask, sc.base_mask, sc.strong_magnitude,
                                  0, Stimulus::kForever});
            break;
    }
    if (sc.preprocess == PreprocessMode::pipe) {
        // the binding stimulus is the pipe itself
        sc.stimuli.front().cells = sc.pipe_mask;
    }
    if (!sc.clamp_points.empty()) {
        // data points are drawn dots, not bare pixels; project a small disc
        CellMask cells;
        cells.reserve(sc.clamp_points.size());
        for (Vec2 p : sc.clamp_points) cells.push_back(to_cell(p));
        cells = dilate_disc(sorted_unique(std::move(cells)), sc.clamp_radius);
        CellMask clipped;
        for (Cell c : cells)
            if (c.x >= 0 && c.x < sc.width && c.y >= 0 && c.y < sc.height) clipped.push_back(c);
        sc.stimuli.push_back({Stimulus::Kind::point_set, std::move(clipped), sc.strong_magnitude, 0,
                              Stimulus::kForever});
    }
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ScenarioError(path.string() + ": " + e.what());
    }
    Scenario sc = scenario_from_json(j, path.parent_path(), path.stem().string());
    return sc;
}

std::vector<Projection> schedule_stimuli(const Scenario& scenario, std::uint64_t step) {
    std::vector<Projection> active;
    for (const Stimulus& s : scenario.stimuli)
        if (step >= s.active_from && step < s.active_until)
            active.push_back({s.cells, s.magnitude});
    return active;
}

World make_world(const Scenario& scenario, std::optional<std::uint64_t> seed_override) {
    World world(scenario.width, scenario.height, scenario.sensory, scenario.adaptation,
                scenario.diffusion, seed_override.value_or(scenario.seed));
    for (Cell c : scenario.material_mask)
        world.spawn({static_cast<double>(c.x), static_cast<double>(c.y)});
    return world;
}

}  // namespace physarum
