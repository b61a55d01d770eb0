#include "neuroevo/track.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "neuroevo/error.hpp"

namespace neuroevo {

using nlohmann::json;

namespace {

constexpr double kBinEps = 1e-6;  // inflation when binning walls into grid cells

double require_number(const json& j, const std::string& field) {
    if (!j.is_number()) throw ParseError("track: field \"" + field + "\" must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ValidationError("track: field \"" + field + "\" is not finite");
    return v;
}

Vec2 parse_point(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2)
        throw ParseError("track: " + field + " must be a [x, y] pair");
    return {require_number(j[0], field), require_number(j[1], field)};
}

void reject_unknown_fields(const json& obj, std::initializer_list<const char*> allowed,
                           const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* a) { return key == a; }) == allowed.end())
            throw ValidationError("track: unknown field \"" + where + key + "\"");
    }
}

const json& require_field(const json& obj, const char* field) {
    auto it = obj.find(field);
    if (it == obj.end())
        throw ValidationError("track: missing required field \"" + std::string(field) + "\"");
    return *it;
}

/// Segment vs centered axis-aligned box [-hx,hx]x[-hy,hy], boundary inclusive.
bool segment_hits_box(const Vec2& p, const Vec2& q, double hx, double hy) {
    double t0 = 0.0, t1 = 1.0;
    const double d[2] = {q.x - p.x, q.y - p.y};
    const double o[2] = {p.x, p.y};
    const double h[2] = {hx, hy};
    for (int i = 0; i < 2; ++i) {
        if (std::abs(d[i]) < 1e-15) {
            if (o[i] < -h[i] || o[i] > h[i]) return false;
        } else {
            double ta = (-h[i] - o[i]) / d[i];
            double tb = (h[i] - o[i]) / d[i];
            if (ta > tb) std::swap(ta, tb);
            t0 = std::max(t0, ta);
            t1 = std::min(t1, tb);
            if (t0 > t1) return false;
        }
    }
    return true;
}

}  // namespace

Track Track::load(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("track: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("track: top level must be an object");

    reject_unknown_fields(j, {"name", "walls", "centerline", "start", "finish_s", "half_width"},
                          "");

    Track t;
    const json& name = require_field(j, "name");
    if (!name.is_string()) throw ParseError("track: field \"name\" must be a string");
    t.name_ = name.get<std::string>();

    const json& walls = require_field(j, "walls");
    if (!walls.is_array()) throw ParseError("track: field \"walls\" must be an array");
    for (std::size_t i = 0; i < walls.size(); ++i) {
        const json& w = walls[i];
        if (!w.is_array() || w.size() != 2)
            throw ParseError("track: walls[" + std::to_string(i) + "] must be two [x, y] points");
        Segment seg{parse_point(w[0], "walls"), parse_point(w[1], "walls")};
        if (seg.a == seg.b)
            throw ValidationError("track: walls[" + std::to_string(i) + "] has zero length");
        t.walls_.push_back(seg);
    }
    if (t.walls_.empty()) throw ValidationError("track: walls must be non-empty");

    const json& centerline = require_field(j, "centerline");
    if (!centerline.is_array() || centerline.size() < 2)
        throw ValidationError("track: centerline needs at least 2 points");
    t.cumulative_s_.push_back(0.0);
    for (std::size_t i = 0; i < centerline.size(); ++i) {
        Vec2 p = parse_point(centerline[i], "centerline");
        if (i > 0) {
            const double step = (p - t.centerline_.back()).norm();
            if (step <= 0.0)
                throw ValidationError("track: duplicate consecutive centerline points at index " +
                                      std::to_string(i));
            t.cumulative_s_.push_back(t.cumulative_s_.back() + step);
        }
        t.centerline_.push_back(p);
    }

    const json& start = require_field(j, "start");
    if (!start.is_object()) throw ParseError("track: field \"start\" must be an object");
    reject_unknown_fields(start, {"pos", "yaw"}, "start.");
    t.start_pos_ = parse_point(require_field(start, "pos"), "start.pos");
    t.start_yaw_ = require_number(require_field(start, "yaw"), "start.yaw");

    t.finish_s_ = require_number(require_field(j, "finish_s"), "finish_s");
    if (t.finish_s_ <= 0.0) throw ValidationError("track: finish_s must be positive");
    if (t.finish_s_ > t.cumulative_s_.back())
        throw ValidationError("track: finish_s exceeds centerline length");

    t.half_width_ = require_number(require_field(j, "half_width"), "half_width");
    if (t.half_width_ <= 0.0) throw ValidationError("track: half_width must be positive");

    t.canonical_json_ = j.dump();
    t.build_index();
    return t;
}

Track Track::load_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read track file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return load(buf.str());
}

void Track::build_index() {
    double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
    double max_x = -min_x, max_y = -min_y;
    for (const Segment& w : walls_) {
        min_x = std::min({min_x, w.a.x, w.b.x});
        min_y = std::min({min_y, w.a.y, w.b.y});
        max_x = std::max({max_x, w.a.x, w.b.x});
        max_y = std::max({max_y, w.a.y, w.b.y});
    }
    grid_min_x_ = min_x - kBinEps;
    grid_min_y_ = min_y - kBinEps;
    nx_ = std::max(1, static_cast<int>(std::ceil((max_x - grid_min_x_ + kBinEps) / kCellSize)));
    ny_ = std::max(1, static_cast<int>(std::ceil((max_y - grid_min_y_ + kBinEps) / kCellSize)));
    cells_.assign(static_cast<std::size_t>(nx_) * ny_, {});

    for (std::uint32_t i = 0; i < walls_.size(); ++i) {
        const Segment& w = walls_[i];
        int ix0, iy0, ix1, iy1;
        cell_range(std::min(w.a.x, w.b.x) - kBinEps, std::min(w.a.y, w.b.y) - kBinEps,
                   std::max(w.a.x, w.b.x) + kBinEps, std::max(w.a.y, w.b.y) + kBinEps, ix0, iy0,
                   ix1, iy1);
        for (int iy = iy0; iy <= iy1; ++iy)
            for (int ix = ix0; ix <= ix1; ++ix)
                cells_[static_cast<std::size_t>(iy) * nx_ + ix].push_back(i);
    }
}

void Track::cell_range(double lo_x, double lo_y, double hi_x, double hi_y, int& ix0, int& iy0,
                       int& ix1, int& iy1) const {
    ix0 = std::clamp(static_cast<int>(std::floor((lo_x - grid_min_x_) / kCellSize)), 0, nx_ - 1);
    iy0 = std::clamp(static_cast<int>(std::floor((lo_y - grid_min_y_) / kCellSize)), 0, ny_ - 1);
    ix1 = std::clamp(static_cast<int>(std::floor((hi_x - grid_min_x_) / kCellSize)), 0, nx_ - 1);
    iy1 = std::clamp(static_cast<int>(std::floor((hi_y - grid_min_y_) / kCellSize)), 0, ny_ - 1);
}

bool Track::collides(const Vec2& position, double yaw, double length, double width) const {
    assert(length > 0.0 && width > 0.0);
    const double hl = 0.5 * length;
    const double hw = 0.5 * width;
    const double c = std::cos(yaw);
    const double s = std::sin(yaw);
    // world-space half extents of the oriented rectangle's AABB
    const double ex = std::abs(c) * hl + std::abs(s) * hw;
    const double ey = std::abs(s) * hl + std::abs(c) * hw;

    int ix0, iy0, ix1, iy1;
    cell_range(position.x - ex, position.y - ey, position.x + ex, position.y + ey, ix0, iy0, ix1,
               iy1);
    for (int iy = iy0; iy <= iy1; ++iy) {
        for (int ix = ix0; ix <= ix1; ++ix) {
            for (std::uint32_t idx : cell(ix, iy)) {
                const Segment& w = walls_[idx];
                // into the rectangle's local frame (rotate by -yaw)
                const Vec2 pa = (w.a - position).rotated(-yaw);
                const Vec2 pb = (w.b - position).rotated(-yaw);
                if (segment_hits_box(pa, pb, hl, hw)) return true;
            }
        }
    }
    return false;
}

CoursePose Track::course_pose(const Vec2& position) const {
    double best_d2 = std::numeric_limits<double>::infinity();
    CoursePose out;
    for (std::size_t i = 0; i + 1 < centerline_.size(); ++i) {
        const Vec2 a = centerline_[i];
        const Vec2 e = centerline_[i + 1] - a;
        const double len = cumulative_s_[i + 1] - cumulative_s_[i];
        const double u = std::clamp((position - a).dot(e) / (len * len), 0.0, 1.0);
        const Vec2 foot = a + e * u;
        const double d2 = (position - foot).norm_sq();
        if (d2 < best_d2) {  // strict: equidistant segments resolve to lower s
            best_d2 = d2;
            out.tangent = e * (1.0 / len);
            out.s = cumulative_s_[i] + u * len;
            out.lateral_offset = out.tangent.cross(position - foot);
        }
    }
    return out;
}

std::optional<double> Track::raycast(const Vec2& origin, const Vec2& direction,
                                     double max_range) const {
    assert(std::abs(direction.norm() - 1.0) < 1e-9);
    assert(max_range > 0.0);

    // Clip the ray against the grid bounds; walls only exist inside.
    const double gx1 = grid_min_x_ + nx_ * kCellSize;
    const double gy1 = grid_min_y_ + ny_ * kCellSize;
    double t0 = 0.0, t1 = max_range;
    const double o[2] = {origin.x, origin.y};
    const double d[2] = {direction.x, direction.y};
    const double lo[2] = {grid_min_x_, grid_min_y_};
    const double hi[2] = {gx1, gy1};
    for (int i = 0; i < 2; ++i) {
        if (std::abs(d[i]) < 1e-15) {
            if (o[i] < lo[i] || o[i] > hi[i]) return std::nullopt;
        } else {
            double ta = (lo[i] - o[i]) / d[i];
            double tb = (hi[i] - o[i]) / d[i];
            if (ta > tb) std::swap(ta, tb);
            t0 = std::max(t0, ta);
            t1 = std::min(t1, tb);
            if (t0 > t1) return std::nullopt;
        }
    }

    // Amanatides-Woo traversal from the entry point.
    const Vec2 entry = origin + direction * t0;
    int ix = std::clamp(static_cast<int>(std::floor((entry.x - grid_min_x_) / kCellSize)), 0,
                        nx_ - 1);
    int iy = std::clamp(static_cast<int>(std::floor((entry.y - grid_min_y_) / kCellSize)), 0,
                        ny_ - 1);
    const int step_x = direction.x > 0.0 ? 1 : (direction.x < 0.0 ? -1 : 0);
    const int step_y = direction.y > 0.0 ? 1 : (direction.y < 0.0 ? -1 : 0);
    const double inf = std::numeric_limits<double>::infinity();
    const double t_delta_x = step_x != 0 ? kCellSize / std::abs(direction.x) : inf;
    const double t_delta_y = step_y != 0 ? kCellSize / std::abs(direction.y) : inf;
    double t_max_x = inf, t_max_y = inf;
    if (step_x != 0) {
        const double edge = grid_min_x_ + (ix + (step_x > 0 ? 1 : 0)) * kCellSize;
        t_max_x = (edge - origin.x) / direction.x;
    }
    if (step_y != 0) {
        const double edge = grid_min_y_ + (iy + (step_y > 0 ? 1 : 0)) * kCellSize;
        t_max_y = (edge - origin.y) / direction.y;
    }

    double best = inf;
    while (true) {
        for (std::uint32_t idx : cell(ix, iy)) {
            if (auto t = ray_segment_intersect(origin, direction, walls_[idx]); t && *t < best)
                best = *t;
        }
        const double t_exit = std::min(t_max_x, t_max_y);
        if (best <= t_exit || t_exit > t1) break;
        if (t_max_x < t_max_y) {
            ix += step_x;
            if (ix < 0 || ix >= nx_) break;
            t_max_x += t_delta_x;
        } else {
            iy += step_y;
            if (iy < 0 || iy >= ny_) break;
            t_max_y += t_delta_y;
        }
    }
    if (best <= max_range) return best;
    return std::nullopt;
}

}  // namespace neuroevo
