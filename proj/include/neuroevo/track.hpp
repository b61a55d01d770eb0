#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "neuroevo/geometry.hpp"

namespace neuroevo {

/// Progress along the track centerline at the nearest point to a query.
struct CoursePose {
    double s{0.0};          ///< arc length of the nearest centerline point, meters
    Vec2 tangent{1.0, 0.0};  ///< course direction there, unit length
    double lateral_offset{0.0};  ///< signed offset, positive to the left of the tangent
};

/// Immutable environment: wall segments, an arc-length parameterized
/// centerline used for scoring, a start pose and a finish distance.
///
/// Wall queries go through a uniform spatial grid; the grid is purely an
/// accelerator and never changes results.
class Track {
public:
    /// Parses and validates the JSON track format. Throws ParseError on
    /// malformed text and ValidationError naming the violated invariant.
    static Track load(const std::string& json_text);
    static Track load_file(const std::filesystem::path& path);

    const std::string& name() const { return name_; }
    std::span<const Segment> walls() const { return walls_; }
    const std::vector<Vec2>& centerline() const { return centerline_; }
    Vec2 start_position() const { return start_pos_; }
    double start_yaw() const { return start_yaw_; }
    double finish_s() const { return finish_s_; }
    double half_width() const { return half_width_; }
    double centerline_length() const { return cumulative_s_.back(); }

    /// Canonical serialization of the file this track was loaded from
    /// (whitespace-independent); input to the experiment config hash.
    const std::string& canonical_json() const { return canonical_json_; }

    /// True iff the oriented rectangle footprint (length along heading,
    /// width across) centered at `position` intersects any wall.
    bool collides(const Vec2& position, double yaw, double length, double width) const;

    /// Nearest-point course projection. Ties between equidistant centerline
    /// segments resolve toward lower s.
    CoursePose course_pose(const Vec2& position) const;

    /// Distance to the nearest wall hit by the ray, or nullopt if none
    /// within max_range. `direction` must be unit length.
    std::optional<double> raycast(const Vec2& origin, const Vec2& direction,
                                  double max_range) const;

private:
    Track() = default;
    void build_index();
    void cell_range(double lo_x, double lo_y, double hi_x, double hi_y, int& ix0, int& iy0,
                    int& ix1, int& iy1) const;
    const std::vector<std::uint32_t>& cell(int ix, int iy) const {
        return cells_[static_cast<std::size_t>(iy) * nx_ + ix];
    }

    std::string name_;
    std::vector<Segment> walls_;
    std::vector<Vec2> centerline_;
    std::vector<double> cumulative_s_;  // arc length at each centerline point
    Vec2 start_pos_;
    double start_yaw_{0.0};
    double finish_s_{0.0};
    double half_width_{0.0};
    std::string canonical_json_;

    // uniform grid over the wall bounding box
    static constexpr double kCellSize = 5.0;
    double grid_min_x_{0.0}, grid_min_y_{0.0};
    int nx_{0}, ny_{0};
    std::vector<std::vector<std::uint32_t>> cells_;
};

}  // namespace neuroevo
