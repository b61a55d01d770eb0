#include "neuroevo/sensors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "neuroevo/error.hpp"

namespace neuroevo {

SensorConfig SensorConfig::evenly_spaced(int count, double max_range) {
    if (count < 1) throw ValidationError("rays: ray_count must be at least 1");
    SensorConfig cfg;
    cfg.max_range = max_range;
    cfg.ray_angles.reserve(count);
    for (int i = 0; i < count; ++i)
        cfg.ray_angles.push_back(normalize_angle(i * 2.0 * std::numbers::pi / count));
    std::sort(cfg.ray_angles.begin(), cfg.ray_angles.end());
    cfg.validate();
    return cfg;
}

void SensorConfig::validate() const {
    if (ray_angles.empty()) throw ValidationError("rays: at least one ray required");
    if (!(max_range > 0.0)) throw ValidationError("rays: max_range must be positive");
    for (std::size_t i = 0; i < ray_angles.size(); ++i) {
        const double a = ray_angles[i];
        if (!(a > -std::numbers::pi && a <= std::numbers::pi))
            throw ValidationError("rays: ray angle out of (-pi, pi]");
        if (i > 0 && !(a > ray_angles[i - 1]))
            throw ValidationError("rays: ray angles must be strictly increasing");
    }
}

SensorReading sense(const VehicleState& state, const Track& track, const VehicleParams& params,
                    const SensorConfig& cfg) {
    SensorReading r;
    r.distances.reserve(cfg.ray_angles.size());
    for (double angle : cfg.ray_angles) {
        const Vec2 dir = unit_from_angle(state.yaw + angle);
        const auto hit = track.raycast(state.position, dir, cfg.max_range);
        r.distances.push_back(hit ? std::clamp(*hit / cfg.max_range, 0.0, 1.0) : 1.0);
    }
    r.speed_norm = std::clamp(state.speed() / params.max_speed, 0.0, 1.0);
    r.slip_norm = slip_angle(state) / std::numbers::pi;
    return r;
}

}  // namespace neuroevo
