#pragma once

#include <vector>

#include "neuroevo/track.hpp"
#include "neuroevo/vehicle.hpp"

namespace neuroevo {

/// Ray fan configuration. Angles are radians relative to the heading,
/// strictly increasing, each in (-pi, pi].
struct SensorConfig {
    std::vector<double> ray_angles;
    double max_range{50.0};

    /// `count` rays evenly spaced over the full circle, one of them straight
    /// ahead, sorted ascending.
    static SensorConfig evenly_spaced(int count, double max_range = 50.0);

    int ray_count() const { return static_cast<int>(ray_angles.size()); }
    void validate() const;
};

/// Network input vector: per-ray wall distances plus speed and slip angle,
/// all normalized to [0, 1].
struct SensorReading {
    std::vector<double> distances;
    double speed_norm{0.0};
    double slip_norm{0.0};
};

/// Casts the ray fan from the vehicle center and normalizes. Rays that reach
/// max_range without a hit read 1.0.
SensorReading sense(const VehicleState& state, const Track& track, const VehicleParams& params,
                    const SensorConfig& cfg);

}  // namespace neuroevo
