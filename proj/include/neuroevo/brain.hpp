#pragma once

#include <cstddef>
#include <vector>

#include "neuroevo/rng.hpp"
#include "neuroevo/sensors.hpp"
#include "neuroevo/vehicle.hpp"

namespace neuroevo {

/// Fixed feed-forward topology: input layer (ray count + speed + slip),
/// dense tanh hidden layers, 3 tanh outputs (throttle, brake, steer).
struct Topology {
    int input_size{14};
    std::vector<int> hidden{12, 8};
    static constexpr int output_size = 3;

    bool operator==(const Topology&) const = default;

    /// [input, hidden..., output]
    std::vector<int> layer_sizes() const;

    /// Total weight count: sum over layers of fan_in*fan_out + fan_out.
    std::size_t genome_length() const;

    void validate() const;
};

/// Flat weight vector, layer-major; within a layer the weight matrix is
/// row-major (rows = output neurons) with the bias vector appended.
struct Genome {
    Topology topology;
    std::vector<double> weights;
};

/// Position of a flat weight index: col == -1 marks a bias entry.
struct WeightRef {
    int layer;
    int row;
    int col;

    bool is_bias() const { return col < 0; }
    bool operator==(const WeightRef&) const = default;
};

WeightRef locate_weight(const Topology& topology, std::size_t index);

/// Fresh genome with every weight uniform on [-1, 1], consuming exactly
/// genome_length() draws in index order.
Genome random_genome(const Topology& topology, RngStream& rng);

/// Raw network outputs, each in (-1, 1).
struct RawControls {
    double throttle_raw{0.0};
    double brake_raw{0.0};
    double steer_raw{0.0};
};

/// Dense forward pass; inputs ordered distances..., speed_norm, slip_norm.
RawControls forward(const Genome& genome, const SensorReading& reading);

/// throttle = max(raw, 0), brake = max(raw, 0), steer passes through.
inline Controls to_controls(const RawControls& raw) {
    return Controls{std::max(raw.throttle_raw, 0.0), std::max(raw.brake_raw, 0.0),
                    raw.steer_raw};
}

}  // namespace neuroevo
