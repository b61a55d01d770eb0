#pragma once

#include <algorithm>
#include <cmath>

#include "neuroevo/geometry.hpp"

namespace neuroevo {

constexpr double kGravity = 9.81;  // m/s^2

enum class Layout { FF, FR };

/// Collision footprint, an oriented rectangle around the vehicle center.
struct Footprint {
    double length{4.5};
    double width{1.8};
};

/// Planar bicycle-model parameters. Defaults come from `default_params`:
/// the FF set has a positive understeer gradient, the FR set a negative one.
struct VehicleParams {
    Layout layout{Layout::FF};
    double mass{1200.0};                       // kg
    double yaw_inertia{1900.0};                // kg m^2
    double lf{1.0};                            // CoG to front axle, m
    double lr{1.6};                            // CoG to rear axle, m
    double cornering_stiffness_front{70000.0};  // N/rad
    double cornering_stiffness_rear{90000.0};   // N/rad
    double friction_coeff{1.0};
    double max_drive_force{6000.0};   // N
    double max_brake_force{9000.0};   // N
    double max_steer{0.61};           // rad
    double drag_coeff{2.4};           // N s^2/m^2
    double rolling_resist{10.0};      // N s/m
    double max_speed{50.0};           // m/s, sensor normalization constant
    Footprint footprint{};

    double wheelbase() const { return lf + lr; }
    double front_axle_load() const { return mass * kGravity * lr / wheelbase(); }
    double rear_axle_load() const { return mass * kGravity * lf / wheelbase(); }

    /// K = (m/L)(lr/Cf - lf/Cr); positive means understeer.
    double understeer_gradient() const {
        return mass / wheelbase() *
               (lr / cornering_stiffness_front - lf / cornering_stiffness_rear);
    }

    /// Throws ValidationError if any magnitude is out of range.
    void validate() const;
};

VehicleParams default_params(Layout layout);

/// Planar rigid-body state. Velocities are body-frame: vx along the heading,
/// vy to the left.
struct VehicleState {
    Vec2 position{};
    double yaw{0.0};
    double vx{0.0};
    double vy{0.0};
    double yaw_rate{0.0};

    double speed() const { return std::sqrt(vx * vx + vy * vy); }
    Vec2 heading() const { return unit_from_angle(yaw); }
    Vec2 world_velocity() const { return Vec2{vx, vy}.rotated(yaw); }
};

/// Driver commands, clamped to range on construction.
struct Controls {
    double throttle{0.0};  // [0, 1]
    double brake{0.0};     // [0, 1]
    double steer{0.0};     // [-1, 1], scaled by max_steer

    Controls() = default;
    Controls(double throttle_, double brake_, double steer_)
        : throttle(std::clamp(throttle_, 0.0, 1.0)),
          brake(std::clamp(brake_, 0.0, 1.0)),
          steer(std::clamp(steer_, -1.0, 1.0)) {}
};

/// Unsigned angle in [0, pi] between the velocity vector and the heading;
/// 0 below 0.05 m/s where the direction of travel is undefined.
double slip_angle(const VehicleState& state);

/// Per-axle forces for one step, exposed so tests can check the saturation
/// clamp. Lateral values are in the tire frame, longitudinal in the body
/// frame before rotation by the steering angle.
struct AxleForces {
    double front_lateral{0.0};
    double rear_lateral{0.0};
    double front_longitudinal{0.0};
    double rear_longitudinal{0.0};
    double resistance{0.0};  // drag + rolling, opposing vx
};

AxleForces tire_forces(const VehicleState& state, const Controls& controls,
                       const VehicleParams& params);

/// One fixed-step semi-implicit Euler update of the dynamic bicycle model.
/// dt must lie in (0, 0.05].
VehicleState step(const VehicleState& state, const Controls& controls,
                  const VehicleParams& params, double dt);

}  // namespace neuroevo
