#include "neuroevo/vehicle.hpp"

#include <cassert>

#include "neuroevo/error.hpp"

namespace neuroevo {

namespace {

// Longitudinal velocity floor inside the slip-angle atan2; regularizes the
// low-speed singularity and only affects sub-walking speeds.
constexpr double kSlipSpeedFloor = 0.5;

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// Cap the longitudinal force so the per-axle total stays inside the friction
// circle; lateral force takes priority.
double cap_longitudinal(double fx, double fy, double grip) {
    const double budget_sq = grip * grip - fy * fy;
    if (budget_sq <= 0.0) return 0.0;
    const double budget = std::sqrt(budget_sq);
    return std::clamp(fx, -budget, budget);
}

}  // namespace

void VehicleParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ValidationError(std::string("physics: ") + name + " must be positive");
    };
    positive(mass, "mass");
    positive(yaw_inertia, "yaw_inertia");
    positive(lf, "lf");
    positive(lr, "lr");
    positive(cornering_stiffness_front, "cornering_stiffness_front");
    positive(cornering_stiffness_rear, "cornering_stiffness_rear");
    positive(friction_coeff, "friction_coeff");
    positive(max_drive_force, "max_drive_force");
    positive(max_brake_force, "max_brake_force");
    positive(drag_coeff, "drag_coeff");
    positive(rolling_resist, "rolling_resist");
    positive(max_speed, "max_speed");
    positive(footprint.length, "footprint.length");
    positive(footprint.width, "footprint.width");
    if (!(max_steer > 0.0 && max_steer < std::numbers::pi / 2.0))
        throw ValidationError("physics: max_steer must lie in (0, pi/2)");
}

VehicleParams default_params(Layout layout) {
    VehicleParams p;
    p.layout = layout;
    if (layout == Layout::FR) {
        // rear-drive setup: forward CoG, stiff front tires, soft rear
        p.mass = 1300.0;
        p.yaw_inertia = 2200.0;
        p.lf = 1.35;
        p.lr = 1.25;
        p.cornering_stiffness_front = 95000.0;
        p.cornering_stiffness_rear = 70000.0;
    }
    return p;
}

double slip_angle(const VehicleState& state) {
    const double speed = state.speed();
    if (speed < 0.05) return 0.0;
    // angle between velocity and heading, invariant to frame: body-frame
    // velocity vs the +x axis
    return std::abs(std::atan2(state.vy, state.vx));
}

AxleForces tire_forces(const VehicleState& state, const Controls& controls,
                       const VehicleParams& params) {
    const double vx_eff = std::max(state.vx, kSlipSpeedFloor);
    const double steer = controls.steer * params.max_steer;
    const double alpha_front = std::atan2(state.vy + params.lf * state.yaw_rate, vx_eff) - steer;
    const double alpha_rear = std::atan2(state.vy - params.lr * state.yaw_rate, vx_eff);

    const double grip_front = params.friction_coeff * params.front_axle_load();
    const double grip_rear = params.friction_coeff * params.rear_axle_load();

    AxleForces f;
    f.front_lateral = std::clamp(-params.cornering_stiffness_front * alpha_front, -grip_front,
                                 grip_front);
    f.rear_lateral =
        std::clamp(-params.cornering_stiffness_rear * alpha_rear, -grip_rear, grip_rear);

    const double drive = controls.throttle * params.max_drive_force;
    const double brake = -sign_of(state.vx) * controls.brake * params.max_brake_force;
    double fx_front = brake * 0.6;
    double fx_rear = brake * 0.4;
    if (params.layout == Layout::FF)
        fx_front += drive;
    else
        fx_rear += drive;
    f.front_longitudinal = cap_longitudinal(fx_front, f.front_lateral, grip_front);
    f.rear_longitudinal = cap_longitudinal(fx_rear, f.rear_lateral, grip_rear);

    f.resistance = params.drag_coeff * state.vx * std::abs(state.vx) +
                   params.rolling_resist * state.vx;
    return f;
}

namespace {

VehicleState substep(const VehicleState& state, const Controls& controls,
                     const VehicleParams& params, double h) {
    const double steer = controls.steer * params.max_steer;
    const double cs = std::cos(steer);
    const double sn = std::sin(steer);
    const AxleForces f = tire_forces(state, controls, params);

    // front axle forces rotated into the body frame
    const double front_x = f.front_longitudinal * cs - f.front_lateral * sn;
    const double front_y = f.front_lateral * cs + f.front_longitudinal * sn;

    const double ax = (front_x + f.rear_longitudinal - f.resistance) / params.mass +
                      state.vy * state.yaw_rate;
    const double ay = (front_y + f.rear_lateral) / params.mass - state.vx * state.yaw_rate;
    const double yaw_accel = (params.lf * front_y - params.lr * f.rear_lateral) /
                             params.yaw_inertia;

    VehicleState next = state;
    next.vx = state.vx + ax * h;
    next.vy = state.vy + ay * h;
    next.yaw_rate = state.yaw_rate + yaw_accel * h;

    // brakes hold the car at rest instead of pushing it through zero
    if (controls.brake > 0.0 && state.vx != 0.0 && next.vx * state.vx < 0.0) {
        const AxleForces nb =
            tire_forces(state, Controls{controls.throttle, 0.0, controls.steer}, params);
        const double ax_nb =
            (nb.front_longitudinal * cs - nb.front_lateral * sn + nb.rear_longitudinal -
             nb.resistance) / params.mass + state.vy * state.yaw_rate;
        const double vx_nb = state.vx + ax_nb * h;
        next.vx = vx_nb * state.vx < 0.0 ? vx_nb : 0.0;
    }

    next.yaw = normalize_angle(state.yaw + next.yaw_rate * h);
    next.position = state.position + next.world_velocity() * h;
    return next;
}

}  // namespace

VehicleState step(const VehicleState& state, const Controls& controls,
                  const VehicleParams& params, double dt) {
    assert(dt > 0.0 && dt <= 0.05);
    assert(state.position.finite() && std::isfinite(state.yaw));
    assert(std::isfinite(state.vx) && std::isfinite(state.vy) && std::isfinite(state.yaw_rate));

    // Controls are held for the whole frame; the integrator subdivides it so
    // the 60 Hz trajectory tracks the continuous dynamics closely.
    constexpr int kSubsteps = 10;
    const double h = dt / kSubsteps;
    VehicleState s = state;
    for (int i = 0; i < kSubsteps; ++i) s = substep(s, controls, params, h);
    return s;
}

}  // namespace neuroevo
