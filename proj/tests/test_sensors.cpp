#include <doctest.h>

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "neuroevo/error.hpp"
#include "neuroevo/sensors.hpp"

using namespace neuroevo;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

const char* kCorridorJson = R"({
  "name": "mini",
  "walls": [[[-10,-5],[60,-5]], [[-10,5],[60,5]], [[-10,-5],[-10,5]], [[60,-5],[60,5]]],
  "centerline": [[0,0],[50,0]],
  "start": {"pos": [0,0], "yaw": 0},
  "finish_s": 45,
  "half_width": 5
})";

int index_of_angle(const SensorConfig& cfg, double angle) {
    for (int i = 0; i < cfg.ray_count(); ++i)
        if (std::abs(cfg.ray_angles[i] - angle) < 1e-12) return i;
    return -1;
}

}  // namespace

TEST_CASE("evenly_spaced covers the full circle") {
    const SensorConfig cfg = SensorConfig::evenly_spaced(12);
    REQUIRE(cfg.ray_count() == 12);
    CHECK_NOTHROW(cfg.validate());
    for (int i = 1; i < 12; ++i) CHECK(cfg.ray_angles[i] > cfg.ray_angles[i - 1]);
    CHECK(index_of_angle(cfg, 0.0) >= 0);        // one ray straight ahead
    CHECK(std::abs(cfg.ray_angles.back() - kPi) < 1e-12);
}

TEST_CASE("sensor config validation") {
    SensorConfig cfg;
    cfg.ray_angles = {0.5, 0.5};
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg.ray_angles = {4.0};
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg.ray_angles = {0.0};
    cfg.max_range = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("corridor distances normalize against max_range") {
    const Track track = Track::load(kCorridorJson);
    const VehicleParams params = default_params(Layout::FF);
    const SensorConfig cfg = SensorConfig::evenly_spaced(12, 50.0);
    VehicleState state;
    state.position = {20.0, 0.0};

    const SensorReading r = sense(state, track, params, cfg);
    REQUIRE(static_cast<int>(r.distances.size()) == 12);
    const int up = index_of_angle(cfg, kPi / 2);
    const int down = index_of_angle(cfg, -kPi / 2);
    REQUIRE(up >= 0);
    REQUIRE(down >= 0);
    CHECK(r.distances[up] == doctest::Approx(0.1));    // 5 m of 50
    CHECK(r.distances[down] == doctest::Approx(0.1));
    // straight ahead the end wall is 40 m away
    CHECK(r.distances[index_of_angle(cfg, 0.0)] == doctest::Approx(40.0 / 50.0));
    CHECK(r.speed_norm == 0.0);
    CHECK(r.slip_norm == 0.0);
    for (double d : r.distances) {
        CHECK(d >= 0.0);
        CHECK(d <= 1.0);
    }
}

TEST_CASE("rays with no hit in range read 1.0") {
    const Track track = Track::load(kCorridorJson);
    const VehicleParams params = default_params(Layout::FF);
    const SensorConfig cfg = SensorConfig::evenly_spaced(4, 30.0);
    VehicleState state;
    state.position = {20.0, 0.0};
    const SensorReading r = sense(state, track, params, cfg);
    CHECK(r.distances[index_of_angle(cfg, 0.0)] == 1.0);   // end wall beyond 30 m
    CHECK(r.distances[index_of_angle(cfg, kPi)] == 1.0);   // back wall beyond 30 m
}

TEST_CASE("speed and slip normalization") {
    const Track track = Track::load(kCorridorJson);
    const VehicleParams params = default_params(Layout::FF);
    const SensorConfig cfg = SensorConfig::evenly_spaced(4, 50.0);
    VehicleState state;
    state.position = {20.0, 0.0};
    state.vx = 25.0;
    SensorReading r = sense(state, track, params, cfg);
    CHECK(r.speed_norm == doctest::Approx(0.5));
    state.vx = 500.0;  // beyond max_speed clamps
    r = sense(state, track, params, cfg);
    CHECK(r.speed_norm == 1.0);
    state.vx = 10.0;
    state.vy = 10.0;
    r = sense(state, track, params, cfg);
    CHECK(r.slip_norm == doctest::Approx((kPi / 4) / kPi));
}

TEST_CASE("readings are invariant under rigid transforms") {
    const Track track = Track::load(kCorridorJson);
    const double rot = -0.6;
    const Vec2 shift{-3.0, 9.0};
    json j = json::parse(kCorridorJson);
    auto xform = [&](double x, double y) {
        const Vec2 p = Vec2{x, y}.rotated(rot) + shift;
        return json::array({p.x, p.y});
    };
    for (auto& wall : j["walls"]) {
        wall[0] = xform(wall[0][0], wall[0][1]);
        wall[1] = xform(wall[1][0], wall[1][1]);
    }
    json cl = json::array();
    for (auto& p : j["centerline"]) cl.push_back(xform(p[0], p[1]));
    j["centerline"] = cl;
    j["start"]["pos"] = xform(0, 0);
    j["start"]["yaw"] = rot;
    const Track moved = Track::load(j.dump());

    const VehicleParams params = default_params(Layout::FF);
    const SensorConfig cfg = SensorConfig::evenly_spaced(12, 50.0);
    VehicleState state;
    state.position = {20.0, 1.5};
    state.yaw = 0.3;
    state.vx = 12.0;
    state.vy = -1.0;
    VehicleState moved_state = state;
    moved_state.position = state.position.rotated(rot) + shift;
    moved_state.yaw = state.yaw + rot;

    const SensorReading a = sense(state, track, params, cfg);
    const SensorReading b = sense(moved_state, moved, params, cfg);
    for (int i = 0; i < 12; ++i) CHECK(a.distances[i] == doctest::Approx(b.distances[i]).epsilon(1e-6));
    CHECK(a.speed_norm == doctest::Approx(b.speed_norm));
    CHECK(a.slip_norm == doctest::Approx(b.slip_norm));
}

TEST_CASE("approaching a wall never increases that ray's reading") {
    const Track track = Track::load(kCorridorJson);
    const VehicleParams params = default_params(Layout::FF);
    const SensorConfig cfg = SensorConfig::evenly_spaced(12, 50.0);
    const int up = index_of_angle(cfg, kPi / 2);
    double prev = 2.0;
    for (int i = 0; i <= 40; ++i) {
        VehicleState state;
        state.position = {20.0, -4.0 + 8.0 * i / 40.0};  // slide toward the y=+5 wall
        const double d = sense(state, track, params, cfg).distances[up];
        CHECK(d <= prev + 1e-12);
        prev = d;
    }
}
