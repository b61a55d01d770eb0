#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "neuroevo/brain.hpp"
#include "neuroevo/evolution.hpp"
#include "neuroevo/geometry.hpp"
#include "neuroevo/rng.hpp"
#include "neuroevo/sensors.hpp"
#include "neuroevo/sim.hpp"
#include "neuroevo/track.hpp"
#include "neuroevo/vehicle.hpp"

namespace py = pybind11;
using namespace neuroevo;

PYBIND11_MODULE(_neuroevo, m) {
    m.doc() = "deterministic neuroevolution driving simulator core";

    py::class_<Vec2>(m, "Vec2")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
        .def_readwrite("x", &Vec2::x)
        .def_readwrite("y", &Vec2::y)
        .def("norm", &Vec2::norm)
        .def("dot", &Vec2::dot)
        .def("__repr__", [](const Vec2& v) {
            return "Vec2(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ")";
        });

    py::class_<Segment>(m, "Segment")
        .def(py::init([](const Vec2& a, const Vec2& b) { return Segment{a, b}; }),
             py::arg("a"), py::arg("b"))
        .def_readwrite("a", &Segment::a)
        .def_readwrite("b", &Segment::b);

    m.def("ray_segment_intersect", &ray_segment_intersect, py::arg("origin"),
          py::arg("direction"), py::arg("segment"),
          "Distance along the unit ray to the segment, or None");
    m.def("normalize_angle", &normalize_angle, py::arg("angle"));

    py::class_<CoursePose>(m, "CoursePose")
        .def_readonly("s", &CoursePose::s)
        .def_readonly("tangent", &CoursePose::tangent)
        .def_readonly("lateral_offset", &CoursePose::lateral_offset);

    py::class_<Track>(m, "Track")
        .def_static("load", &Track::load, py::arg("json_text"))
        .def_static("load_file",
                    [](const std::string& path) { return Track::load_file(path); },
                    py::arg("path"))
        .def_property_readonly("name", &Track::name)
        .def_property_readonly("finish_s", &Track::finish_s)
        .def_property_readonly("half_width", &Track::half_width)
        .def_property_readonly("centerline_length", &Track::centerline_length)
        .def_property_readonly("start_position", &Track::start_position)
        .def_property_readonly("start_yaw", &Track::start_yaw)
        .def("collides", &Track::collides, py::arg("position"), py::arg("yaw"),
             py::arg("length"), py::arg("width"))
        .def("course_pose", &Track::course_pose, py::arg("position"))
        .def("raycast", &Track::raycast, py::arg("origin"), py::arg("direction"),
             py::arg("max_range"));

    py::enum_<Layout>(m, "Layout").value("FF", Layout::FF).value("FR", Layout::FR);

    py::class_<Footprint>(m, "Footprint")
        .def(py::init<>())
        .def_readwrite("length", &Footprint::length)
        .def_readwrite("width", &Footprint::width);

    py::class_<VehicleParams>(m, "VehicleParams")
        .def(py::init<>())
        .def_readwrite("layout", &VehicleParams::layout)
        .def_readwrite("mass", &VehicleParams::mass)
        .def_readwrite("yaw_inertia", &VehicleParams::yaw_inertia)
        .def_readwrite("lf", &VehicleParams::lf)
        .def_readwrite("lr", &VehicleParams::lr)
        .def_readwrite("cornering_stiffness_front", &VehicleParams::cornering_stiffness_front)
        .def_readwrite("cornering_stiffness_rear", &VehicleParams::cornering_stiffness_rear)
        .def_readwrite("friction_coeff", &VehicleParams::friction_coeff)
        .def_readwrite("max_drive_force", &VehicleParams::max_drive_force)
        .def_readwrite("max_brake_force", &VehicleParams::max_brake_force)
        .def_readwrite("max_steer", &VehicleParams::max_steer)
        .def_readwrite("drag_coeff", &VehicleParams::drag_coeff)
        .def_readwrite("rolling_resist", &VehicleParams::rolling_resist)
        .def_readwrite("max_speed", &VehicleParams::max_speed)
        .def_readwrite("footprint", &VehicleParams::footprint)
        .def("understeer_gradient", &VehicleParams::understeer_gradient)
        .def("validate", &VehicleParams::validate);

    m.def("default_params", &default_params, py::arg("layout"));

    py::class_<VehicleState>(m, "VehicleState")
        .def(py::init<>())
        .def_readwrite("position", &VehicleState::position)
        .def_readwrite("yaw", &VehicleState::yaw)
        .def_readwrite("vx", &VehicleState::vx)
        .def_readwrite("vy", &VehicleState::vy)
        .def_readwrite("yaw_rate", &VehicleState::yaw_rate)
        .def("speed", &VehicleState::speed);

    py::class_<Controls>(m, "Controls")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("throttle"), py::arg("brake"),
             py::arg("steer"))
        .def_readonly("throttle", &Controls::throttle)
        .def_readonly("brake", &Controls::brake)
        .def_readonly("steer", &Controls::steer);

    m.def("slip_angle", &slip_angle, py::arg("state"));
    m.def("step", &step, py::arg("state"), py::arg("controls"), py::arg("params"),
          py::arg("dt"), "One semi-implicit Euler update of the bicycle model");

    py::class_<SensorConfig>(m, "SensorConfig")
        .def(py::init<>())
        .def_static("evenly_spaced", &SensorConfig::evenly_spaced, py::arg("count"),
                    py::arg("max_range") = 50.0)
        .def_readwrite("ray_angles", &SensorConfig::ray_angles)
        .def_readwrite("max_range", &SensorConfig::max_range)
        .def("ray_count", &SensorConfig::ray_count);

    py::class_<SensorReading>(m, "SensorReading")
        .def(py::init<>())
        .def_readwrite("distances", &SensorReading::distances)
        .def_readwrite("speed_norm", &SensorReading::speed_norm)
        .def_readwrite("slip_norm", &SensorReading::slip_norm);

    m.def("sense", &sense, py::arg("state"), py::arg("track"), py::arg("params"),
          py::arg("config"));

    py::class_<Topology>(m, "Topology")
        .def(py::init<>())
        .def_readwrite("input_size", &Topology::input_size)
        .def_readwrite("hidden", &Topology::hidden)
        .def("genome_length", &Topology::genome_length);

    py::class_<Genome>(m, "Genome")
        .def(py::init<>())
        .def_readwrite("topology", &Genome::topology)
        .def_readwrite("weights", &Genome::weights);

    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("fork", &RngStream::fork, py::arg("salt"))
        .def("next_u64", &RngStream::next_u64)
        .def("uniform01", &RngStream::uniform01)
        .def("uniform", &RngStream::uniform, py::arg("lo"), py::arg("hi"))
        .def("bernoulli", &RngStream::bernoulli, py::arg("p"));

    m.def("random_genome", &random_genome, py::arg("topology"), py::arg("rng"));

    py::class_<RawControls>(m, "RawControls")
        .def_readonly("throttle_raw", &RawControls::throttle_raw)
        .def_readonly("brake_raw", &RawControls::brake_raw)
        .def_readonly("steer_raw", &RawControls::steer_raw);

    m.def("forward", &forward, py::arg("genome"), py::arg("reading"));
    m.def("to_controls", &to_controls, py::arg("raw"));

    py::class_<GaConfig>(m, "GaConfig")
        .def(py::init<>())
        .def_readwrite("population", &GaConfig::population)
        .def_readwrite("top_fraction", &GaConfig::top_fraction)
        .def_readwrite("crossover_rate", &GaConfig::crossover_rate)
        .def_readwrite("mutation_rate", &GaConfig::mutation_rate)
        .def_readwrite("mutation_range", &GaConfig::mutation_range)
        .def_readwrite("elitism", &GaConfig::elitism);

    m.def("compute_fitness", [](const std::vector<double>& scores) {
        return compute_fitness(scores);
    }, py::arg("scores"), "Relative fitness: scores normalized to sum to 1");
    m.def("select_top", [](const std::vector<double>& fitness, int n) {
        return select_top(fitness, n);
    }, py::arg("fitness"), py::arg("n"));
    m.def("crossover", [](const std::vector<Genome>& parents, const std::vector<double>& fitness) {
        return crossover(parents, fitness);
    }, py::arg("parents"), py::arg("parent_fitness"));
    m.def("mutate", &mutate, py::arg("genome"), py::arg("config"), py::arg("rng"));
    m.def("next_generation",
          [](const std::vector<Genome>& population, const std::vector<double>& scores,
             const GaConfig& cfg, RngStream& rng) {
              return next_generation(population, scores, cfg, rng);
          },
          py::arg("population"), py::arg("scores"), py::arg("config"), py::arg("rng"));

    py::class_<EpisodeConfig>(m, "EpisodeConfig")
        .def(py::init<>())
        .def_readwrite("dt", &EpisodeConfig::dt)
        .def_readwrite("max_time", &EpisodeConfig::max_time)
        .def_readwrite("stall_window", &EpisodeConfig::stall_window)
        .def_readwrite("stall_min_progress", &EpisodeConfig::stall_min_progress)
        .def_readwrite("angle_threshold", &EpisodeConfig::angle_threshold);

    py::enum_<Outcome>(m, "Outcome")
        .value("Completed", Outcome::Completed)
        .value("Crashed", Outcome::Crashed)
        .value("Stalled", Outcome::Stalled)
        .value("TimedOut", Outcome::TimedOut);

    py::class_<EpisodeResult>(m, "EpisodeResult")
        .def_readonly("score", &EpisodeResult::score)
        .def_readonly("outcome", &EpisodeResult::outcome)
        .def_readonly("frames", &EpisodeResult::frames)
        .def_readonly("final_s", &EpisodeResult::final_s);

    m.def("frame_score", &frame_score, py::arg("state"), py::arg("course"), py::arg("dt"),
          py::arg("angle_threshold"));
    m.def("run_episode", &run_episode, py::arg("genome"), py::arg("track"), py::arg("params"),
          py::arg("sensors"), py::arg("episode"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<GenerationStats>(m, "GenerationStats")
        .def_readonly("generation", &GenerationStats::generation)
        .def_readonly("best_score", &GenerationStats::best_score)
        .def_readonly("mean_score", &GenerationStats::mean_score)
        .def_readonly("median_score", &GenerationStats::median_score)
        .def_readonly("completions", &GenerationStats::completions)
        .def_readonly("crashes", &GenerationStats::crashes)
        .def_readonly("stalls", &GenerationStats::stalls)
        .def_readonly("timeouts", &GenerationStats::timeouts)
        .def_readonly("best_genome_id", &GenerationStats::best_genome_id);

    py::class_<EvolutionConfig>(m, "EvolutionConfig")
        .def(py::init<>())
        .def_readwrite("ga", &EvolutionConfig::ga)
        .def_readwrite("physics", &EvolutionConfig::physics)
        .def_readwrite("rays", &EvolutionConfig::rays)
        .def_readwrite("net", &EvolutionConfig::net)
        .def_readwrite("episode", &EvolutionConfig::episode)
        .def_readwrite("seed", &EvolutionConfig::seed)
        .def_readwrite("max_generations", &EvolutionConfig::max_generations);

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("stats", &RunResult::stats)
        .def_readonly("final_population", &RunResult::final_population)
        .def_readonly("generations_to_success", &RunResult::generations_to_success)
        .def("success", &RunResult::success);

    m.def("run_evolution", &run_evolution, py::arg("track"), py::arg("config"),
          py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
}
