"""End-to-end smoke tests for the compiled extension."""

import math
import os

import pytest

ne = pytest.importorskip("_neuroevo")

TRACKS = os.environ.get("NEUROEVO_TRACKS", "tracks")


def corridor():
    return ne.Track.load_file(os.path.join(TRACKS, "corridor.json"))


def test_fitness_share_arithmetic():
    assert ne.compute_fitness([30.0, 20.0, 50.0]) == pytest.approx([0.3, 0.2, 0.5])
    assert ne.compute_fitness([0.0, 0.0]) == [0.5, 0.5]
    with pytest.raises(Exception):
        ne.compute_fitness([-1.0, 2.0])


def test_selection_and_crossover():
    assert ne.select_top([0.3, 0.2, 0.5], 2) == [2, 0]
    g1, g2 = ne.Genome(), ne.Genome()
    g1.weights = [1.0]
    g2.weights = [-1.0]
    child = ne.crossover([g1, g2], [0.6, 0.4])
    assert child.weights[0] == pytest.approx(0.2)


def test_geometry_and_track():
    hit = ne.ray_segment_intersect(ne.Vec2(0, 0), ne.Vec2(1, 0),
                                   ne.Segment(ne.Vec2(5, -1), ne.Vec2(5, 1)))
    assert hit == pytest.approx(5.0)
    assert ne.normalize_angle(3 * math.pi) == pytest.approx(math.pi)

    track = corridor()
    assert track.name == "corridor"
    assert track.finish_s == 200.0
    pose = track.course_pose(ne.Vec2(30.0, 2.0))
    assert pose.s == pytest.approx(30.0)
    assert pose.lateral_offset == pytest.approx(2.0)
    assert not track.collides(ne.Vec2(20.0, 0.0), 0.0, 4.5, 1.8)
    assert track.collides(ne.Vec2(20.0, 4.5), 0.0, 4.5, 1.8)


def test_forward_pass_of_zero_genome_is_neutral():
    topo = ne.Topology()
    genome = ne.Genome()
    genome.topology = topo
    genome.weights = [0.0] * topo.genome_length()
    reading = ne.SensorReading()
    reading.distances = [0.5] * 12
    reading.speed_norm = 0.3
    reading.slip_norm = 0.0
    raw = ne.forward(genome, reading)
    assert raw.throttle_raw == 0.0 and raw.brake_raw == 0.0 and raw.steer_raw == 0.0
    controls = ne.to_controls(raw)
    assert (controls.throttle, controls.brake, controls.steer) == (0.0, 0.0, 0.0)


def test_physics_layouts_differ_in_balance():
    ff = ne.default_params(ne.Layout.FF)
    fr = ne.default_params(ne.Layout.FR)
    assert ff.understeer_gradient() > 0.0
    assert fr.understeer_gradient() < 0.0
    state = ne.VehicleState()
    nxt = ne.step(state, ne.Controls(1.0, 0.0, 0.0), ff, 1.0 / 60.0)
    assert nxt.vx > 0.0 and nxt.vy == 0.0


def test_mutation_rate_zero_is_identity():
    topo = ne.Topology()
    rng = ne.RngStream(5)
    genome = ne.random_genome(topo, rng)
    cfg = ne.GaConfig()
    cfg.mutation_rate = 0.0
    same = ne.mutate(genome, cfg, ne.RngStream(6))
    assert same.weights == genome.weights


def test_small_evolution_run_is_deterministic():
    track = corridor()
    cfg = ne.EvolutionConfig()
    cfg.seed = 7
    cfg.max_generations = 6
    cfg.ga.population = 20
    cfg.ga.crossover_rate = 0.9
    cfg.ga.mutation_rate = 0.1

    first = ne.run_evolution(track, cfg, 2)
    second = ne.run_evolution(track, cfg, 1)
    assert len(first.stats) == len(second.stats)
    for a, b in zip(first.stats, second.stats):
        assert a.best_score == b.best_score
        assert a.mean_score == b.mean_score
        assert a.completions == b.completions
    counts = first.stats[0]
    assert counts.completions + counts.crashes + counts.stalls + counts.timeouts == 20


def test_episode_outcomes():
    track = corridor()
    params = ne.default_params(ne.Layout.FF)
    rays = ne.SensorConfig.evenly_spaced(12)
    episode = ne.EpisodeConfig()
    topo = ne.Topology()

    still = ne.Genome()
    still.topology = topo
    still.weights = [0.0] * topo.genome_length()
    result = ne.run_episode(still, track, params, rays, episode)
    assert result.outcome == ne.Outcome.Stalled
    assert result.score == 0.0

    weights = [0.0] * topo.genome_length()
    weights[-3] = 2.0  # throttle bias
    driver = ne.Genome()
    driver.topology = topo
    driver.weights = weights
    result = ne.run_episode(driver, track, params, rays, episode)
    assert result.outcome == ne.Outcome.Completed
    assert result.score == pytest.approx(200.0, rel=0.02)
