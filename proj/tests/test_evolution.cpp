#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "neuroevo/error.hpp"
#include "neuroevo/evolution.hpp"

using namespace neuroevo;

namespace {

Genome make_genome(std::vector<double> weights) {
    Genome g;
    g.topology.input_size = 3;
    g.topology.hidden = {};
    // ignore the length bookkeeping for unit-level operator tests
    g.weights = std::move(weights);
    return g;
}

// two-sided Kolmogorov-Smirnov statistic against uniform(-1, 1)
double ks_statistic_uniform(std::vector<double> sample) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double cdf = (sample[i] + 1.0) / 2.0;
        d = std::max(d, std::abs((i + 1) / n - cdf));
        d = std::max(d, std::abs(cdf - i / n));
    }
    return d;
}

}  // namespace

TEST_CASE("compute_fitness is the score-share arithmetic") {
    const auto f = compute_fitness(std::vector<double>{30, 20, 50});
    REQUIRE(f.size() == 3);
    CHECK(f[0] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(f[1] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(f[2] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("compute_fitness degenerate all-zero case is uniform") {
    const auto f = compute_fitness(std::vector<double>{0, 0, 0, 0});
    for (double v : f) CHECK(v == 0.25);
}

TEST_CASE("compute_fitness singleton and errors") {
    CHECK(compute_fitness(std::vector<double>{7})[0] == 1.0);
    CHECK_THROWS_AS(compute_fitness(std::vector<double>{3, -1}), ValidationError);
}

TEST_CASE("compute_fitness sums to one and is scale invariant") {
    RngStream rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> scores(1 + static_cast<int>(rng.uniform(0, 40)));
        for (double& s : scores) s = rng.uniform(0, 100);
        const auto f = compute_fitness(scores);
        double sum = 0.0;
        for (double v : f) sum += v;
        CHECK(std::abs(sum - 1.0) < 1e-9);

        std::vector<double> scaled = scores;
        for (double& s : scaled) s *= 37.5;
        const auto g = compute_fitness(scaled);
        for (std::size_t i = 0; i < f.size(); ++i)
            CHECK(f[i] == doctest::Approx(g[i]).epsilon(1e-12));
        CHECK(select_top(f, static_cast<int>(f.size())) ==
              select_top(g, static_cast<int>(g.size())));
    }
}

TEST_CASE("select_top ordering and ties") {
    CHECK(select_top(std::vector<double>{0.3, 0.2, 0.5}, 2) == std::vector<int>{2, 0});
    CHECK(select_top(std::vector<double>{0.25, 0.25, 0.25, 0.25}, 2) == std::vector<int>{0, 1});
    const auto all = select_top(std::vector<double>{0.1, 0.4, 0.2, 0.3}, 4);
    CHECK(all == std::vector<int>{1, 3, 2, 0});
    CHECK_THROWS_AS(select_top(std::vector<double>{0.5, 0.5}, 3), ValidationError);
    CHECK_THROWS_AS(select_top(std::vector<double>{0.5, 0.5}, 0), ValidationError);
}

TEST_CASE("crossover is the renormalized weighted average") {
    const std::vector<Genome> parents = {make_genome({1.0}), make_genome({-1.0})};
    SUBCASE("already-normalized fitness") {
        const Genome child = crossover(parents, std::vector<double>{0.6, 0.4});
        CHECK(child.weights[0] == doctest::Approx(0.2).epsilon(1e-12));
    }
    SUBCASE("unnormalized fitness renormalizes over the parents") {
        const Genome child = crossover(parents, std::vector<double>{3.0, 2.0});
        CHECK(child.weights[0] == doctest::Approx(0.2).epsilon(1e-12));
    }
}

TEST_CASE("crossover identity and symmetry") {
    const std::vector<Genome> one = {make_genome({0.5, -0.25, 0.75})};
    const Genome copy = crossover(one, std::vector<double>{0.3});
    CHECK(copy.weights == one[0].weights);

    const std::vector<Genome> two = {make_genome({1.0, 0.0}), make_genome({0.0, 1.0})};
    const Genome mid = crossover(two, std::vector<double>{0.5, 0.5});
    CHECK(mid.weights[0] == doctest::Approx(0.5));
    CHECK(mid.weights[1] == doctest::Approx(0.5));
}

TEST_CASE("crossover error paths") {
    std::vector<Genome> parents = {make_genome({1.0}), make_genome({2.0})};
    CHECK_THROWS_AS(crossover(parents, std::vector<double>{0.0, 0.0}), ValidationError);
    parents[1].topology.input_size = 7;
    CHECK_THROWS_AS(crossover(parents, std::vector<double>{0.5, 0.5}), ValidationError);
    CHECK_THROWS_AS(crossover(std::vector<Genome>{}, std::vector<double>{}), ValidationError);
}

TEST_CASE("crossover output is a convex combination per index") {
    RngStream rng(22);
    for (int trial = 0; trial < 100; ++trial) {
        const int n_parents = 1 + static_cast<int>(rng.uniform(0, 6));
        const int n_weights = 1 + static_cast<int>(rng.uniform(0, 20));
        std::vector<Genome> parents;
        std::vector<double> fitness;
        for (int i = 0; i < n_parents; ++i) {
            std::vector<double> w(n_weights);
            for (double& v : w) v = rng.uniform(-2, 2);
            parents.push_back(make_genome(std::move(w)));
            fitness.push_back(rng.uniform(0.01, 1.0));
        }
        const Genome child = crossover(parents, fitness);
        for (int j = 0; j < n_weights; ++j) {
            double lo = parents[0].weights[j], hi = lo;
            for (const Genome& p : parents) {
                lo = std::min(lo, p.weights[j]);
                hi = std::max(hi, p.weights[j]);
            }
            CHECK(child.weights[j] >= lo - 1e-12);
            CHECK(child.weights[j] <= hi + 1e-12);
        }
    }
}

TEST_CASE("mutate at rate zero is the identity") {
    GaConfig cfg;
    cfg.mutation_rate = 0.0;
    RngStream rng(33);
    const Genome g = make_genome({0.1, -0.2, 0.3, 0.4});
    const Genome m = mutate(g, cfg, rng);
    CHECK(m.weights == g.weights);
}

TEST_CASE("mutate consumes one Bernoulli per weight plus one value per hit") {
    GaConfig cfg;
    cfg.mutation_rate = 0.5;
    cfg.mutation_range = 0.75;
    std::vector<double> weights(200);
    for (std::size_t i = 0; i < weights.size(); ++i) weights[i] = 0.001 * i;
    const Genome g = make_genome(weights);

    RngStream impl_rng(44);
    const Genome m = mutate(g, cfg, impl_rng);

    RngStream twin(44);
    std::vector<double> expected = g.weights;
    for (double& w : expected)
        if (twin.bernoulli(cfg.mutation_rate)) w = twin.uniform(-cfg.mutation_range, cfg.mutation_range);
    CHECK(m.weights == expected);
}

TEST_CASE("mutation statistics: binomial count and uniform replacement") {
    GaConfig cfg;
    cfg.mutation_rate = 0.2;
    std::vector<double> zeros(100000, 5.0);  // sentinel outside [-1, 1]
    const Genome g = make_genome(zeros);
    RngStream rng(55);
    const Genome m = mutate(g, cfg, rng);

    std::vector<double> replaced;
    for (std::size_t i = 0; i < m.weights.size(); ++i)
        if (m.weights[i] != 5.0) replaced.push_back(m.weights[i]);

    const double n = 100000.0, p = 0.2;
    const double sigma = std::sqrt(n * p * (1 - p));
    CHECK(std::abs(static_cast<double>(replaced.size()) - n * p) <= 3.0 * sigma);

    for (double v : replaced) {
        REQUIRE(v >= -1.0);
        REQUIRE(v <= 1.0);
    }
    // Kolmogorov-Smirnov vs uniform(-1,1) at alpha = 0.01
    const double d = ks_statistic_uniform(replaced);
    const double critical = 1.628 / std::sqrt(static_cast<double>(replaced.size()));
    CHECK(d < critical);
}

TEST_CASE("mutate at rate one redraws every weight uniformly") {
    GaConfig cfg;
    cfg.mutation_rate = 1.0;
    const Genome g = make_genome(std::vector<double>(100000, 5.0));
    RngStream rng(66);
    const Genome m = mutate(g, cfg, rng);
    std::vector<double> values = m.weights;
    for (double v : values) REQUIRE(std::abs(v) <= 1.0);
    const double d = ks_statistic_uniform(values);
    CHECK(d < 1.628 / std::sqrt(100000.0));
}

TEST_CASE("next_generation collapse case: crossover 1, mutation 0, elitism") {
    GaConfig cfg;
    cfg.population = 8;
    cfg.crossover_rate = 1.0;
    cfg.mutation_rate = 0.0;
    cfg.elitism = true;
    std::vector<Genome> pop;
    std::vector<double> scores;
    RngStream seed_rng(77);
    for (int i = 0; i < 8; ++i) {
        std::vector<double> w(10);
        for (double& v : w) v = seed_rng.uniform(-1, 1);
        pop.push_back(make_genome(std::move(w)));
        scores.push_back(seed_rng.uniform(0, 10));
    }
    RngStream rng(78);
    const auto children = next_generation(pop, scores, cfg, rng);
    REQUIRE(children.size() == 8);
    for (const Genome& c : children) CHECK(c.weights == children[0].weights);
}

TEST_CASE("next_generation with a single parent copies it as the base") {
    GaConfig cfg;
    cfg.population = 10;
    cfg.top_fraction = 0.1;  // exactly one parent
    cfg.crossover_rate = 1.0;
    cfg.mutation_rate = 0.0;
    cfg.elitism = true;
    std::vector<Genome> pop;
    std::vector<double> scores;
    for (int i = 0; i < 10; ++i) {
        pop.push_back(make_genome({static_cast<double>(i), 1.0 - i}));
        scores.push_back(i == 4 ? 50.0 : 1.0);
    }
    RngStream rng(88);
    const auto children = next_generation(pop, scores, cfg, rng);
    CHECK(children[0].weights == pop[4].weights);  // elite = base = the only parent
    for (const Genome& c : children) CHECK(c.weights == pop[4].weights);
}

TEST_CASE("next_generation children stay in the parent hull unless mutated") {
    GaConfig cfg;
    cfg.population = 20;
    cfg.top_fraction = 0.25;
    cfg.crossover_rate = 0.6;
    cfg.elitism = false;

    RngStream seed_rng(99);
    std::vector<Genome> pop;
    std::vector<double> scores;
    for (int i = 0; i < 20; ++i) {
        std::vector<double> w(30);
        for (double& v : w) v = seed_rng.uniform(-1, 1);
        pop.push_back(make_genome(std::move(w)));
        scores.push_back(seed_rng.uniform(0, 10));
    }
    const auto fitness = compute_fitness(scores);
    const auto top = select_top(fitness, 5);

    SUBCASE("mutation off: strict convexity per index") {
        cfg.mutation_rate = 0.0;
        RngStream rng(100);
        const auto children = next_generation(pop, scores, cfg, rng);
        for (const Genome& c : children) {
            for (std::size_t j = 0; j < c.weights.size(); ++j) {
                double lo = 1e9, hi = -1e9;
                for (int idx : top) {
                    lo = std::min(lo, pop[idx].weights[j]);
                    hi = std::max(hi, pop[idx].weights[j]);
                }
                CHECK(c.weights[j] >= lo - 1e-12);
                CHECK(c.weights[j] <= hi + 1e-12);
            }
        }
    }
    SUBCASE("mutation on with tiny range: escapes are bounded by the range") {
        cfg.mutation_rate = 0.3;
        cfg.mutation_range = 1e-3;
        RngStream rng(101);
        const auto children = next_generation(pop, scores, cfg, rng);
        for (const Genome& c : children) {
            for (std::size_t j = 0; j < c.weights.size(); ++j) {
                double lo = 1e9, hi = -1e9;
                for (int idx : top) {
                    lo = std::min(lo, pop[idx].weights[j]);
                    hi = std::max(hi, pop[idx].weights[j]);
                }
                const bool in_hull = c.weights[j] >= lo - 1e-12 && c.weights[j] <= hi + 1e-12;
                const bool mutated_value = std::abs(c.weights[j]) <= 1e-3;
                CHECK((in_hull || mutated_value));
            }
        }
    }
}

TEST_CASE("next_generation is deterministic for a fixed stream key") {
    GaConfig cfg;
    cfg.population = 12;
    RngStream seed_rng(111);
    std::vector<Genome> pop;
    std::vector<double> scores;
    for (int i = 0; i < 12; ++i) {
        std::vector<double> w(25);
        for (double& v : w) v = seed_rng.uniform(-1, 1);
        pop.push_back(make_genome(std::move(w)));
        scores.push_back(seed_rng.uniform(0, 10));
    }
    RngStream a(123), b(123);
    const auto first = next_generation(pop, scores, cfg, a);
    const auto second = next_generation(pop, scores, cfg, b);
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) CHECK(first[i].weights == second[i].weights);
}

TEST_CASE("ga config validation") {
    GaConfig cfg;
    cfg.population = 0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = GaConfig{};
    cfg.top_fraction = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = GaConfig{};
    cfg.mutation_rate = 1.5;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = GaConfig{};
    CHECK(cfg.parent_count() == 5);  // ceil(0.1 * 50)
}
