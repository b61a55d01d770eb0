#include "neuroevo/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "neuroevo/error.hpp"

namespace neuroevo {

int GaConfig::parent_count() const {
    return std::max(1, static_cast<int>(std::ceil(top_fraction * population)));
}

void GaConfig::validate() const {
    if (population < 1) throw ValidationError("ga: population must be at least 1");
    if (!(top_fraction > 0.0 && top_fraction <= 1.0))
        throw ValidationError("ga: top_fraction must lie in (0, 1]");
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
        throw ValidationError("ga: crossover_rate must lie in [0, 1]");
    if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0))
        throw ValidationError("ga: mutation_rate must lie in [0, 1]");
    if (!(mutation_range > 0.0) || !std::isfinite(mutation_range))
        throw ValidationError("ga: mutation_range must be positive");
}

std::vector<double> compute_fitness(std::span<const double> scores) {
    double total = 0.0;
    for (double s : scores) {
        if (s < 0.0 || !std::isfinite(s))
            throw ValidationError("fitness: scores must be non-negative and finite");
        total += s;
    }
    std::vector<double> fitness(scores.size());
    if (total == 0.0) {
        std::fill(fitness.begin(), fitness.end(), 1.0 / static_cast<double>(scores.size()));
    } else {
        for (std::size_t i = 0; i < scores.size(); ++i) fitness[i] = scores[i] / total;
    }
    return fitness;
}

std::vector<int> select_top(std::span<const double> fitness, int n) {
    if (n < 1 || n > static_cast<int>(fitness.size()))
        throw ValidationError("select_top: n must lie in [1, population]");
    std::vector<int> order(fitness.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fitness[a] > fitness[b]; });
    order.resize(n);
    return order;
}

Genome crossover(std::span<const Genome> parents, std::span<const double> parent_fitness) {
    if (parents.empty()) throw ValidationError("crossover: needs at least one parent");
    double total = 0.0;
    for (double f : parent_fitness) {
        if (f < 0.0) throw ValidationError("crossover: fitness must be non-negative");
        total += f;
    }
    if (!(total > 0.0)) throw ValidationError("crossover: parent fitness sums to zero");
    for (const Genome& p : parents)
        if (!(p.topology == parents.front().topology))
            throw ValidationError("crossover: parent topologies differ");

    Genome child;
    child.topology = parents.front().topology;
    child.weights.assign(parents.front().weights.size(), 0.0);
    for (std::size_t i = 0; i < parents.size(); ++i) {
        const double share = parent_fitness[i] / total;
        const auto& w = parents[i].weights;
        for (std::size_t j = 0; j < w.size(); ++j) child.weights[j] += w[j] * share;
    }
    return child;
}

Genome mutate(const Genome& genome, const GaConfig& cfg, RngStream& rng) {
    Genome out = genome;
    for (double& w : out.weights)
        if (rng.bernoulli(cfg.mutation_rate))
            w = rng.uniform(-cfg.mutation_range, cfg.mutation_range);
    return out;
}

std::vector<Genome> next_generation(std::span<const Genome> population,
                                    std::span<const double> scores, const GaConfig& cfg,
                                    RngStream& rng) {
    if (population.size() != scores.size())
        throw ValidationError("ga: population and score sizes differ");
    cfg.validate();

    const int n = std::max(
        1, static_cast<int>(std::ceil(cfg.top_fraction * static_cast<double>(population.size()))));
    const std::vector<double> fitness = compute_fitness(scores);
    const std::vector<int> selected = select_top(fitness, n);

    std::vector<Genome> parents;
    std::vector<double> parent_fitness;
    parents.reserve(selected.size());
    for (int idx : selected) {
        parents.push_back(population[idx]);
        parent_fitness.push_back(fitness[idx]);
    }
    const Genome base = crossover(parents, parent_fitness);
    const Genome& fittest = parents.front();

    std::vector<Genome> children;
    children.reserve(population.size());
    for (std::size_t i = 0; i < population.size(); ++i) {
        if (cfg.elitism && i == 0) {
            children.push_back(base);
            continue;
        }
        RngStream child_rng = rng.fork(static_cast<std::uint64_t>(i));
        Genome child = base;
        for (std::size_t j = 0; j < child.weights.size(); ++j)
            if (!child_rng.bernoulli(cfg.crossover_rate)) child.weights[j] = fittest.weights[j];
        children.push_back(mutate(child, cfg, child_rng));
    }
    return children;
}

}  // namespace neuroevo
