#include "neuroevo/brain.hpp"

#include <cassert>
#include <cmath>

#include "neuroevo/error.hpp"

namespace neuroevo {

std::vector<int> Topology::layer_sizes() const {
    std::vector<int> sizes;
    sizes.reserve(hidden.size() + 2);
    sizes.push_back(input_size);
    sizes.insert(sizes.end(), hidden.begin(), hidden.end());
    sizes.push_back(output_size);
    return sizes;
}

std::size_t Topology::genome_length() const {
    std::size_t n = 0;
    const auto sizes = layer_sizes();
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l)
        n += static_cast<std::size_t>(sizes[l]) * sizes[l + 1] + sizes[l + 1];
    return n;
}

void Topology::validate() const {
    if (input_size < 3) throw ValidationError("net: input_size must be at least 3");
    for (int w : hidden)
        if (w < 1) throw ValidationError("net: hidden layer widths must be at least 1");
}

WeightRef locate_weight(const Topology& topology, std::size_t index) {
    const auto sizes = topology.layer_sizes();
    std::size_t offset = 0;
    for (int l = 0; l + 1 < static_cast<int>(sizes.size()); ++l) {
        const std::size_t fan_in = sizes[l];
        const std::size_t fan_out = sizes[l + 1];
        const std::size_t matrix = fan_in * fan_out;
        if (index < offset + matrix) {
            const std::size_t local = index - offset;
            return {l, static_cast<int>(local / fan_in), static_cast<int>(local % fan_in)};
        }
        if (index < offset + matrix + fan_out)
            return {l, static_cast<int>(index - offset - matrix), -1};
        offset += matrix + fan_out;
    }
    throw ValidationError("net: weight index out of range");
}

Genome random_genome(const Topology& topology, RngStream& rng) {
    topology.validate();
    Genome g;
    g.topology = topology;
    const std::size_t n = topology.genome_length();
    g.weights.reserve(n);
    for (std::size_t i = 0; i < n; ++i) g.weights.push_back(rng.uniform(-1.0, 1.0));
    return g;
}

RawControls forward(const Genome& genome, const SensorReading& reading) {
    const auto sizes = genome.topology.layer_sizes();
    if (static_cast<int>(reading.distances.size()) + 2 != sizes.front())
        throw ValidationError("net: sensor reading size does not match topology input size");
    assert(genome.weights.size() == genome.topology.genome_length());

    std::vector<double> activations;
    activations.reserve(sizes.front());
    activations.insert(activations.end(), reading.distances.begin(), reading.distances.end());
    activations.push_back(reading.speed_norm);
    activations.push_back(reading.slip_norm);

    std::vector<double> next;
    std::size_t offset = 0;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        const std::size_t fan_in = sizes[l];
        const std::size_t fan_out = sizes[l + 1];
        const double* weights = genome.weights.data() + offset;
        const double* biases = weights + fan_in * fan_out;
        next.assign(fan_out, 0.0);
        for (std::size_t r = 0; r < fan_out; ++r) {
            double sum = biases[r];
            const double* row = weights + r * fan_in;
            for (std::size_t c = 0; c < fan_in; ++c) sum += row[c] * activations[c];
            next[r] = std::tanh(sum);
        }
        activations.swap(next);
        offset += fan_in * fan_out + fan_out;
    }
    return {activations[0], activations[1], activations[2]};
}

}  // namespace neuroevo
