#include "neuroevo/replay.hpp"

#include <cstring>
#include <fstream>

#include "neuroevo/error.hpp"

namespace neuroevo {

namespace {

template <typename T>
void put(std::ofstream& out, T v) {
    static_assert(std::is_trivially_copyable_v<T>);
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T take(std::ifstream& in, const char* what) {
    static_assert(std::is_trivially_copyable_v<T>);
    T v;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!in) throw ParseError(std::string("replay: truncated reading ") + what);
    return v;
}

}  // namespace

void write_replay(const std::filesystem::path& path, const ReplayData& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write replay file " + path.string());

    put(out, ReplayData::kMagic);
    put(out, ReplayData::kVersion);
    put(out, data.seed);
    put(out, data.config_hash);
    put(out, static_cast<std::uint32_t>(data.config_json.size()));
    out.write(data.config_json.data(), static_cast<std::streamsize>(data.config_json.size()));

    put(out, static_cast<std::uint32_t>(data.best_genomes.size()));
    const std::uint32_t genome_len =
        data.best_genomes.empty() ? 0 : static_cast<std::uint32_t>(data.best_genomes[0].size());
    put(out, genome_len);
    for (const auto& genome : data.best_genomes)
        for (double w : genome) put(out, w);

    put(out, static_cast<std::uint32_t>(data.controls.size()));
    for (const Controls& c : data.controls) {
        put(out, c.throttle);
        put(out, c.brake);
        put(out, c.steer);
    }
    put(out, data.score);
    put(out, static_cast<std::uint8_t>(data.outcome));
    put(out, data.final_s);
    if (!out) throw IoError("failed writing replay file " + path.string());
}

ReplayData read_replay(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read replay file " + path.string());

    ReplayData data;
    if (take<std::uint32_t>(in, "magic") != ReplayData::kMagic)
        throw ParseError("replay: bad magic (not a replay file)");
    const auto version = take<std::uint32_t>(in, "version");
    if (version != ReplayData::kVersion)
        throw ParseError("replay: unsupported format version " + std::to_string(version));
    data.seed = take<std::uint64_t>(in, "seed");
    data.config_hash = take<std::uint64_t>(in, "config hash");

    const auto cfg_len = take<std::uint32_t>(in, "config length");
    data.config_json.resize(cfg_len);
    in.read(data.config_json.data(), cfg_len);
    if (!in) throw ParseError("replay: truncated reading config");

    const auto generations = take<std::uint32_t>(in, "generation count");
    const auto genome_len = take<std::uint32_t>(in, "genome length");
    data.best_genomes.resize(generations);
    for (auto& genome : data.best_genomes) {
        genome.resize(genome_len);
        for (double& w : genome) w = take<double>(in, "genome weight");
    }

    const auto frames = take<std::uint32_t>(in, "frame count");
    data.controls.reserve(frames);
    for (std::uint32_t i = 0; i < frames; ++i) {
        const double throttle = take<double>(in, "controls");
        const double brake = take<double>(in, "controls");
        const double steer = take<double>(in, "controls");
        data.controls.emplace_back(throttle, brake, steer);
    }
    data.score = take<double>(in, "score");
    const auto outcome = take<std::uint8_t>(in, "outcome");
    if (outcome > 3) throw ParseError("replay: invalid outcome tag");
    data.outcome = static_cast<Outcome>(outcome);
    data.final_s = take<double>(in, "final_s");
    return data;
}

}  // namespace neuroevo
