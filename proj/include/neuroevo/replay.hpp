#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "neuroevo/sim.hpp"

namespace neuroevo {

/// Binary replay: run provenance (seed + config/track fingerprint), the best
/// genome of every generation, and the control trace of the final best
/// episode. Little-endian, fixed-width fields; doubles are raw IEEE-754 bits
/// so re-simulation can be compared bit-exactly.
struct ReplayData {
    static constexpr std::uint32_t kMagic = 0x4f56454e;  // "NEVO"
    static constexpr std::uint32_t kVersion = 1;

    std::uint64_t seed{0};
    std::uint64_t config_hash{0};
    std::string config_json;  // canonical effective config (for re-simulation)
    std::vector<std::vector<double>> best_genomes;  // one per generation, flat weights
    std::vector<Controls> controls;                 // final best episode, per frame
    double score{0.0};
    Outcome outcome{Outcome::TimedOut};
    double final_s{0.0};
};

void write_replay(const std::filesystem::path& path, const ReplayData& data);

/// Throws ParseError on bad magic, version mismatch or truncation.
ReplayData read_replay(const std::filesystem::path& path);

}  // namespace neuroevo
