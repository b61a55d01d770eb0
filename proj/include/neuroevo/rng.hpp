#pragma once

#include <cstdint>

namespace neuroevo {

/// Counter-free deterministic random stream (xoshiro256++ seeded via
/// splitmix64). Every stream is identified by a 64-bit key; `fork` derives an
/// independent child stream from the parent's key and a salt, regardless of
/// how much the parent has been consumed. This is what makes population
/// evaluation and breeding reproducible bit-for-bit across thread counts:
/// each (generation, individual) pair owns its own keyed stream.
class RngStream {
public:
    explicit RngStream(std::uint64_t key) : key_(key) {
        std::uint64_t x = key;
        for (auto& w : state_) w = splitmix64(x);
        // xoshiro must not start from the all-zero state
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[3] = 1;
    }

    /// Independent stream derived from this stream's identity and a salt.
    [[nodiscard]] RngStream fork(std::uint64_t salt) const {
        std::uint64_t x = key_ ^ (0x9e3779b97f4a7c15ull + (salt << 1));
        return RngStream(splitmix64(x));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// One draw; true with probability p.
    bool bernoulli(double p) { return uniform01() < p; }

    std::uint64_t key() const { return key_; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t state_[4];
};

}  // namespace neuroevo
