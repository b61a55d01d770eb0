#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

namespace neuroevo {

/// Shortest decimal representation that parses back to the identical double.
inline std::string format_double(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

/// FNV-1a 64-bit, used to fingerprint the effective config + track pair.
inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace neuroevo
