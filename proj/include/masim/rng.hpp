#pragma once

#include <cstdint>
#include <string_view>

namespace masim::rng {

// Deterministic randomness for the whole framework. Every draw is derived
// statelessly from (seed, tag), where the tag names the consumer and round,
// e.g. "move/c1/12" or "infect/c1/i2/12". Derivation is one splitmix64 step
// over seed XOR fnv1a64(tag). Both primitives are fixed by their reference
// constants, so any reimplementation (oracles, other languages) reproduces
// the exact stream.

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

constexpr std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive(std::uint64_t seed, std::string_view tag) {
    std::uint64_t s = seed ^ fnv1a64(tag);
    return splitmix64_next(s);
}

/// Uniform double in [0, 1) from the top 53 bits.
constexpr double unit_double(std::uint64_t v) {
    return static_cast<double>(v >> 11) * 0x1.0p-53;
}

}  // namespace masim::rng
