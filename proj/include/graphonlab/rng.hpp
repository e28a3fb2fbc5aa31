#pragma once

#include <cstdint>
#include <string_view>

// Counter-based generator: every draw is a pure function of (seed, tag, index),
// so streams can be extended or consumed out of order without changing values.
namespace graphonlab::rng {

constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t tag(std::string_view name) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr std::uint64_t bits(std::uint64_t seed, std::uint64_t purpose, std::uint64_t index) {
    return mix64(mix64(mix64(seed) ^ purpose) ^ index);
}

// Uniform on [0,1) with 53 random bits.
constexpr double uniform(std::uint64_t seed, std::uint64_t purpose, std::uint64_t index) {
    return static_cast<double>(bits(seed, purpose, index) >> 11) * 0x1.0p-53;
}

constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t purpose, std::uint64_t index) {
    return bits(seed, purpose, index);
}

// Sequential view over one (seed, tag) stream.
class Stream {
public:
    constexpr Stream(std::uint64_t seed, std::uint64_t purpose) : seed_(seed), tag_(purpose) {}
    constexpr double uniform() { return rng::uniform(seed_, tag_, next_++); }
    constexpr std::uint64_t bits() { return rng::bits(seed_, tag_, next_++); }
    // Uniform integer in [0, n), n > 0.
    constexpr std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
    }

private:
    std::uint64_t seed_;
    std::uint64_t tag_;
    std::uint64_t next_ = 0;
};

// Unordered pair index independent of n, for i < j.
constexpr std::uint64_t pair_index(std::uint64_t i, std::uint64_t j) { return j * (j - 1) / 2 + i; }

}  // namespace graphonlab::rng
