#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace ligandmc::rng {

// SplitMix64 finalizer; full-avalanche 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += kGamma;
        return mix64(state_);
    }

private:
    std::uint64_t state_;
};

// xoshiro256++ (Blackman & Vigna). Satisfies UniformRandomBitGenerator, so it
// plugs into the <random> distributions.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& word : state_) word = sm.next();
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
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

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_;
};

// Splittable stream key. child(i) derives statistically independent substreams
// for any index (trial, receptor, sweep row, ...) without sharing mutable
// state, so parallel consumers stay reproducible regardless of scheduling.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : key_(mix64(seed + kGamma)) {}

    Stream child(std::uint64_t index) const {
        return Stream(FromKey{}, mix64(key_ + (index + 1) * kGamma));
    }

    Xoshiro256pp engine() const { return Xoshiro256pp(key_); }

    std::uint64_t key() const { return key_; }

private:
    struct FromKey {};
    Stream(FromKey, std::uint64_t key) : key_(key) {}

    std::uint64_t key_;
};

}  // namespace ligandmc::rng
