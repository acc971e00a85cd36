#include "dice/rng.hpp"

#include <limits>
#include <string>

#include "dice/error.hpp"

namespace dice {

std::uint64_t SeededSource::next_index(std::uint64_t n) {
    if (n <= 1) return 0;
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    // Accept draws below the largest multiple of n that fits in 2^64.
    const std::uint64_t rejection_floor = kMax - (kMax % n + 1) % n;
    while (true) {
        const std::uint64_t draw = engine_();
        if (draw <= rejection_floor) return draw % n;
    }
}

std::uint64_t ScriptedSource::next_index(std::uint64_t n) {
    if (queue_.empty()) throw DiceError(ErrorCode::ScriptExhausted, "scripted source exhausted");
    const std::uint64_t index = queue_.front();
    queue_.pop_front();
    if (index >= n) {
        throw DiceError(ErrorCode::ScriptExhausted,
                        "scripted index " + std::to_string(index) + " out of range for " + std::to_string(n) + " faces");
    }
    return index;
}

std::unique_ptr<RandomSource> seeded_source(std::uint64_t seed) {
    return std::make_unique<SeededSource>(seed);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept {
    std::uint64_t z = base + (stream + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace dice
