#pragma once

#include <cstdint>
#include <deque>
#include <initializer_list>
#include <memory>
#include <random>
#include <vector>

namespace dice {

/// Source of uniformly chosen face indices.
class RandomSource {
public:
    virtual ~RandomSource() = default;

    /// Returns an index in [0, n). `n` must be positive.
    virtual std::uint64_t next_index(std::uint64_t n) = 0;
};

/// Default generator: std::mt19937_64 seeded with the 64-bit seed, reduced
/// to [0, n) by rejection sampling (draws at or above the largest multiple
/// of n below 2^64 are discarded). Both steps are fixed, so streams are
/// reproducible across platforms.
class SeededSource final : public RandomSource {
public:
    explicit SeededSource(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_index(std::uint64_t n) override;

private:
    std::mt19937_64 engine_;
};

/// Replays predetermined indices. Throws ScriptExhausted when it runs dry
/// or when a queued index is out of range for the requested face count.
class ScriptedSource final : public RandomSource {
public:
    ScriptedSource() = default;
    ScriptedSource(std::initializer_list<std::uint64_t> indices) : queue_(indices) {}
    explicit ScriptedSource(const std::vector<std::uint64_t>& indices) : queue_(indices.begin(), indices.end()) {}

    std::uint64_t next_index(std::uint64_t n) override;

    void push(std::uint64_t index) { queue_.push_back(index); }
    std::size_t remaining() const noexcept { return queue_.size(); }

private:
    std::deque<std::uint64_t> queue_;
};

std::unique_ptr<RandomSource> seeded_source(std::uint64_t seed);

/// Seed for the i-th independent stream derived from a base seed
/// (SplitMix64 finalizer), used to give parallel trials their own sources.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept;

}  // namespace dice
