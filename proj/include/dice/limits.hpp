#pragma once

#include <cstdint>

namespace dice {

struct Limits {
    /// Maximum rerolls or explosions chained on a single die.
    int chain_limit = 20;
    /// Maximum dice in one pool, and across one evaluation.
    std::int64_t max_pool = 10'000'000;
    /// Maximum nesting of macro accesses.
    int macro_depth = 16;
    /// Maximum expression nodes visited in one evaluation.
    std::int64_t max_steps = 1'000'000;
};

/// Defaults, with the chain limit overridden by DICE_LIMIT_L when set to a
/// valid non-negative integer.
Limits limits_from_environment();

}  // namespace dice
