#include "dice/limits.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace dice {

Limits limits_from_environment() {
    Limits limits;
    if (const char* env = std::getenv("DICE_LIMIT_L")) {
        int value = 0;
        const char* end = env + std::strlen(env);
        auto [ptr, ec] = std::from_chars(env, end, value);
        if (ec == std::errc() && ptr == end && value >= 0) limits.chain_limit = value;
    }
    return limits;
}

}  // namespace dice
