#include "dice/c_api.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <random>
#include <string>

#include "dice/evaluator.hpp"
#include "dice/result_json.hpp"

struct dice_session {
    dice::Evaluator evaluator;
};

namespace {

char* to_c_string(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (out) std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

char* failure(std::string_view code, std::string_view message) {
    nlohmann::json doc = {{"error", {{"code", code}, {"message", message}, {"span", {0, 0}}}}};
    return to_c_string(dice::to_text(doc));
}

template <class Fn>
char* guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const dice::DiceError& e) {
        return to_c_string(dice::to_text(dice::error_to_json(e)));
    } catch (const std::bad_alloc&) {
        return failure("OUT_OF_MEMORY", "allocation failed");
    } catch (const std::exception& e) {
        return failure("INTERNAL_ERROR", e.what());
    } catch (...) {
        return failure("INTERNAL_ERROR", "unknown failure");
    }
}

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace

extern "C" {

dice_session* dice_session_create(int load_builtin_macros) {
    try {
        return new dice_session{dice::Evaluator(dice::limits_from_environment(),
                                                load_builtin_macros ? dice::builtin_macros() : dice::MacroTable{})};
    } catch (...) {
        return nullptr;
    }
}

void dice_session_destroy(dice_session* session) {
    delete session;
}

char* dice_session_load_macros(dice_session* session, const char* macro_text) {
    if (!session || !macro_text) return failure("INVALID_ARGUMENT", "null session or macro text");
    return guarded([&]() -> char* {
        dice::load_macros(session->evaluator.macros(), macro_text);
        return nullptr;
    });
}

char* dice_session_roll(dice_session* session, const char* expression, uint64_t seed, int has_seed) {
    if (!session || !expression) return failure("INVALID_ARGUMENT", "null session or expression");
    return guarded([&] {
        dice::SeededSource rng(has_seed ? seed : entropy_seed());
        return to_c_string(dice::to_text(dice::roll_to_json(session->evaluator, expression, rng)));
    });
}

char* dice_session_roll_scripted(dice_session* session, const char* expression, const uint64_t* indices,
                                 size_t count) {
    if (!session || !expression || (!indices && count)) {
        return failure("INVALID_ARGUMENT", "null session, expression or indices");
    }
    return guarded([&] {
        dice::ScriptedSource rng(std::vector<std::uint64_t>(indices, indices + count));
        return to_c_string(dice::to_text(dice::roll_to_json(session->evaluator, expression, rng)));
    });
}

char* dice_roll(const char* expression, uint64_t seed, int has_seed, const char* macro_text) {
    if (!expression) return failure("INVALID_ARGUMENT", "null expression");
    return guarded([&] {
        dice_session session{dice::Evaluator(dice::limits_from_environment(), dice::builtin_macros())};
        if (macro_text) dice::load_macros(session.evaluator.macros(), macro_text);
        dice::SeededSource rng(has_seed ? seed : entropy_seed());
        return to_c_string(dice::to_text(dice::roll_to_json(session.evaluator, expression, rng)));
    });
}

void dice_free_string(char* text) {
    std::free(text);
}

const char* dice_version(void) {
    return "1.0.0";
}

}  // extern "C"
