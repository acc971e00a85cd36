#pragma once

#include <string_view>

#include <json.hpp>

#include "dice/error.hpp"
#include "dice/evaluator.hpp"

namespace dice {

/// {"groups": [...], "records": [...], "warnings": [...]}. Numeric groups are
/// integers, symbolic groups arrays of strings. Each record carries its pool
/// index, die index, face history and status.
nlohmann::json result_to_json(const RollResult& result);

/// {"error": {"code": "NEGATIVE_SIDES", "message": "...", "span": [begin, end]}}
nlohmann::json error_to_json(const DiceError& error);

/// Parses and evaluates `source` in `session`, returning either document.
nlohmann::json roll_to_json(Evaluator& session, std::string_view source, RandomSource& rng,
                            ParseOptions options = {});

/// Compact serialization; invalid UTF-8 from user input is replaced, never thrown.
std::string to_text(const nlohmann::json& doc);

}  // namespace dice
