#pragma once

#include <span>
#include <string_view>

#include "dice/ast.hpp"
#include "dice/token.hpp"

namespace dice {

struct ParseOptions {
    /// Accept "2d" as "2d6" instead of raising MissingSides.
    bool default_missing_sides = false;
};

/// Builds the statement list from `tokens`. `source_length` positions
/// end-of-input diagnostics. Throws DiceError on the first syntax error.
RollExpression parse(std::span<const Token> tokens, std::size_t source_length, ParseOptions options = {});

/// tokenize + parse.
RollExpression parse(std::string_view source, ParseOptions options = {});

/// True for names usable after '#' and '@'.
bool is_macro_name(std::string_view name) noexcept;

}  // namespace dice
