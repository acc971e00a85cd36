#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dice {

/// Byte offsets into the source text, half-open.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;

    friend bool operator==(const Span&, const Span&) = default;
};

enum class ErrorCode {
    LexError,
    SymbolTooLong,
    IntegerOverflow,
    ParseError,
    EmptyExpression,
    NegativeSides,
    ZeroSides,
    MissingSides,
    NegativeKeepCount,
    ZeroKeepCount,
    MixedFaces,
    EmptyRange,
    FaceListTooLarge,
    PoolTooLarge,
    SymbolicOrdering,
    TypeError,
    DivisionByZero,
    UndefinedMacro,
    MacroDepthExceeded,
    EvaluationBudgetExceeded,
    ScriptExhausted,
    StateSpaceTooLarge,
};

/// Stable upper-snake name used in JSON output and the C interface.
std::string_view error_code_name(ErrorCode code) noexcept;

/// Resource-guard errors (as opposed to mistakes in the expression text).
bool is_limit_error(ErrorCode code) noexcept;

class DiceError : public std::runtime_error {
public:
    DiceError(ErrorCode code, std::string message, Span span = {})
        : std::runtime_error(std::move(message)), code_(code), span_(span) {}

    ErrorCode code() const noexcept { return code_; }
    const Span& span() const noexcept { return span_; }

private:
    ErrorCode code_;
    Span span_;
};

}  // namespace dice
