#include "dice/error.hpp"

namespace dice {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::LexError: return "LEX_ERROR";
        case ErrorCode::SymbolTooLong: return "SYMBOL_TOO_LONG";
        case ErrorCode::IntegerOverflow: return "INTEGER_OVERFLOW";
        case ErrorCode::ParseError: return "PARSE_ERROR";
        case ErrorCode::EmptyExpression: return "EMPTY_EXPRESSION";
        case ErrorCode::NegativeSides: return "NEGATIVE_SIDES";
        case ErrorCode::ZeroSides: return "ZERO_SIDES";
        case ErrorCode::MissingSides: return "MISSING_SIDES";
        case ErrorCode::NegativeKeepCount: return "NEGATIVE_KEEP_COUNT";
        case ErrorCode::ZeroKeepCount: return "ZERO_KEEP_COUNT";
        case ErrorCode::MixedFaces: return "MIXED_FACES";
        case ErrorCode::EmptyRange: return "EMPTY_RANGE";
        case ErrorCode::FaceListTooLarge: return "FACE_LIST_TOO_LARGE";
        case ErrorCode::PoolTooLarge: return "POOL_TOO_LARGE";
        case ErrorCode::SymbolicOrdering: return "SYMBOLIC_ORDERING";
        case ErrorCode::TypeError: return "TYPE_ERROR";
        case ErrorCode::DivisionByZero: return "DIVISION_BY_ZERO";
        case ErrorCode::UndefinedMacro: return "UNDEFINED_MACRO";
        case ErrorCode::MacroDepthExceeded: return "MACRO_DEPTH_EXCEEDED";
        case ErrorCode::EvaluationBudgetExceeded: return "EVALUATION_BUDGET_EXCEEDED";
        case ErrorCode::ScriptExhausted: return "SCRIPT_EXHAUSTED";
        case ErrorCode::StateSpaceTooLarge: return "STATE_SPACE_TOO_LARGE";
    }
    return "UNKNOWN";
}

bool is_limit_error(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::FaceListTooLarge:
        case ErrorCode::PoolTooLarge:
        case ErrorCode::MacroDepthExceeded:
        case ErrorCode::EvaluationBudgetExceeded:
        case ErrorCode::ScriptExhausted:
        case ErrorCode::StateSpaceTooLarge:
            return true;
        default:
            return false;
    }
}

}  // namespace dice
