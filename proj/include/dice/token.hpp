#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dice/error.hpp"

namespace dice {

enum class TokenKind {
    Integer,
    DiceD,         // d in 2d6
    SidesPercent,  // % in d%
    CoinC,         // c as a coin die
    FateF,         // f in df
    KeepK,
    DropD,  // d in dh / dl
    HighH,
    LowL,
    RerollR,
    ExplodeBang,
    OnceO,
    PenetrateP,
    FilterF,
    CountC,
    UniqueU,
    Eq,  // ==
    Ne,  // !=
    Lt,
    Gt,
    Le,
    Ge,
    Plus,
    Minus,
    Star,
    Slash,      // rounds down
    Backslash,  // rounds up
    LBrace,
    RBrace,
    Comma,
    Range,  // ..
    Semicolon,
    Hash,
    At,
    Assign,
    MacroName,
    SymbolText,
    LParen,
    RParen,
};

std::string_view token_kind_name(TokenKind kind) noexcept;

struct Token {
    TokenKind kind;
    std::string lexeme;  // for SymbolText: the unquoted symbol
    Span span;
    std::int64_t value = 0;  // Integer only

    friend bool operator==(const Token&, const Token&) = default;
};

inline constexpr std::size_t kMaxSymbolLength = 100;

/// Splits dice notation into tokens. Whitespace between tokens is skipped.
/// Single letters are classified by context: `d` followed by h/l is a drop,
/// `f` right after a dice `d` is the fate shorthand, and `c` where a dice term
/// may begin is a coin rather than a count.
std::vector<Token> tokenize(std::string_view source);

}  // namespace dice
