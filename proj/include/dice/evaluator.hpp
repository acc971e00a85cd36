#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dice/ast.hpp"
#include "dice/limits.hpp"
#include "dice/parser.hpp"
#include "dice/pool.hpp"
#include "dice/rng.hpp"

namespace dice {

/// Symbols shown by a collapsed symbolic pool, in roll order.
using Symbols = std::vector<std::string>;

/// One result group: a number, or the symbols of a symbolic pool.
using Value = std::variant<std::int64_t, Symbols>;
using ValueVector = std::vector<Value>;

std::string value_to_string(const Value& value);
/// Groups joined with ',' ("2,6"); multi-symbol groups are braced.
std::string values_to_string(const ValueVector& values);

struct RollResult {
    ValueVector values;
    /// Every pool rolled during evaluation, in evaluation order.
    std::vector<Pool> pools;
    std::vector<std::string> warnings;
};

/// Named expression bodies, stored unevaluated. Copies share the bodies.
class MacroTable {
public:
    /// Returns true when an existing definition was replaced.
    bool define(const std::string& name, ExprPtr body);
    ExprPtr lookup(std::string_view name) const;
    bool contains(std::string_view name) const { return lookup(name) != nullptr; }
    std::size_t size() const noexcept { return entries_.size(); }
    const std::map<std::string, ExprPtr, std::less<>>& entries() const noexcept { return entries_; }

private:
    std::map<std::string, ExprPtr, std::less<>> entries_;
};

/// Stores `body` under `name` and reports whether it overwrote a definition.
bool define_macro(MacroTable& table, const std::string& name, ExprPtr body);

/// Loads a macro file: one "#NAME = expr" per line; blank lines are skipped.
/// Errors are rethrown with the 1-based line number in the message.
void load_macros(MacroTable& table, std::string_view text, ParseOptions options = {});

/// Text of the bundled macro pack (D66, fate, coin, poker, chess dice...).
std::string_view builtin_macro_source() noexcept;
MacroTable builtin_macros();

/// Element-wise math; the shorter operand is padded with the operator's
/// identity. '/' rounds toward negative infinity and '\' toward positive.
ValueVector binary_math(MathOp op, const ValueVector& lhs, const ValueVector& rhs);
ValueVector negate(const ValueVector& values);

std::int64_t divide_down(std::int64_t a, std::int64_t b);
std::int64_t divide_up(std::int64_t a, std::int64_t b);

/// Resolves statements left to right. Macro definitions update `macros`
/// and contribute no groups.
RollResult evaluate(const RollExpression& expr, MacroTable& macros, RandomSource& rng, const Limits& limits = {});

/// A session: one macro table reused across evaluations.
class Evaluator {
public:
    explicit Evaluator(Limits limits = {}, MacroTable macros = {}) : limits_(limits), macros_(std::move(macros)) {}

    RollResult evaluate(const RollExpression& expr, RandomSource& rng) {
        return dice::evaluate(expr, macros_, rng, limits_);
    }
    RollResult roll(std::string_view source, RandomSource& rng, ParseOptions options = {}) {
        return evaluate(parse(source, options), rng);
    }

    MacroTable& macros() noexcept { return macros_; }
    const MacroTable& macros() const noexcept { return macros_; }
    const Limits& limits() const noexcept { return limits_; }

private:
    Limits limits_;
    MacroTable macros_;
};

}  // namespace dice
