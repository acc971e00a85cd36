#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "dice/error.hpp"

namespace dice {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// ---- face specifications as written ------------------------------------

struct StandardSides {
    std::int64_t sides = 0;
    friend bool operator==(const StandardSides&, const StandardSides&) = default;
};

/// One entry of an explicit numeric face list; `lo == hi` unless written as a range.
struct NumericItem {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    bool is_range = false;
    friend bool operator==(const NumericItem&, const NumericItem&) = default;
};

struct NumericList {
    std::vector<NumericItem> items;
    friend bool operator==(const NumericList&, const NumericList&) = default;
};

struct SymbolicList {
    std::vector<std::string> symbols;
    friend bool operator==(const SymbolicList&, const SymbolicList&) = default;
};

struct PercentSides {
    friend bool operator==(const PercentSides&, const PercentSides&) = default;
};
struct CoinFaces {
    friend bool operator==(const CoinFaces&, const CoinFaces&) = default;
};
struct FateFaces {
    friend bool operator==(const FateFaces&, const FateFaces&) = default;
};

using FaceSpec = std::variant<StandardSides, NumericList, SymbolicList, PercentSides, CoinFaces, FateFaces>;

// ---- dice operations ----------------------------------------------------

enum class Comparator { Eq, Ne, Lt, Gt, Le, Ge };

struct Condition {
    Comparator comparator = Comparator::Eq;
    /// Integer literal, or a symbol for symbolic pools.
    std::variant<std::int64_t, std::string> threshold;
    friend bool operator==(const Condition&, const Condition&) = default;
};

struct KeepDrop {
    enum class Which { Keep, Drop };
    enum class End { High, Low };
    Which which = Which::Keep;
    End end = End::High;
    std::int64_t amount = 1;
    bool amount_written = false;
    friend bool operator==(const KeepDrop&, const KeepDrop&) = default;
};

struct Filter {
    Condition condition;
    friend bool operator==(const Filter&, const Filter&) = default;
};

struct Reroll {
    Condition condition;
    bool repeated = false;
    friend bool operator==(const Reroll&, const Reroll&) = default;
};

enum class ExplodeMode { Plain, Once, Penetrating };

struct Explode {
    ExplodeMode mode = ExplodeMode::Plain;
    friend bool operator==(const Explode&, const Explode&) = default;
};

struct Count {
    friend bool operator==(const Count&, const Count&) = default;
};
struct Unique {
    friend bool operator==(const Unique&, const Unique&) = default;
};

using DiceOp = std::variant<KeepDrop, Filter, Reroll, Explode, Count, Unique>;

// ---- expression nodes ---------------------------------------------------

struct IntLiteral {
    std::int64_t value = 0;
};

struct DiceNode {
    ExprPtr count;  // null when omitted (one die)
    FaceSpec faces;
    bool sides_defaulted = false;  // "2d" accepted in lenient mode
};

struct DiceOpNode {
    ExprPtr child;
    DiceOp op;
};

enum class MathOp { Add, Sub, Mul, DivDown, DivUp };

struct BinaryMath {
    MathOp op = MathOp::Add;
    ExprPtr lhs;
    ExprPtr rhs;
};

struct UnaryNegate {
    ExprPtr child;
};

struct MacroAccess {
    std::string name;
};

/// Parenthesized expression; several items when ';' appears inside.
struct Group {
    std::vector<ExprPtr> items;
};

struct Expr {
    std::variant<IntLiteral, DiceNode, DiceOpNode, BinaryMath, UnaryNegate, MacroAccess, Group> node;
    Span span;
};

struct MacroDefinition {
    std::string name;
    ExprPtr body;
    Span span;
};

using Statement = std::variant<MacroDefinition, ExprPtr>;

struct RollExpression {
    std::vector<Statement> statements;
};

template <class Node>
ExprPtr make_expr(Node node, Span span) {
    return std::make_shared<const Expr>(Expr{std::move(node), span});
}

/// Compares two trees, ignoring source spans.
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const RollExpression& a, const RollExpression& b);

/// Emits notation that re-parses to a structurally equal tree.
std::string unparse(const Expr& expr);
std::string unparse(const RollExpression& expr);

}  // namespace dice
