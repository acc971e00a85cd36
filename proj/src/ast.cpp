#include "dice/ast.hpp"

#include <string_view>

namespace dice {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool equal_ptr(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    return structurally_equal(*a, *b);
}

}  // namespace

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        overloaded{
            [&](const IntLiteral& x) { return x.value == std::get<IntLiteral>(b.node).value; },
            [&](const DiceNode& x) {
                const auto& y = std::get<DiceNode>(b.node);
                return equal_ptr(x.count, y.count) && x.faces == y.faces && x.sides_defaulted == y.sides_defaulted;
            },
            [&](const DiceOpNode& x) {
                const auto& y = std::get<DiceOpNode>(b.node);
                return x.op == y.op && equal_ptr(x.child, y.child);
            },
            [&](const BinaryMath& x) {
                const auto& y = std::get<BinaryMath>(b.node);
                return x.op == y.op && equal_ptr(x.lhs, y.lhs) && equal_ptr(x.rhs, y.rhs);
            },
            [&](const UnaryNegate& x) { return equal_ptr(x.child, std::get<UnaryNegate>(b.node).child); },
            [&](const MacroAccess& x) { return x.name == std::get<MacroAccess>(b.node).name; },
            [&](const Group& x) {
                const auto& y = std::get<Group>(b.node);
                if (x.items.size() != y.items.size()) return false;
                for (std::size_t i = 0; i < x.items.size(); ++i) {
                    if (!equal_ptr(x.items[i], y.items[i])) return false;
                }
                return true;
            },
        },
        a.node);
}

bool structurally_equal(const RollExpression& a, const RollExpression& b) {
    if (a.statements.size() != b.statements.size()) return false;
    for (std::size_t i = 0; i < a.statements.size(); ++i) {
        const auto& x = a.statements[i];
        const auto& y = b.statements[i];
        if (x.index() != y.index()) return false;
        if (const auto* def = std::get_if<MacroDefinition>(&x)) {
            const auto& other = std::get<MacroDefinition>(y);
            if (def->name != other.name || !equal_ptr(def->body, other.body)) return false;
        } else if (!equal_ptr(std::get<ExprPtr>(x), std::get<ExprPtr>(y))) {
            return false;
        }
    }
    return true;
}

namespace {

std::string quote_symbol(const std::string& s) {
    const char q = s.find('\'') == std::string::npos ? '\'' : '"';
    return q + s + q;
}

std::string faces_text(const FaceSpec& faces) {
    return std::visit(
        overloaded{
            [](const StandardSides& s) { return "d" + std::to_string(s.sides); },
            [](const PercentSides&) { return std::string("d%"); },
            [](const FateFaces&) { return std::string("df"); },
            [](const CoinFaces&) { return std::string("dc"); },
            [](const NumericList& list) {
                std::string out = "d{";
                for (std::size_t i = 0; i < list.items.size(); ++i) {
                    if (i) out += ',';
                    out += std::to_string(list.items[i].lo);
                    if (list.items[i].is_range) out += ".." + std::to_string(list.items[i].hi);
                }
                return out + "}";
            },
            [](const SymbolicList& list) {
                std::string out = "d{";
                for (std::size_t i = 0; i < list.symbols.size(); ++i) {
                    if (i) out += ',';
                    out += quote_symbol(list.symbols[i]);
                }
                return out + "}";
            },
        },
        faces);
}

std::string_view comparator_text(Comparator c) {
    switch (c) {
        case Comparator::Eq: return "==";
        case Comparator::Ne: return "!=";
        case Comparator::Lt: return "<";
        case Comparator::Gt: return ">";
        case Comparator::Le: return "<=";
        case Comparator::Ge: return ">=";
    }
    return "==";
}

std::string condition_text(const Condition& cond) {
    std::string out(comparator_text(cond.comparator));
    if (const auto* n = std::get_if<std::int64_t>(&cond.threshold)) return out + std::to_string(*n);
    return out + quote_symbol(std::get<std::string>(cond.threshold));
}

std::string op_text(const DiceOp& op) {
    return std::visit(
        overloaded{
            [](const KeepDrop& kd) {
                std::string out = kd.which == KeepDrop::Which::Keep ? "k" : "d";
                out += kd.end == KeepDrop::End::High ? "h" : "l";
                if (kd.amount_written) out += std::to_string(kd.amount);
                return out;
            },
            [](const Filter& f) { return "f" + condition_text(f.condition); },
            [](const Reroll& r) { return std::string(r.repeated ? "rr" : "r") + condition_text(r.condition); },
            [](const Explode& e) {
                switch (e.mode) {
                    case ExplodeMode::Once: return std::string("!o");
                    case ExplodeMode::Penetrating: return std::string("!p");
                    default: return std::string("!");
                }
            },
            [](const Count&) { return std::string("c"); },
            [](const Unique&) { return std::string("u"); },
        },
        op);
}

// Binding strength: sums 1, products 2, negation 3, everything else 4.
int precedence(const Expr& e) {
    if (const auto* b = std::get_if<BinaryMath>(&e.node)) {
        return b->op == MathOp::Add || b->op == MathOp::Sub ? 1 : 2;
    }
    if (std::holds_alternative<UnaryNegate>(e.node)) return 3;
    return 4;
}

std::string wrap_if(const Expr& e, bool wrap) {
    return wrap ? "(" + unparse(e) + ")" : unparse(e);
}

std::string_view math_text(MathOp op) {
    switch (op) {
        case MathOp::Add: return " + ";
        case MathOp::Sub: return " - ";
        case MathOp::Mul: return " * ";
        case MathOp::DivDown: return " / ";
        case MathOp::DivUp: return " \\ ";
    }
    return " + ";
}

}  // namespace

std::string unparse(const Expr& expr) {
    return std::visit(
        overloaded{
            [](const IntLiteral& lit) {
                return lit.value < 0 ? "(-" + std::to_string(-static_cast<unsigned long long>(lit.value)) + ")"
                                     : std::to_string(lit.value);
            },
            [](const DiceNode& d) {
                const std::string count = d.count ? unparse(*d.count) : "";
                if (d.sides_defaulted) return count + "d";
                return count + faces_text(d.faces);
            },
            [](const DiceOpNode& op) { return unparse(*op.child) + op_text(op.op); },
            [&](const BinaryMath& b) {
                const int p = precedence(expr);
                return wrap_if(*b.lhs, precedence(*b.lhs) < p) + std::string(math_text(b.op)) +
                       wrap_if(*b.rhs, precedence(*b.rhs) <= p);
            },
            [](const UnaryNegate& n) { return "-" + wrap_if(*n.child, precedence(*n.child) < 3); },
            [](const MacroAccess& m) { return "@" + m.name; },
            [](const Group& g) {
                std::string out = "(";
                for (std::size_t i = 0; i < g.items.size(); ++i) {
                    if (i) out += "; ";
                    out += unparse(*g.items[i]);
                }
                return out + ")";
            },
        },
        expr.node);
}

std::string unparse(const RollExpression& expr) {
    std::string out;
    for (std::size_t i = 0; i < expr.statements.size(); ++i) {
        if (i) out += "; ";
        if (const auto* def = std::get_if<MacroDefinition>(&expr.statements[i])) {
            out += "#" + def->name + " = " + unparse(*def->body);
        } else {
            out += unparse(*std::get<ExprPtr>(expr.statements[i]));
        }
    }
    return out;
}

}  // namespace dice
