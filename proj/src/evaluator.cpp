#include "dice/evaluator.hpp"

#include <algorithm>
#include <climits>

#include "checked.hpp"

namespace dice {

using detail::checked_add;
using detail::checked_mul;
using detail::checked_neg;
using detail::checked_sub;

std::string value_to_string(const Value& value) {
    if (const auto* n = std::get_if<std::int64_t>(&value)) return std::to_string(*n);
    const auto& symbols = std::get<Symbols>(value);
    if (symbols.size() == 1) return symbols.front();
    std::string out = "{";
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (i) out += ',';
        out += symbols[i];
    }
    return out + "}";
}

std::string values_to_string(const ValueVector& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += value_to_string(values[i]);
    }
    return out;
}

bool MacroTable::define(const std::string& name, ExprPtr body) {
    auto [it, inserted] = entries_.insert_or_assign(name, std::move(body));
    return !inserted;
}

ExprPtr MacroTable::lookup(std::string_view name) const {
    auto it = entries_.find(name);
    return it == entries_.end() ? nullptr : it->second;
}

bool define_macro(MacroTable& table, const std::string& name, ExprPtr body) {
    return table.define(name, std::move(body));
}

void load_macros(MacroTable& table, std::string_view text, ParseOptions options) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        try {
            const RollExpression parsed = parse(line, options);
            if (parsed.statements.size() != 1 || !std::holds_alternative<MacroDefinition>(parsed.statements[0])) {
                throw DiceError(ErrorCode::ParseError, "expected a single '#NAME = expr' definition");
            }
            const auto& def = std::get<MacroDefinition>(parsed.statements[0]);
            table.define(def.name, def.body);
        } catch (const DiceError& e) {
            throw DiceError(e.code(), "line " + std::to_string(line_no) + ": " + e.what(), e.span());
        }
    }
}

MacroTable builtin_macros() {
    MacroTable table;
    load_macros(table, builtin_macro_source());
    return table;
}

std::int64_t divide_down(std::int64_t a, std::int64_t b) {
    if (b == 0) throw DiceError(ErrorCode::DivisionByZero, "division by zero");
    if (b == -1) return checked_neg(a);
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t divide_up(std::int64_t a, std::int64_t b) {
    if (b == 0) throw DiceError(ErrorCode::DivisionByZero, "division by zero");
    if (b == -1) return checked_neg(a);
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
    return q;
}

namespace {

std::int64_t as_number(const Value& v) {
    if (const auto* n = std::get_if<std::int64_t>(&v)) return *n;
    throw DiceError(ErrorCode::TypeError, "symbolic value '" + value_to_string(v) + "' used in arithmetic");
}

std::int64_t identity(MathOp op) {
    return op == MathOp::Add || op == MathOp::Sub ? 0 : 1;
}

std::int64_t apply(MathOp op, std::int64_t a, std::int64_t b) {
    switch (op) {
        case MathOp::Add: return checked_add(a, b);
        case MathOp::Sub: return checked_sub(a, b);
        case MathOp::Mul: return checked_mul(a, b);
        case MathOp::DivDown: return divide_down(a, b);
        case MathOp::DivUp: return divide_up(a, b);
    }
    return 0;
}

}  // namespace

ValueVector binary_math(MathOp op, const ValueVector& lhs, const ValueVector& rhs) {
    const std::size_t n = std::max(lhs.size(), rhs.size());
    ValueVector out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t a = i < lhs.size() ? as_number(lhs[i]) : identity(op);
        const std::int64_t b = i < rhs.size() ? as_number(rhs[i]) : identity(op);
        out.emplace_back(apply(op, a, b));
    }
    return out;
}

ValueVector negate(const ValueVector& values) {
    ValueVector out;
    out.reserve(values.size());
    for (const auto& v : values) out.emplace_back(checked_neg(as_number(v)));
    return out;
}

namespace {

class Evaluation {
public:
    Evaluation(MacroTable& macros, RandomSource& rng, const Limits& limits)
        : macros_(macros), rng_(rng), limits_(limits) {}

    RollResult run(const RollExpression& expr) {
        for (const auto& statement : expr.statements) {
            if (const auto* def = std::get_if<MacroDefinition>(&statement)) {
                if (macros_.define(def->name, def->body)) {
                    result_.warnings.push_back("macro " + def->name + " redefined");
                }
                continue;
            }
            ValueVector values = eval(*std::get<ExprPtr>(statement));
            for (auto& v : values) result_.values.push_back(std::move(v));
        }
        return std::move(result_);
    }

private:
    void step(const Expr& e) {
        if (++steps_ > limits_.max_steps) {
            throw DiceError(ErrorCode::EvaluationBudgetExceeded,
                            "evaluation exceeded " + std::to_string(limits_.max_steps) + " steps", e.span);
        }
    }

    ValueVector eval(const Expr& e) {
        step(e);
        try {
            return eval_node(e);
        } catch (const DiceError& err) {
            if (err.span() == Span{}) throw DiceError(err.code(), err.what(), e.span);
            throw;
        }
    }

    ValueVector eval_node(const Expr& e) {
        if (const auto* lit = std::get_if<IntLiteral>(&e.node)) return {lit->value};
        if (std::holds_alternative<DiceNode>(e.node)) return {collapse(result_.pools[eval_pool(e)])};
        if (const auto* op = std::get_if<DiceOpNode>(&e.node)) {
            if (std::holds_alternative<Count>(op->op)) {
                const Pool& pool = result_.pools[eval_pool(*op->child)];
                const std::int64_t n = count_active(pool);
                return {pool.negated ? -n : n};
            }
            return {collapse(result_.pools[eval_pool(e)])};
        }
        if (const auto* math = std::get_if<BinaryMath>(&e.node)) {
            ValueVector lhs = eval(*math->lhs);
            ValueVector rhs = eval(*math->rhs);
            return binary_math(math->op, lhs, rhs);
        }
        if (const auto* neg = std::get_if<UnaryNegate>(&e.node)) return negate(eval(*neg->child));
        if (const auto* access = std::get_if<MacroAccess>(&e.node)) {
            const Expr& body = enter_macro(access->name, e.span);
            ValueVector out = eval(body);
            --macro_depth_;
            return out;
        }
        const auto& group = std::get<Group>(e.node);
        ValueVector out;
        for (const auto& item : group.items) {
            ValueVector values = eval(*item);
            for (auto& v : values) out.push_back(std::move(v));
        }
        return out;
    }

    const Expr& enter_macro(const std::string& name, Span span) {
        const ExprPtr body = macros_.lookup(name);
        if (!body) throw DiceError(ErrorCode::UndefinedMacro, "undefined macro @" + name, span);
        if (++macro_depth_ > limits_.macro_depth) {
            throw DiceError(ErrorCode::MacroDepthExceeded,
                            "macro nesting deeper than " + std::to_string(limits_.macro_depth), span);
        }
        // The table may be redefined later; keep the body alive for this evaluation.
        held_.push_back(body);
        return *body;
    }

    // Returns the index of the pool in result_.pools; dice operations
    // update that entry in place.
    std::size_t eval_pool(const Expr& e) {
        step(e);
        if (const auto* dice = std::get_if<DiceNode>(&e.node)) return roll(*dice, e.span);
        if (const auto* access = std::get_if<MacroAccess>(&e.node)) {
            const Expr& body = enter_macro(access->name, e.span);
            const std::size_t index = eval_pool(body);
            --macro_depth_;
            return index;
        }
        const auto* op = std::get_if<DiceOpNode>(&e.node);
        if (!op || std::holds_alternative<Count>(op->op)) {
            throw DiceError(ErrorCode::TypeError, "dice operation applied to something that is not a dice pool", e.span);
        }
        const std::size_t index = eval_pool(*op->child);
        try {
            result_.pools[index] = apply_op(std::move(result_.pools[index]), op->op);
        } catch (const DiceError& err) {
            if (err.span() == Span{}) throw DiceError(err.code(), err.what(), e.span);
            throw;
        }
        return index;
    }

    Pool apply_op(Pool pool, const DiceOp& op) {
        if (const auto* kd = std::get_if<KeepDrop>(&op)) return keep_drop(std::move(pool), kd->which, kd->end, kd->amount);
        if (const auto* f = std::get_if<Filter>(&op)) return filter(std::move(pool), f->condition);
        if (const auto* r = std::get_if<Reroll>(&op)) {
            pool = reroll(std::move(pool), r->condition, r->repeated, rng_, limits_.chain_limit);
            warn_limit(pool, "reroll");
            return pool;
        }
        if (const auto* x = std::get_if<Explode>(&op)) {
            pool = explode(std::move(pool), x->mode, rng_, limits_.chain_limit);
            warn_limit(pool, "explosion");
            return pool;
        }
        if (std::holds_alternative<Unique>(op)) return unique(std::move(pool));
        throw DiceError(ErrorCode::TypeError, "count cannot be chained");
    }

    void warn_limit(const Pool& pool, std::string_view what) {
        for (const auto& record : pool.records) {
            if (record.limit_hit) {
                result_.warnings.push_back(std::string(what) + " chain limit " + std::to_string(limits_.chain_limit) +
                                           " reached on die " + std::to_string(record.die_index));
            }
        }
    }

    std::size_t roll(const DiceNode& dice, Span span) {
        std::int64_t count = 1;
        if (dice.count) {
            const ValueVector counted = eval(*dice.count);
            if (counted.size() != 1) {
                throw DiceError(ErrorCode::TypeError, "dice count must be a single value", dice.count->span);
            }
            count = as_number(counted.front());
        }
        if (dice.sides_defaulted) result_.warnings.emplace_back("missing sides defaulted to 6");
        const bool negated = count < 0;
        if (negated) count = count == INT64_MIN ? INT64_MAX : -count;
        if (count > limits_.max_pool || total_dice_ + count > limits_.max_pool) {
            throw DiceError(ErrorCode::PoolTooLarge,
                            "rolling " + std::to_string(count) + " more dice exceeds the limit of " +
                                std::to_string(limits_.max_pool),
                            span);
        }
        total_dice_ += count;
        auto faces = std::make_shared<const Faces>(resolve_faces(dice.faces));
        Pool pool = roll_pool(DiceSpec{count, std::move(faces)}, rng_, limits_);
        pool.negated = negated;
        result_.pools.push_back(std::move(pool));
        return result_.pools.size() - 1;
    }

    Value collapse(const Pool& pool) {
        if (pool.symbolic()) {
            if (pool.negated) throw DiceError(ErrorCode::TypeError, "symbolic dice cannot be negated");
            Symbols symbols;
            for (const auto& record : pool.records) {
                if (record.status == RecordStatus::Kept) symbols.push_back(pool.faces->symbol_at(record.history.back()));
            }
            return symbols;
        }
        std::int64_t sum = 0;
        for (const auto& record : pool.records) {
            if (record.status == RecordStatus::Kept) sum = checked_add(sum, record.contribution);
        }
        return pool.negated ? checked_neg(sum) : sum;
    }

    MacroTable& macros_;
    RandomSource& rng_;
    const Limits& limits_;
    RollResult result_;
    std::vector<ExprPtr> held_;
    std::int64_t steps_ = 0;
    std::int64_t total_dice_ = 0;
    int macro_depth_ = 0;
};

}  // namespace

RollResult evaluate(const RollExpression& expr, MacroTable& macros, RandomSource& rng, const Limits& limits) {
    return Evaluation(macros, rng, limits).run(expr);
}

}  // namespace dice
