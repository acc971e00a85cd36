#include "dice/parser.hpp"

#include <optional>

namespace dice {

bool is_macro_name(std::string_view name) noexcept {
    if (name.empty() || name[0] < 'A' || name[0] > 'Z') return false;
    for (char c : name) {
        if (!((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_')) return false;
    }
    return true;
}

namespace {

class Parser {
public:
    Parser(std::span<const Token> tokens, std::size_t source_length, ParseOptions options)
        : toks_(tokens), eof_(source_length), opts_(options) {}

    RollExpression program() {
        if (toks_.empty()) throw DiceError(ErrorCode::EmptyExpression, "empty expression", {0, eof_});
        RollExpression out;
        out.statements.push_back(statement());
        while (accept(TokenKind::Semicolon)) out.statements.push_back(statement());
        if (!at_end()) fail("';' or end of input");
        return out;
    }

private:
    // ---- token cursor --------------------------------------------------

    bool at_end() const { return pos_ >= toks_.size(); }
    const Token* peek(std::size_t ahead = 0) const {
        return pos_ + ahead < toks_.size() ? &toks_[pos_ + ahead] : nullptr;
    }
    bool check(TokenKind k) const { return peek() && peek()->kind == k; }
    const Token& advance() { return toks_[pos_++]; }
    bool accept(TokenKind k) {
        if (!check(k)) return false;
        ++pos_;
        return true;
    }
    // `k` directly follows the previous token with no whitespace between.
    bool accept_adjacent(TokenKind k) {
        if (!check(k) || pos_ == 0 || toks_[pos_ - 1].span.end != peek()->span.begin) return false;
        ++pos_;
        return true;
    }
    std::size_t last_end() const { return pos_ == 0 ? 0 : toks_[pos_ - 1].span.end; }
    Span here() const { return peek() ? peek()->span : Span{eof_, eof_}; }

    [[noreturn]] void fail(std::string_view expected) const {
        std::string found = peek() ? std::string(token_kind_name(peek()->kind)) : "end of input";
        if (peek() && !peek()->lexeme.empty() &&
            (peek()->kind == TokenKind::Integer || peek()->kind == TokenKind::MacroName ||
             peek()->kind == TokenKind::SymbolText)) {
            found += " '" + peek()->lexeme + "'";
        }
        throw DiceError(ErrorCode::ParseError, "expected " + std::string(expected) + ", found " + found, here());
    }

    const Token& expect(TokenKind k, std::string_view expected) {
        if (!check(k)) fail(expected);
        return advance();
    }

    // ---- statements ----------------------------------------------------

    Statement statement() {
        if (check(TokenKind::Hash)) {
            const std::size_t begin = advance().span.begin;
            const Token& name = expect(TokenKind::MacroName, "macro name (uppercase)");
            expect(TokenKind::Assign, "'='");
            ExprPtr body = additive();
            return MacroDefinition{name.lexeme, std::move(body), {begin, last_end()}};
        }
        return additive();
    }

    // ---- arithmetic ----------------------------------------------------

    ExprPtr additive() {
        ExprPtr lhs = multiplicative();
        while (true) {
            MathOp op;
            if (check(TokenKind::Plus)) op = MathOp::Add;
            else if (check(TokenKind::Minus)) op = MathOp::Sub;
            else break;
            advance();
            ExprPtr rhs = multiplicative();
            const Span span{lhs->span.begin, rhs->span.end};
            lhs = make_expr(BinaryMath{op, std::move(lhs), std::move(rhs)}, span);
        }
        return lhs;
    }

    ExprPtr multiplicative() {
        ExprPtr lhs = unary();
        while (true) {
            MathOp op;
            if (check(TokenKind::Star)) op = MathOp::Mul;
            else if (check(TokenKind::Slash)) op = MathOp::DivDown;
            else if (check(TokenKind::Backslash)) op = MathOp::DivUp;
            else break;
            advance();
            ExprPtr rhs = unary();
            const Span span{lhs->span.begin, rhs->span.end};
            lhs = make_expr(BinaryMath{op, std::move(lhs), std::move(rhs)}, span);
        }
        return lhs;
    }

    ExprPtr unary() {
        if (check(TokenKind::Minus)) {
            const std::size_t begin = advance().span.begin;
            if (++depth_ > kMaxDepth) throw DiceError(ErrorCode::ParseError, "expression nested too deeply", here());
            ExprPtr child = unary();
            --depth_;
            const Span span{begin, child->span.end};
            return make_expr(UnaryNegate{std::move(child)}, span);
        }
        return postfix();
    }

    // ---- dice terms and operations ---------------------------------------

    ExprPtr postfix() {
        ExprPtr node = primary();
        const bool accepts_ops = std::holds_alternative<DiceNode>(node->node) ||
                                 std::holds_alternative<MacroAccess>(node->node);
        while (auto op = dice_op()) {
            if (!accepts_ops) {
                throw DiceError(ErrorCode::ParseError, "dice operation must follow a dice term or macro",
                                {node->span.begin, last_end()});
            }
            const bool counted = std::holds_alternative<Count>(*op);
            const Span span{node->span.begin, last_end()};
            node = make_expr(DiceOpNode{std::move(node), std::move(*op)}, span);
            if (counted) break;
        }
        return node;
    }

    ExprPtr primary() {
        const Token* t = peek();
        if (!t) fail("expression");
        switch (t->kind) {
            case TokenKind::Integer: {
                const Token& lit = advance();
                if (auto dice = dice_tail(make_expr(IntLiteral{lit.value}, lit.span), lit.span.begin)) return dice;
                return make_expr(IntLiteral{lit.value}, lit.span);
            }
            case TokenKind::DiceD:
            case TokenKind::CoinC:
                return dice_tail(nullptr, t->span.begin);
            case TokenKind::LParen: {
                const std::size_t begin = advance().span.begin;
                if (++depth_ > kMaxDepth) throw DiceError(ErrorCode::ParseError, "expression nested too deeply", here());
                Group group;
                group.items.push_back(additive());
                while (accept(TokenKind::Semicolon)) group.items.push_back(additive());
                --depth_;
                expect(TokenKind::RParen, "')'");
                ExprPtr g = make_expr(std::move(group), {begin, last_end()});
                if (auto dice = dice_tail(g, begin)) return dice;
                return g;
            }
            case TokenKind::At: {
                const std::size_t begin = advance().span.begin;
                const Token& name = expect(TokenKind::MacroName, "macro name (uppercase)");
                if (name.span.begin != begin + 1) {
                    throw DiceError(ErrorCode::ParseError, "whitespace between '@' and macro name",
                                    {begin, name.span.end});
                }
                return make_expr(MacroAccess{name.lexeme}, {begin, name.span.end});
            }
            case TokenKind::Hash:
                throw DiceError(ErrorCode::ParseError, "macro definition must start a statement", t->span);
            default:
                fail("expression");
        }
    }

    // Parses "d<sides>" or a coin after an optional count; null when the
    // next token does not start a die.
    ExprPtr dice_tail(ExprPtr count, std::size_t begin) {
        if (accept(TokenKind::CoinC)) {
            return make_expr(DiceNode{std::move(count), CoinFaces{}, false}, {begin, last_end()});
        }
        if (!accept(TokenKind::DiceD)) return nullptr;
        bool defaulted = false;
        FaceSpec faces = sides(defaulted);
        return make_expr(DiceNode{std::move(count), std::move(faces), defaulted}, {begin, last_end()});
    }

    FaceSpec sides(bool& defaulted) {
        const Token* t = peek();
        if (t) {
            switch (t->kind) {
                case TokenKind::Integer: {
                    const Token& lit = advance();
                    if (lit.value == 0) throw DiceError(ErrorCode::ZeroSides, "a die needs at least one side", lit.span);
                    return StandardSides{lit.value};
                }
                case TokenKind::Minus: {
                    Span span = advance().span;
                    if (check(TokenKind::Integer)) span.end = advance().span.end;
                    throw DiceError(ErrorCode::NegativeSides, "dice cannot have a negative number of sides", span);
                }
                case TokenKind::SidesPercent: advance(); return PercentSides{};
                case TokenKind::FateF: advance(); return FateFaces{};
                case TokenKind::CoinC: advance(); return CoinFaces{};
                case TokenKind::LBrace: return face_list();
                default: break;
            }
        }
        if (opts_.default_missing_sides) {
            defaulted = true;
            return StandardSides{6};
        }
        throw DiceError(ErrorCode::MissingSides, "missing number of sides after 'd'", here());
    }

    FaceSpec face_list() {
        const std::size_t begin = advance().span.begin;
        NumericList numeric;
        SymbolicList symbolic;
        do {
            const Token* t = peek();
            if (t && t->kind == TokenKind::Integer) {
                const Token& lo = advance();
                NumericItem item{lo.value, lo.value, false};
                if (accept(TokenKind::Range)) {
                    const Token& hi = expect(TokenKind::Integer, "integer after '..'");
                    if (hi.value < lo.value) {
                        throw DiceError(ErrorCode::EmptyRange, "range lower bound exceeds upper bound",
                                        {lo.span.begin, hi.span.end});
                    }
                    item = {lo.value, hi.value, true};
                }
                numeric.items.push_back(item);
            } else if (t && t->kind == TokenKind::SymbolText) {
                symbolic.symbols.push_back(advance().lexeme);
            } else {
                fail("face value");
            }
            if (!numeric.items.empty() && !symbolic.symbols.empty()) {
                throw DiceError(ErrorCode::MixedFaces, "face list mixes numbers and symbols", {begin, last_end()});
            }
        } while (accept(TokenKind::Comma));
        expect(TokenKind::RBrace, "',' or '}'");
        if (!symbolic.symbols.empty()) return symbolic;
        return numeric;
    }

    std::optional<DiceOp> dice_op() {
        const Token* t = peek();
        if (!t) return std::nullopt;
        switch (t->kind) {
            case TokenKind::KeepK:
            case TokenKind::DropD: {
                advance();
                KeepDrop kd;
                kd.which = t->kind == TokenKind::KeepK ? KeepDrop::Which::Keep : KeepDrop::Which::Drop;
                if (accept_adjacent(TokenKind::HighH)) kd.end = KeepDrop::End::High;
                else if (accept_adjacent(TokenKind::LowL)) kd.end = KeepDrop::End::Low;
                else fail("'h' or 'l' directly after keep/drop");
                keep_amount(kd);
                return kd;
            }
            case TokenKind::FilterF:
                advance();
                return Filter{condition()};
            case TokenKind::RerollR: {
                advance();
                const bool repeated = accept_adjacent(TokenKind::RerollR);
                return Reroll{condition(), repeated};
            }
            case TokenKind::ExplodeBang: {
                advance();
                if (accept_adjacent(TokenKind::OnceO)) return Explode{ExplodeMode::Once};
                if (accept_adjacent(TokenKind::PenetrateP)) return Explode{ExplodeMode::Penetrating};
                return Explode{ExplodeMode::Plain};
            }
            case TokenKind::CountC: advance(); return Count{};
            case TokenKind::UniqueU: advance(); return Unique{};
            default: return std::nullopt;
        }
    }

    void keep_amount(KeepDrop& kd) {
        if (check(TokenKind::Integer)) {
            const Token& z = advance();
            if (z.value == 0) throw DiceError(ErrorCode::ZeroKeepCount, "keep/drop amount must be at least 1", z.span);
            kd.amount = z.value;
            kd.amount_written = true;
            return;
        }
        // "kh-1" written without spaces is a negative amount; "kh - 1" subtracts.
        const Token* minus = peek();
        const Token* digits = peek(1);
        const Token* after = peek(2);
        if (minus && digits && minus->kind == TokenKind::Minus && digits->kind == TokenKind::Integer &&
            minus->span.begin == last_end() && digits->span.begin == minus->span.end &&
            !(after && (after->kind == TokenKind::DiceD || after->kind == TokenKind::CoinC))) {
            throw DiceError(ErrorCode::NegativeKeepCount, "keep/drop amount cannot be negative",
                            {minus->span.begin, digits->span.end});
        }
    }

    Condition condition() {
        Condition cond;
        const Token* t = peek();
        if (!t) fail("comparison operator");
        switch (t->kind) {
            case TokenKind::Eq: cond.comparator = Comparator::Eq; break;
            case TokenKind::Ne: cond.comparator = Comparator::Ne; break;
            case TokenKind::Lt: cond.comparator = Comparator::Lt; break;
            case TokenKind::Gt: cond.comparator = Comparator::Gt; break;
            case TokenKind::Le: cond.comparator = Comparator::Le; break;
            case TokenKind::Ge: cond.comparator = Comparator::Ge; break;
            default: fail("comparison operator");
        }
        advance();
        if (check(TokenKind::Integer)) {
            cond.threshold = advance().value;
        } else if (check(TokenKind::Minus) && peek(1) && peek(1)->kind == TokenKind::Integer &&
                   peek(1)->span.begin == peek()->span.end) {
            advance();
            const Token& lit = advance();
            cond.threshold = -lit.value;
        } else if (check(TokenKind::SymbolText) || check(TokenKind::MacroName)) {
            cond.threshold = advance().lexeme;
        } else {
            fail("integer or symbol threshold");
        }
        return cond;
    }

    static constexpr int kMaxDepth = 256;

    std::span<const Token> toks_;
    std::size_t eof_;
    ParseOptions opts_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

}  // namespace

RollExpression parse(std::span<const Token> tokens, std::size_t source_length, ParseOptions options) {
    return Parser(tokens, source_length, options).program();
}

RollExpression parse(std::string_view source, ParseOptions options) {
    const auto tokens = tokenize(source);
    return parse(tokens, source.size(), options);
}

}  // namespace dice
