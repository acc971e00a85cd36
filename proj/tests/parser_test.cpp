#include <gtest/gtest.h>

#include <random>

#include "dice/parser.hpp"

namespace dice {
namespace {

ErrorCode error_of(std::string_view src, ParseOptions options = {}) {
    try {
        parse(src, options);
    } catch (const DiceError& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error for " << src;
    return ErrorCode::ParseError;
}

const Expr& only_expr(const RollExpression& r) {
    EXPECT_EQ(r.statements.size(), 1u);
    return *std::get<ExprPtr>(r.statements.at(0));
}

TEST(Parser, NegativeSides) {
    EXPECT_EQ(error_of("d-6"), ErrorCode::NegativeSides);
    EXPECT_EQ(error_of("3d-6"), ErrorCode::NegativeSides);
    EXPECT_EQ(error_of("d0"), ErrorCode::ZeroSides);
}

TEST(Parser, ChainedDropLowDropHigh) {
    const auto parsed = parse("3d6dldh");
    const Expr& root = only_expr(parsed);
    const auto& outer = std::get<DiceOpNode>(root.node);
    EXPECT_EQ(std::get<KeepDrop>(outer.op),
              (KeepDrop{KeepDrop::Which::Drop, KeepDrop::End::High, 1, false}));
    const auto& inner = std::get<DiceOpNode>(outer.child->node);
    EXPECT_EQ(std::get<KeepDrop>(inner.op), (KeepDrop{KeepDrop::Which::Drop, KeepDrop::End::Low, 1, false}));
    const auto& dice = std::get<DiceNode>(inner.child->node);
    EXPECT_EQ(std::get<IntLiteral>(dice.count->node).value, 3);
    EXPECT_EQ(std::get<StandardSides>(dice.faces).sides, 6);
}

TEST(Parser, MinimalDice) {
    const auto& dice = std::get<DiceNode>(only_expr(parse("1d1")).node);
    EXPECT_EQ(std::get<IntLiteral>(dice.count->node).value, 1);
    EXPECT_EQ(std::get<StandardSides>(dice.faces).sides, 1);
    // Count defaults to one die when omitted.
    EXPECT_EQ(std::get<DiceNode>(only_expr(parse("d20")).node).count, nullptr);
}

TEST(Parser, MacroDefinitionAndAccess) {
    const auto parsed = parse("#SUITS = d{CLUBS,HEARTS,DIAMONDS,SPADES};@SUITS");
    ASSERT_EQ(parsed.statements.size(), 2u);
    const auto& def = std::get<MacroDefinition>(parsed.statements[0]);
    EXPECT_EQ(def.name, "SUITS");
    const auto& dice = std::get<DiceNode>(def.body->node);
    EXPECT_EQ(std::get<SymbolicList>(dice.faces).symbols,
              (std::vector<std::string>{"CLUBS", "HEARTS", "DIAMONDS", "SPADES"}));
    EXPECT_EQ(std::get<MacroAccess>(std::get<ExprPtr>(parsed.statements[1])->node).name, "SUITS");
}

TEST(Parser, Precedence) {
    // 1 + 2 * -3d6kh  ==>  1 + (2 * (-(3d6kh)))
    const Expr& root = only_expr(parse("1+2*-3d6kh"));
    const auto& sum = std::get<BinaryMath>(root.node);
    EXPECT_EQ(sum.op, MathOp::Add);
    const auto& product = std::get<BinaryMath>(sum.rhs->node);
    EXPECT_EQ(product.op, MathOp::Mul);
    const auto& neg = std::get<UnaryNegate>(product.rhs->node);
    EXPECT_TRUE(std::holds_alternative<DiceOpNode>(neg.child->node));

    // Left associativity of - and /.
    const auto& diff = std::get<BinaryMath>(only_expr(parse("10-3-2")).node);
    EXPECT_TRUE(std::holds_alternative<BinaryMath>(diff.lhs->node));
    const auto& quot = std::get<BinaryMath>(only_expr(parse("8/2\\3")).node);
    EXPECT_EQ(quot.op, MathOp::DivUp);
    EXPECT_EQ(std::get<BinaryMath>(quot.lhs->node).op, MathOp::DivDown);
}

TEST(Parser, SemicolonsInsideGroups) {
    const Expr& root = only_expr(parse("(d6;d6) - 3"));
    const auto& diff = std::get<BinaryMath>(root.node);
    EXPECT_EQ(std::get<Group>(diff.lhs->node).items.size(), 2u);
    EXPECT_EQ(parse("d6;d6").statements.size(), 2u);
}

TEST(Parser, DiceOperations) {
    const auto op_of = [](std::string_view src) { return std::get<DiceOpNode>(only_expr(parse(src)).node).op; };
    EXPECT_EQ(std::get<Reroll>(op_of("1d6r<2")), (Reroll{{Comparator::Lt, std::int64_t{2}}, false}));
    EXPECT_EQ(std::get<Reroll>(op_of("1d6rr<2")), (Reroll{{Comparator::Lt, std::int64_t{2}}, true}));
    EXPECT_EQ(std::get<Explode>(op_of("1d6!")).mode, ExplodeMode::Plain);
    EXPECT_EQ(std::get<Explode>(op_of("1d6!o")).mode, ExplodeMode::Once);
    EXPECT_EQ(std::get<Explode>(op_of("1d6!p")).mode, ExplodeMode::Penetrating);
    EXPECT_EQ(std::get<Filter>(op_of("4d6f>=-1")).condition, (Condition{Comparator::Ge, std::int64_t{-1}}));
    EXPECT_EQ(std::get<Filter>(op_of("2c f==HEADS")).condition, (Condition{Comparator::Eq, std::string("HEADS")}));
    EXPECT_EQ(std::get<KeepDrop>(op_of("5d6kl3")).amount, 3);
    EXPECT_TRUE(std::holds_alternative<Count>(op_of("4d6f>2c")));
    EXPECT_TRUE(std::holds_alternative<Unique>(op_of("4d6u")));
}

TEST(Parser, KeepAmountErrors) {
    EXPECT_EQ(error_of("2d6kh-1"), ErrorCode::NegativeKeepCount);
    EXPECT_EQ(error_of("2d6kh0"), ErrorCode::ZeroKeepCount);
    // With whitespace the minus is subtraction.
    const auto& diff = std::get<BinaryMath>(only_expr(parse("2d6kh - 1")).node);
    EXPECT_EQ(diff.op, MathOp::Sub);
    // kh-1d4 subtracts a die.
    EXPECT_NO_THROW(parse("2d20kh-1d4"));
}

TEST(Parser, FaceListErrors) {
    EXPECT_EQ(error_of("d{1,FOO}"), ErrorCode::MixedFaces);
    EXPECT_EQ(error_of("d{5..3}"), ErrorCode::EmptyRange);
    EXPECT_EQ(error_of("d{}"), ErrorCode::ParseError);
    EXPECT_EQ(error_of("d{1,2"), ErrorCode::ParseError);
}

TEST(Parser, MissingSides) {
    EXPECT_EQ(error_of("2d"), ErrorCode::MissingSides);
    EXPECT_EQ(error_of("2d+1"), ErrorCode::MissingSides);
    const auto& dice = std::get<DiceNode>(only_expr(parse("2d", {.default_missing_sides = true})).node);
    EXPECT_TRUE(dice.sides_defaulted);
    EXPECT_EQ(std::get<StandardSides>(dice.faces).sides, 6);
}

TEST(Parser, SyntaxErrors) {
    EXPECT_EQ(error_of(""), ErrorCode::EmptyExpression);
    EXPECT_EQ(error_of("   "), ErrorCode::EmptyExpression);
    EXPECT_EQ(error_of("2d6 k h"), ErrorCode::ParseError);  // whitespace inside "kh"
    EXPECT_EQ(error_of("2d6k"), ErrorCode::ParseError);
    EXPECT_EQ(error_of("3kh"), ErrorCode::ParseError);      // ops need a dice term
    EXPECT_EQ(error_of("(2d6)kh"), ErrorCode::ParseError);
    EXPECT_EQ(error_of("1d6r"), ErrorCode::ParseError);
    EXPECT_EQ(error_of("1+"), ErrorCode::ParseError);
    EXPECT_EQ(error_of("(1"), ErrorCode::ParseError);
    EXPECT_EQ(error_of("1)"), ErrorCode::ParseError);
    EXPECT_EQ(error_of("d6;"), ErrorCode::ParseError);
    EXPECT_EQ(error_of("1+#A=2"), ErrorCode::ParseError);
    EXPECT_EQ(error_of("#lower = 1"), ErrorCode::LexError);
    EXPECT_EQ(error_of("@ A"), ErrorCode::ParseError);
    EXPECT_EQ(error_of("4d6cc"), ErrorCode::ParseError);
}

TEST(Parser, ErrorSpanPointsAtOffendingToken) {
    try {
        parse("2d6 + * 3");
        FAIL();
    } catch (const DiceError& e) {
        EXPECT_EQ(e.span(), (Span{6, 7}));
        EXPECT_NE(std::string(e.what()).find("expected expression"), std::string::npos);
    }
}

TEST(Parser, SpecialShorthands) {
    EXPECT_TRUE(std::holds_alternative<PercentSides>(std::get<DiceNode>(only_expr(parse("d%")).node).faces));
    EXPECT_TRUE(std::holds_alternative<FateFaces>(std::get<DiceNode>(only_expr(parse("4df")).node).faces));
    EXPECT_TRUE(std::holds_alternative<CoinFaces>(std::get<DiceNode>(only_expr(parse("3c")).node).faces));
}

// ---- round-trip property ------------------------------------------------

class TreeGenerator {
public:
    explicit TreeGenerator(std::uint64_t seed) : rng_(seed) {}

    ExprPtr expr(int depth) {
        const int pick = depth <= 0 ? between(0, 2) : between(0, 7);
        switch (pick) {
            case 0: return make_expr(IntLiteral{between(0, 50)}, {});
            case 1: return dice_term(depth);
            case 2: return make_expr(MacroAccess{macro_name()}, {});
            case 3:
            case 4: {
                const auto op = static_cast<MathOp>(between(0, 4));
                const int p = op == MathOp::Add || op == MathOp::Sub ? 1 : 2;
                ExprPtr lhs = at_least(expr(depth - 1), p);
                ExprPtr rhs = at_least(expr(depth - 1), p + 1);
                return make_expr(BinaryMath{op, std::move(lhs), std::move(rhs)}, {});
            }
            case 5: return make_expr(UnaryNegate{at_least(expr(depth - 1), 3)}, {});
            case 6: {
                Group g;
                const int n = between(1, 3);
                for (int i = 0; i < n; ++i) g.items.push_back(expr(depth - 1));
                return make_expr(std::move(g), {});
            }
            default: {
                ExprPtr node = dice_term(depth);
                const int ops = between(1, 3);
                for (int i = 0; i < ops; ++i) {
                    const bool last = i + 1 == ops;
                    node = make_expr(DiceOpNode{node, dice_op(last)}, {});
                    if (std::holds_alternative<Count>(std::get<DiceOpNode>(node->node).op)) break;
                }
                return node;
            }
        }
    }

    RollExpression program() {
        RollExpression out;
        const int n = between(1, 3);
        for (int i = 0; i < n; ++i) {
            if (between(0, 3) == 0) {
                out.statements.emplace_back(MacroDefinition{macro_name(), expr(3), {}});
            } else {
                out.statements.emplace_back(expr(4));
            }
        }
        return out;
    }

private:
    // Parsed trees never hold a looser-binding child without an explicit group.
    static ExprPtr at_least(ExprPtr child, int precedence) {
        int own = 4;
        if (const auto* b = std::get_if<BinaryMath>(&child->node)) {
            own = b->op == MathOp::Add || b->op == MathOp::Sub ? 1 : 2;
        } else if (std::holds_alternative<UnaryNegate>(child->node)) {
            own = 3;
        }
        if (own >= precedence) return child;
        Group g;
        g.items.push_back(std::move(child));
        return make_expr(std::move(g), {});
    }

    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }

    std::string macro_name() {
        static const char* names[] = {"A", "D66", "SUITS", "X_1", "FATE"};
        return names[between(0, 4)];
    }

    ExprPtr dice_term(int depth) {
        ExprPtr count;
        switch (between(0, 2)) {
            case 0: break;
            case 1: count = make_expr(IntLiteral{between(0, 20)}, {}); break;
            default: {
                Group g;
                g.items.push_back(expr(std::max(depth - 2, 0)));
                count = make_expr(std::move(g), {});
            }
        }
        FaceSpec faces;
        switch (between(0, 5)) {
            case 0: faces = StandardSides{between(1, 100)}; break;
            case 1: faces = PercentSides{}; break;
            case 2: faces = FateFaces{}; break;
            case 3: faces = CoinFaces{}; break;
            case 4: {
                NumericList list;
                const int n = between(1, 4);
                for (int i = 0; i < n; ++i) {
                    const auto lo = between(-5, 10);
                    const bool range = between(0, 1) == 1;
                    list.items.push_back({lo, range ? lo + between(0, 5) : lo, range});
                }
                faces = list;
                break;
            }
            default: {
                static const char* symbols[] = {"-", "+", "0", "HEADS", "two words", "it's", "x\"y"};
                SymbolicList list;
                const int n = between(1, 4);
                for (int i = 0; i < n; ++i) list.symbols.emplace_back(symbols[between(0, 6)]);
                faces = list;
            }
        }
        return make_expr(DiceNode{std::move(count), std::move(faces), false}, {});
    }

    Condition condition() {
        Condition c;
        c.comparator = static_cast<Comparator>(between(0, 5));
        if (between(0, 3) == 0) {
            c.threshold = std::string("HEADS");
        } else {
            c.threshold = between(-3, 10);
        }
        return c;
    }

    DiceOp dice_op(bool allow_count) {
        switch (between(0, allow_count ? 5 : 4)) {
            case 0: {
                const bool written = between(0, 1) == 1;
                return KeepDrop{static_cast<KeepDrop::Which>(between(0, 1)), static_cast<KeepDrop::End>(between(0, 1)),
                                written ? between(1, 5) : 1, written};
            }
            case 1: return Filter{condition()};
            case 2: return Reroll{condition(), between(0, 1) == 1};
            case 3: return Explode{static_cast<ExplodeMode>(between(0, 2))};
            case 4: return Unique{};
            default: return Count{};
        }
    }

    std::mt19937_64 rng_;
};

TEST(ParserProperty, UnparseRoundTrips) {
    TreeGenerator gen(20260101);
    for (int i = 0; i < 3000; ++i) {
        const RollExpression original = gen.program();
        const std::string text = unparse(original);
        RollExpression reparsed;
        try {
            reparsed = parse(text);
        } catch (const DiceError& e) {
            FAIL() << "unparse produced unparsable text: " << text << " (" << e.what() << ")";
        }
        ASSERT_TRUE(structurally_equal(original, reparsed)) << text << "\nreparsed as: " << unparse(reparsed);
    }
}

TEST(ParserProperty, ParsedInputsRoundTrip) {
    for (const char* src : {"2d20kh+2", "3d6dldh", "4d6f<3", "1d6rr<2", "1d6!p", "4d6f!=2c", "4d6uc",
                            "(d6;d6) - 3", "(d6;d6)*(d6;d6)", "3/2", "3\\2", "-1d6", "d{1,2,3..8,9,10,100}",
                            "#SUITS = d{CLUBS,HEARTS};@SUITS", "d%", "4df", "2c", "(1d4)d6", "@D66kh",
                            "10-(3-2)", "-(2+3)", "2*(3+4)", "1d20!o", "2c f=='HEADS' c"}) {
        const auto first = parse(src);
        const auto second = parse(unparse(first));
        EXPECT_TRUE(structurally_equal(first, second)) << src << " -> " << unparse(first);
    }
}

TEST(ParserProperty, TotalOnArbitraryBytes) {
    std::mt19937_64 rng(7);
    const std::string alphabet = "0123456789dkhlrfcu!op%{}(),.;#@=<>+-*/\\ 'ABZ_\"";
    for (int i = 0; i < 20000; ++i) {
        const std::size_t len = rng() % 48;
        std::string input;
        for (std::size_t j = 0; j < len; ++j) {
            if (i % 2 == 0) {
                input.push_back(static_cast<char>(rng() % 256));
            } else {
                input.push_back(alphabet[rng() % alphabet.size()]);
            }
        }
        try {
            parse(input);
        } catch (const DiceError&) {
        }
    }
    SUCCEED();
}

TEST(ParserProperty, KeywordsAndMacroNamesAreDisjoint) {
    for (char c = 'a'; c <= 'z'; ++c) EXPECT_FALSE(is_macro_name(std::string(1, c)));
    for (char c = 'A'; c <= 'Z'; ++c) EXPECT_TRUE(is_macro_name(std::string(1, c)));
    EXPECT_FALSE(is_macro_name("_A"));
    EXPECT_FALSE(is_macro_name("9A"));
    EXPECT_TRUE(is_macro_name("A_9"));
}

}  // namespace
}  // namespace dice
