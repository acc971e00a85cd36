#include <cctype>
#include <charconv>
#include <optional>

#include "dice/token.hpp"

namespace dice {

std::string_view token_kind_name(TokenKind kind) noexcept {
    switch (kind) {
        case TokenKind::Integer: return "integer";
        case TokenKind::DiceD: return "'d'";
        case TokenKind::SidesPercent: return "'%'";
        case TokenKind::CoinC: return "coin 'c'";
        case TokenKind::FateF: return "fate 'f'";
        case TokenKind::KeepK: return "'k'";
        case TokenKind::DropD: return "drop 'd'";
        case TokenKind::HighH: return "'h'";
        case TokenKind::LowL: return "'l'";
        case TokenKind::RerollR: return "'r'";
        case TokenKind::ExplodeBang: return "'!'";
        case TokenKind::OnceO: return "'o'";
        case TokenKind::PenetrateP: return "'p'";
        case TokenKind::FilterF: return "filter 'f'";
        case TokenKind::CountC: return "count 'c'";
        case TokenKind::UniqueU: return "'u'";
        case TokenKind::Eq: return "'=='";
        case TokenKind::Ne: return "'!='";
        case TokenKind::Lt: return "'<'";
        case TokenKind::Gt: return "'>'";
        case TokenKind::Le: return "'<='";
        case TokenKind::Ge: return "'>='";
        case TokenKind::Plus: return "'+'";
        case TokenKind::Minus: return "'-'";
        case TokenKind::Star: return "'*'";
        case TokenKind::Slash: return "'/'";
        case TokenKind::Backslash: return "'\\'";
        case TokenKind::LBrace: return "'{'";
        case TokenKind::RBrace: return "'}'";
        case TokenKind::Comma: return "','";
        case TokenKind::Range: return "'..'";
        case TokenKind::Semicolon: return "';'";
        case TokenKind::Hash: return "'#'";
        case TokenKind::At: return "'@'";
        case TokenKind::Assign: return "'='";
        case TokenKind::MacroName: return "macro name";
        case TokenKind::SymbolText: return "symbol";
        case TokenKind::LParen: return "'('";
        case TokenKind::RParen: return "')'";
    }
    return "token";
}

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

// A coin `c` may appear where a dice term starts: at the beginning, after an
// operator or opening bracket, or after a leading dice count.
bool starts_term(const Token* prev) {
    if (prev == nullptr) return true;
    switch (prev->kind) {
        case TokenKind::Plus:
        case TokenKind::Minus:
        case TokenKind::Star:
        case TokenKind::Slash:
        case TokenKind::Backslash:
        case TokenKind::LParen:
        case TokenKind::Semicolon:
        case TokenKind::Assign:
        case TokenKind::DiceD:
            return true;
        default:
            return false;
    }
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        while (true) {
            skip_space();
            if (pos_ >= src_.size()) break;
            if (brace_depth_ > 0) {
                lex_brace_item();
            } else {
                lex_main();
            }
        }
        return std::move(out_);
    }

private:
    const Token* prev() const { return out_.empty() ? nullptr : &out_.back(); }

    // The integer before the current one, when the current one is a count.
    bool prev_is_leading_count() const {
        const std::size_t n = out_.size();
        if (n == 0 || out_.back().kind != TokenKind::Integer) return false;
        const Token* before = n >= 2 ? &out_[n - 2] : nullptr;
        if (before && before->kind == TokenKind::DiceD) return false;
        // A negative condition threshold such as f>-2.
        if (before && before->kind == TokenKind::Minus && n >= 3 && is_comparator(out_[n - 3].kind)) return false;
        return starts_term(before);
    }

    static bool is_comparator(TokenKind k) {
        return k == TokenKind::Eq || k == TokenKind::Ne || k == TokenKind::Lt || k == TokenKind::Gt ||
               k == TokenKind::Le || k == TokenKind::Ge;
    }

    void skip_space() {
        while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
    }

    void push(TokenKind kind, std::size_t begin, std::size_t end, std::int64_t value = 0) {
        out_.push_back(Token{kind, std::string(src_.substr(begin, end - begin)), {begin, end}, value});
    }

    [[noreturn]] void illegal(std::size_t at) const {
        const auto c = static_cast<unsigned char>(src_[at]);
        std::string found;
        if (std::isprint(c)) {
            found = std::string(1, static_cast<char>(c));
        } else {
            static constexpr char hex[] = "0123456789abcdef";
            found = std::string("\\x") + hex[c >> 4] + hex[c & 0xf];
        }
        throw DiceError(ErrorCode::LexError, "unexpected character '" + found + "'", {at, at + 1});
    }

    std::int64_t parse_int(std::size_t begin, std::size_t end) const {
        std::int64_t v = 0;
        const auto* first = src_.data() + begin;
        const auto* last = src_.data() + end;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec == std::errc::result_out_of_range || ptr != last) {
            throw DiceError(ErrorCode::IntegerOverflow, "integer literal out of range", {begin, end});
        }
        return v;
    }

    void lex_integer() {
        const std::size_t begin = pos_;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        push(TokenKind::Integer, begin, pos_, parse_int(begin, pos_));
    }

    void lex_main() {
        const std::size_t begin = pos_;
        const char c = src_[pos_];
        const char next = pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0';

        if (is_digit(c)) {
            lex_integer();
            return;
        }
        if (is_upper(c)) {
            while (pos_ < src_.size() && (is_upper(src_[pos_]) || is_digit(src_[pos_]) || src_[pos_] == '_')) ++pos_;
            push(TokenKind::MacroName, begin, pos_);
            return;
        }
        if (c == '\'' || c == '"') {
            lex_quoted();
            return;
        }

        auto single = [&](TokenKind kind) {
            ++pos_;
            push(kind, begin, pos_);
        };
        auto pair = [&](TokenKind kind) {
            pos_ += 2;
            push(kind, begin, pos_);
        };

        switch (c) {
            case 'd':
                return single(next == 'h' || next == 'l' ? TokenKind::DropD : TokenKind::DiceD);
            case 'f':
                return single(prev() && prev()->kind == TokenKind::DiceD ? TokenKind::FateF : TokenKind::FilterF);
            case 'c':
                return single(starts_term(prev()) || prev_is_leading_count() ? TokenKind::CoinC : TokenKind::CountC);
            case 'k': return single(TokenKind::KeepK);
            case 'h': return single(TokenKind::HighH);
            case 'l': return single(TokenKind::LowL);
            case 'r': return single(TokenKind::RerollR);
            case 'o': return single(TokenKind::OnceO);
            case 'p': return single(TokenKind::PenetrateP);
            case 'u': return single(TokenKind::UniqueU);
            case '%': return single(TokenKind::SidesPercent);
            case '!': return next == '=' ? pair(TokenKind::Ne) : single(TokenKind::ExplodeBang);
            case '=': return next == '=' ? pair(TokenKind::Eq) : single(TokenKind::Assign);
            case '<': return next == '=' ? pair(TokenKind::Le) : single(TokenKind::Lt);
            case '>': return next == '=' ? pair(TokenKind::Ge) : single(TokenKind::Gt);
            case '+': return single(TokenKind::Plus);
            case '-': return single(TokenKind::Minus);
            case '*': return single(TokenKind::Star);
            case '/': return single(TokenKind::Slash);
            case '\\': return single(TokenKind::Backslash);
            case '(': return single(TokenKind::LParen);
            case ')': return single(TokenKind::RParen);
            case ';': return single(TokenKind::Semicolon);
            case '#': return single(TokenKind::Hash);
            case '@': return single(TokenKind::At);
            case ',': return single(TokenKind::Comma);
            case '{':
                ++brace_depth_;
                return single(TokenKind::LBrace);
            case '}':
                return single(TokenKind::RBrace);
            case '.':
                if (next == '.') return pair(TokenKind::Range);
                break;
            default:
                break;
        }
        illegal(begin);
    }

    void lex_quoted() {
        const std::size_t begin = pos_;
        const char quote = src_[pos_++];
        const std::size_t text_begin = pos_;
        while (pos_ < src_.size() && src_[pos_] != quote) ++pos_;
        if (pos_ >= src_.size()) {
            throw DiceError(ErrorCode::LexError, "unterminated quoted symbol", {begin, src_.size()});
        }
        std::string text(src_.substr(text_begin, pos_ - text_begin));
        ++pos_;
        push_symbol(std::move(text), begin, pos_);
    }

    void push_symbol(std::string text, std::size_t begin, std::size_t end) {
        if (text.size() > kMaxSymbolLength) {
            throw DiceError(ErrorCode::SymbolTooLong,
                            "symbol longer than " + std::to_string(kMaxSymbolLength) + " characters",
                            {begin, end});
        }
        if (text.empty()) {
            throw DiceError(ErrorCode::LexError, "empty symbol", {begin, end});
        }
        for (std::size_t i = 0; i < text.size(); ++i) {
            const auto u = static_cast<unsigned char>(text[i]);
            if (u < 0x20 || u == 0x7f) illegal(begin + 1 + i);
        }
        out_.push_back(Token{TokenKind::SymbolText, std::move(text), {begin, end}, 0});
    }

    static bool ends_bare(char ch) {
        return is_space(ch) || ch == ',' || ch == '{' || ch == '}' || ch == '\'' || ch == '"';
    }

    // Inside braces an item is a (signed) integer, an integer range a..b, a
    // quoted symbol, or a bare symbol word.
    void lex_brace_item() {
        const std::size_t begin = pos_;
        const char c = src_[pos_];
        switch (c) {
            case ',': ++pos_; push(TokenKind::Comma, begin, pos_); return;
            case '}': ++pos_; --brace_depth_; push(TokenKind::RBrace, begin, pos_); return;
            case '{': illegal(begin);
            case '\'':
            case '"': lex_quoted(); return;
            default: break;
        }
        while (pos_ < src_.size() && !ends_bare(src_[pos_])) {
            const auto u = static_cast<unsigned char>(src_[pos_]);
            if (u < 0x20 || u == 0x7f) illegal(pos_);
            ++pos_;
        }
        const std::string_view word = src_.substr(begin, pos_ - begin);
        if (numeric_word(word, begin)) return;
        push_symbol(std::string(word), begin, pos_);
    }

    static std::optional<std::size_t> int_prefix(std::string_view w) {
        std::size_t i = 0;
        if (i < w.size() && w[i] == '-') ++i;
        const std::size_t digits = i;
        while (i < w.size() && is_digit(w[i])) ++i;
        if (i == digits) return std::nullopt;
        return i;
    }

    // Emits Integer or Integer Range Integer when the word is numeric.
    bool numeric_word(std::string_view w, std::size_t base) {
        auto first = int_prefix(w);
        if (!first) return false;
        if (*first == w.size()) {
            push(TokenKind::Integer, base, base + w.size(), parse_int(base, base + w.size()));
            return true;
        }
        if (w.substr(*first, 2) != "..") return false;
        const std::string_view rest = w.substr(*first + 2);
        auto second = int_prefix(rest);
        if (!second || *second != rest.size()) return false;
        const std::size_t lo_end = base + *first;
        const std::size_t hi_begin = lo_end + 2;
        const std::size_t end = base + w.size();
        push(TokenKind::Integer, base, lo_end, parse_int(base, lo_end));
        push(TokenKind::Range, lo_end, hi_begin);
        push(TokenKind::Integer, hi_begin, end, parse_int(hi_begin, end));
        return true;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int brace_depth_ = 0;
    std::vector<Token> out_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
    return Lexer(source).run();
}

}  // namespace dice
