#include "probcheck/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

namespace probcheck {
namespace {

enum class TokKind {
    Ident, Int, LBracket, RBracket, LParen, RParen, Colon, Comma,
    EqEq, BangEq, End
};

struct Token {
    TokKind kind = TokKind::End;
    std::string text;
    std::int64_t value = 0;  // Int only
    SourceSpan span;
};

struct LexError {
    SourceSpan span;
    std::string message;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    // Returns false and fills error on a bad character.
    bool tokenize(std::vector<Token>& out, LexError& error) {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
                continue;
            }
            if (c == '\r' || c == '\n' || c == ' ' || c == '\t') {
                advance();
                continue;
            }
            SourceSpan span{line_, col_, 1};
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string ident;
                while (pos_ < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                        text_[pos_] == '_')) {
                    ident += text_[pos_];
                    advance();
                }
                span.length = static_cast<int>(ident.size());
                out.push_back({TokKind::Ident, std::move(ident), 0, span});
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string digits;
                while (pos_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    digits += text_[pos_];
                    advance();
                }
                span.length = static_cast<int>(digits.size());
                std::int64_t value = 0;
                auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
                if (ec != std::errc{}) {
                    error = {span, "integer literal out of range: " + digits};
                    return false;
                }
                out.push_back({TokKind::Int, std::move(digits), value, span});
                continue;
            }
            switch (c) {
                case '[': out.push_back({TokKind::LBracket, "[", 0, span}); advance(); continue;
                case ']': out.push_back({TokKind::RBracket, "]", 0, span}); advance(); continue;
                case '(': out.push_back({TokKind::LParen, "(", 0, span}); advance(); continue;
                case ')': out.push_back({TokKind::RParen, ")", 0, span}); advance(); continue;
                case ':': out.push_back({TokKind::Colon, ":", 0, span}); advance(); continue;
                case ',': out.push_back({TokKind::Comma, ",", 0, span}); advance(); continue;
                case '=':
                    if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
                        span.length = 2;
                        out.push_back({TokKind::EqEq, "==", 0, span});
                        advance(); advance();
                        continue;
                    }
                    error = {span, "unexpected character '=' (did you mean '==')"};
                    return false;
                case '!':
                    if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
                        span.length = 2;
                        out.push_back({TokKind::BangEq, "!=", 0, span});
                        advance(); advance();
                        continue;
                    }
                    error = {span, "unexpected character '!' (did you mean '!=')"};
                    return false;
                default:
                    error = {span, std::string("unexpected character '") + c + "'"};
                    return false;
            }
        }
        out.push_back({TokKind::End, "", 0, {line_, col_, 0}});
        return true;
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

std::optional<std::int64_t> month_alias(const std::string& ident) {
    static constexpr std::array<std::string_view, 12> months = {
        "jan", "feb", "mar", "apr", "may", "jun",
        "jul", "aug", "sep", "oct", "nov", "dec"};
    std::string lower;
    lower.reserve(ident.size());
    for (char c : ident) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (std::size_t i = 0; i < months.size(); ++i)
        if (lower == months[i]) return static_cast<std::int64_t>(i + 1);
    return std::nullopt;
}

struct ParseError {
    SourceSpan span;
    std::string message;
};

// Recursive-descent parser over the token stream. Families are looked up
// in declaration order, so a family must be declared before any event
// that references it.
class Parser {
public:
    Parser(std::vector<Token> tokens, std::string source_name)
        : tokens_(std::move(tokens)), source_name_(std::move(source_name)) {}

    ParseResult parse_file() {
        ParseResult result;
        std::vector<CategoricalFamily> families;
        std::vector<NamedEvent> events;
        // Events are type-checked against the families declared so far;
        // rebuilding the space per declaration keeps lookups simple.
        SampleSpace space;
        try {
            while (peek().kind != TokKind::End) {
                const Token& head = expect(TokKind::Ident, "'space' or 'event'");
                if (head.text == "space") {
                    CategoricalFamily fam = parse_space_decl(head, families);
                    families.push_back(std::move(fam));
                    space = SampleSpace(families);
                } else if (head.text == "event") {
                    NamedEvent ev = parse_event_decl(space, events);
                    events.push_back(std::move(ev));
                } else {
                    throw ParseError{head.span, "expected 'space' or 'event', got '" + head.text + "'"};
                }
            }
        } catch (const ParseError& err) {
            result.diagnostics.push_back({err.span, err.message, Severity::Error});
            return result;
        }
        result.problem = ProblemSet{std::move(space), std::move(events), source_name_};
        return result;
    }

    std::vector<ExprPtr> parse_atoms(const SampleSpace& space, ParseResult& diag_sink) {
        std::vector<ExprPtr> atoms;
        try {
            atoms.push_back(parse_atom(space));
            while (peek().kind == TokKind::Comma) {
                next();
                atoms.push_back(parse_atom(space));
            }
            if (peek().kind != TokKind::End)
                throw ParseError{peek().span, "expected ',' or end of atom list"};
        } catch (const ParseError& err) {
            diag_sink.diagnostics.push_back({err.span, err.message, Severity::Error});
            atoms.clear();
        }
        return atoms;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_++]; }

    const Token& expect(TokKind kind, const std::string& what) {
        if (peek().kind != kind)
            throw ParseError{peek().span, "expected " + what + ", got '" +
                                              (peek().kind == TokKind::End ? "end of input" : peek().text) + "'"};
        return next();
    }

    CategoricalFamily parse_space_decl(const Token& head,
                                       const std::vector<CategoricalFamily>& families) {
        const Token& name = expect(TokKind::Ident, "family name");
        if (std::any_of(families.begin(), families.end(),
                        [&](const auto& f) { return f.name == name.text; }))
            throw ParseError{name.span, "duplicate space declaration '" + name.text + "'"};
        expect(TokKind::LBracket, "'['");
        const Token& count = expect(TokKind::Int, "draw count");
        if (count.value < 1)
            throw ParseError{count.span, "draw count must be >= 1"};
        expect(TokKind::RBracket, "']'");
        const Token& kw = expect(TokKind::Ident, "'uniform'");
        if (kw.text != "uniform")
            throw ParseError{kw.span, "expected 'uniform', got '" + kw.text + "'"};
        expect(TokKind::LParen, "'('");
        const Token& card = expect(TokKind::Int, "cardinality");
        if (card.value < 1)
            throw ParseError{card.span, "cardinality must be >= 1"};
        expect(TokKind::RParen, "')'");
        (void)head;
        return CategoricalFamily{name.text, static_cast<int>(count.value), card.value};
    }

    NamedEvent parse_event_decl(const SampleSpace& space,
                                const std::vector<NamedEvent>& events) {
        const Token& name = expect(TokKind::Ident, "event name");
        if (std::any_of(events.begin(), events.end(),
                        [&](const auto& e) { return e.name == name.text; }))
            throw ParseError{name.span, "duplicate event name '" + name.text + "'"};
        expect(TokKind::Colon, "':'");
        ExprPtr expr = parse_or(space);
        return NamedEvent{name.text, std::move(expr)};
    }

    ExprPtr parse_or(const SampleSpace& space) {
        std::vector<ExprPtr> children;
        children.push_back(parse_and(space));
        while (peek().kind == TokKind::Ident && peek().text == "or") {
            next();
            children.push_back(parse_and(space));
        }
        if (children.size() == 1) return std::move(children.front());
        return make_or(std::move(children));
    }

    ExprPtr parse_and(const SampleSpace& space) {
        std::vector<ExprPtr> children;
        children.push_back(parse_unary(space));
        while (peek().kind == TokKind::Ident && peek().text == "and") {
            next();
            children.push_back(parse_unary(space));
        }
        if (children.size() == 1) return std::move(children.front());
        return make_and(std::move(children));
    }

    ExprPtr parse_unary(const SampleSpace& space) {
        if (peek().kind == TokKind::Ident) {
            if (peek().text == "not") {
                next();
                return make_not(parse_unary(space));
            }
            if (peek().text == "true") {
                next();
                return make_true();
            }
            if (peek().text == "false") {
                next();
                return make_false();
            }
        }
        if (peek().kind == TokKind::LParen) {
            next();
            ExprPtr inner = parse_or(space);
            expect(TokKind::RParen, "')'");
            return inner;
        }
        return parse_atom(space);
    }

    ExprPtr parse_atom(const SampleSpace& space) {
        auto [lhs, lhs_span] = parse_ref(space);
        Cmp cmp;
        if (peek().kind == TokKind::EqEq) {
            cmp = Cmp::Eq;
            next();
        } else if (peek().kind == TokKind::BangEq) {
            cmp = Cmp::Neq;
            next();
        } else {
            throw ParseError{peek().span, "expected '==' or '!='"};
        }
        const CategoricalFamily* lhs_fam = space.find(lhs.family);
        std::variant<VarRef, std::int64_t> rhs;
        if (peek().kind == TokKind::Int) {
            const Token& c = next();
            if (lhs_fam && (c.value < 1 || c.value > lhs_fam->cardinality))
                throw ParseError{c.span, "constant " + c.text + " out of range 1.." +
                                             std::to_string(lhs_fam->cardinality) +
                                             " for family '" + lhs_fam->name + "'"};
            rhs = c.value;
        } else if (peek().kind == TokKind::Ident && month_alias(peek().text) &&
                   !(tokens_[pos_ + 1].kind == TokKind::LBracket)) {
            const Token& c = next();
            if (!lhs_fam || lhs_fam->cardinality != 12)
                throw ParseError{c.span, "month name '" + c.text +
                                             "' requires a family of cardinality 12"};
            rhs = *month_alias(c.text);
        } else {
            auto [ref, span] = parse_ref(space);
            if (ref == lhs)
                throw ParseError{span, "degenerate self-comparison on " + ref.family +
                                           "[" + std::to_string(ref.index) + "]"};
            rhs = std::move(ref);
        }
        return make_atom(std::move(lhs), cmp, std::move(rhs));
    }

    std::pair<VarRef, SourceSpan> parse_ref(const SampleSpace& space) {
        const Token& name = expect(TokKind::Ident, "draw reference");
        const CategoricalFamily* fam = space.find(name.text);
        if (!fam)
            throw ParseError{name.span, "unknown family '" + name.text + "'"};
        expect(TokKind::LBracket, "'['");
        const Token& index = expect(TokKind::Int, "draw index");
        if (index.value < 0 || index.value >= fam->count)
            throw ParseError{index.span, "index " + index.text + " out of range for '" +
                                             fam->name + "' (count " +
                                             std::to_string(fam->count) + ")"};
        expect(TokKind::RBracket, "']'");
        return {VarRef{name.text, static_cast<int>(index.value)}, name.span};
    }

    std::vector<Token> tokens_;
    std::string source_name_;
    std::size_t pos_ = 0;
};

}  // namespace

ParseResult parse_problem(std::string_view text, std::string source_name) {
    std::vector<Token> tokens;
    LexError lex_error;
    if (!Lexer(text).tokenize(tokens, lex_error)) {
        ParseResult result;
        result.diagnostics.push_back({lex_error.span, lex_error.message, Severity::Error});
        return result;
    }
    return Parser(std::move(tokens), std::move(source_name)).parse_file();
}

AtomListResult parse_atom_list(std::string_view text, const SampleSpace& space) {
    AtomListResult result;
    std::vector<Token> tokens;
    LexError lex_error;
    if (!Lexer(text).tokenize(tokens, lex_error)) {
        result.diagnostics.push_back({lex_error.span, lex_error.message, Severity::Error});
        return result;
    }
    ParseResult sink;
    Parser parser(std::move(tokens), "<atoms>");
    result.atoms = parser.parse_atoms(space, sink);
    result.diagnostics = std::move(sink.diagnostics);
    return result;
}

namespace {

// or = 0, and = 1, not = 2, atom/literal = 3. A child is parenthesized
// when its level is not above the context's requirement, which also
// keeps hand-built nested And(And(..)) trees structurally stable under
// reparse (the parser flattens unparenthesized chains).
int precedence_of(const EventExpr& expr) {
    if (std::holds_alternative<OrNode>(expr.node)) return 0;
    if (std::holds_alternative<AndNode>(expr.node)) return 1;
    if (std::holds_alternative<NotNode>(expr.node)) return 2;
    return 3;
}

void print_expr(const EventExpr& expr, int min_level, std::string& out) {
    const bool parens = precedence_of(expr) < min_level;
    if (parens) out += '(';
    if (const auto* atom = std::get_if<Atom>(&expr.node)) {
        out += atom->lhs.family + "[" + std::to_string(atom->lhs.index) + "]";
        out += atom->cmp == Cmp::Eq ? " == " : " != ";
        if (const auto* rv = std::get_if<VarRef>(&atom->rhs))
            out += rv->family + "[" + std::to_string(rv->index) + "]";
        else
            out += std::to_string(std::get<std::int64_t>(atom->rhs));
    } else if (const auto* n = std::get_if<NotNode>(&expr.node)) {
        out += "not ";
        print_expr(*n->child, 2, out);
    } else if (const auto* a = std::get_if<AndNode>(&expr.node)) {
        for (std::size_t i = 0; i < a->children.size(); ++i) {
            if (i) out += " and ";
            print_expr(*a->children[i], 2, out);
        }
    } else if (const auto* o = std::get_if<OrNode>(&expr.node)) {
        for (std::size_t i = 0; i < o->children.size(); ++i) {
            if (i) out += " or ";
            print_expr(*o->children[i], 1, out);
        }
    } else if (std::holds_alternative<TrueLit>(expr.node)) {
        out += "true";
    } else {
        out += "false";
    }
    if (parens) out += ')';
}

}  // namespace

std::string pretty_print(const EventExpr& expr) {
    std::string out;
    print_expr(expr, 0, out);
    return out;
}

}  // namespace probcheck
