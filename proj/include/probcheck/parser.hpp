#ifndef PROBCHECK_PARSER_HPP
#define PROBCHECK_PARSER_HPP

#include "probcheck/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace probcheck {

struct SourceSpan {
    int line = 1;    // 1-based
    int column = 1;  // 1-based
    int length = 0;
    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class Severity { Error, Warning };

struct ParseDiagnostic {
    SourceSpan span;
    std::string message;
    Severity severity = Severity::Error;
};

struct NamedEvent {
    std::string name;
    ExprPtr expr;
};

struct ProblemSet {
    SampleSpace space;
    std::vector<NamedEvent> events;
    std::string source_name;

    const NamedEvent* find_event(const std::string& name) const {
        for (const auto& ev : events)
            if (ev.name == name) return &ev;
        return nullptr;
    }
};

struct ParseResult {
    std::optional<ProblemSet> problem;  // engaged iff no error diagnostics
    std::vector<ParseDiagnostic> diagnostics;
    bool ok() const { return problem.has_value(); }
};

// Problem file grammar:
//   file      := { decl }
//   decl      := "space" IDENT "[" INT "]" "uniform" "(" INT ")"
//              | "event" IDENT ":" expr
//   expr      := orexpr
//   orexpr    := andexpr { "or" andexpr }
//   andexpr   := unary { "and" unary }
//   unary     := "not" unary | "(" expr ")" | "true" | "false" | atom
//   atom      := ref ("==" | "!=") (ref | INT | MONTH)
//   ref       := IDENT "[" INT "]"
// "#" starts a comment running to end of line. "and" binds tighter than
// "or", "not" tightest. MONTH is jan..dec (case-insensitive), accepted
// only against a family of cardinality 12.
ParseResult parse_problem(std::string_view text, std::string source_name = "<input>");

// Comma-separated list of atoms (same atom syntax as the file format),
// resolved against an existing space. Used by the analyze command.
struct AtomListResult {
    std::vector<ExprPtr> atoms;
    std::vector<ParseDiagnostic> diagnostics;
    bool ok() const { return diagnostics.empty(); }
};
AtomListResult parse_atom_list(std::string_view text, const SampleSpace& space);

// Canonical text that reparses to a structurally identical AST, with
// minimal parentheses under the grammar's precedence.
std::string pretty_print(const EventExpr& expr);
inline std::string pretty_print(const ExprPtr& expr) { return pretty_print(*expr); }

}  // namespace probcheck

#endif  // PROBCHECK_PARSER_HPP
