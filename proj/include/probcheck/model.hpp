#ifndef PROBCHECK_MODEL_HPP
#define PROBCHECK_MODEL_HPP

#include "probcheck/rational.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace probcheck {

// One family of independent uniform categorical draws, e.g. 2 people
// over 12 months.
struct CategoricalFamily {
    std::string name;
    int count = 1;           // number of draws
    std::int64_t cardinality = 1;  // categories are 1..cardinality
};

class SampleSpace {
public:
    SampleSpace() = default;
    explicit SampleSpace(std::vector<CategoricalFamily> families);

    const std::vector<CategoricalFamily>& families() const { return families_; }
    const CategoricalFamily* find(const std::string& name) const;

    // Flat slot index of draw (family, index); slots follow declaration
    // order, draws in index order.
    std::optional<int> slot_of(const std::string& family, int index) const;
    int total_slots() const { return static_cast<int>(slot_cardinality_.size()); }
    std::int64_t slot_cardinality(int slot) const { return slot_cardinality_[slot]; }

    // Product over families of cardinality^count, recomputed on demand.
    BigInt total_size() const;

private:
    std::vector<CategoricalFamily> families_;
    std::vector<std::int64_t> slot_cardinality_;
};

struct VarRef {
    std::string family;
    int index = 0;
    friend bool operator==(const VarRef&, const VarRef&) = default;
    friend auto operator<=>(const VarRef&, const VarRef&) = default;
};

enum class Cmp { Eq, Neq };

struct EventExpr;
using ExprPtr = std::shared_ptr<const EventExpr>;

struct Atom {
    VarRef lhs;
    Cmp cmp = Cmp::Eq;
    std::variant<VarRef, std::int64_t> rhs;
};
struct NotNode { ExprPtr child; };
struct AndNode { std::vector<ExprPtr> children; };  // >= 2 children
struct OrNode  { std::vector<ExprPtr> children; };  // >= 2 children
struct TrueLit {};
struct FalseLit {};

struct EventExpr {
    std::variant<Atom, NotNode, AndNode, OrNode, TrueLit, FalseLit> node;
};

ExprPtr make_atom(VarRef lhs, Cmp cmp, std::variant<VarRef, std::int64_t> rhs);
ExprPtr make_not(ExprPtr child);
ExprPtr make_and(std::vector<ExprPtr> children);
ExprPtr make_or(std::vector<ExprPtr> children);
ExprPtr make_true();
ExprPtr make_false();

bool structurally_equal(const EventExpr& a, const EventExpr& b);
inline bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
    return structurally_equal(*a, *b);
}

// Total assignment of category values to every draw of a space.
// Partial outcomes (some slots unassigned) are used internally by the
// exact engine; evaluate throws on an unassigned reference.
class Outcome {
public:
    explicit Outcome(const SampleSpace& space)
        : space_(&space), values_(space.total_slots(), 0) {}

    const SampleSpace& space() const { return *space_; }
    void set(int slot, std::int64_t value) { values_[slot] = value; }
    std::int64_t get(int slot) const { return values_[slot]; }
    std::vector<std::int64_t>& values() { return values_; }
    const std::vector<std::int64_t>& values() const { return values_; }

private:
    const SampleSpace* space_;
    std::vector<std::int64_t> values_;
};

struct UnresolvedVarRef : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Standard boolean semantics; Atom compares assigned values, NEQ is the
// negation of EQ on the same operands.
bool evaluate(const EventExpr& expr, const Outcome& outcome);
inline bool evaluate(const ExprPtr& expr, const Outcome& outcome) {
    return evaluate(*expr, outcome);
}

// One diagnostic per problem found: unknown family, index out of range,
// constant out of range, degenerate self-comparison.
std::vector<std::string> validate(const EventExpr& expr, const SampleSpace& space);
inline std::vector<std::string> validate(const ExprPtr& expr, const SampleSpace& space) {
    return validate(*expr, space);
}

// Not(expr), no simplification.
ExprPtr complement(ExprPtr expr);

// Negation normal form. Negation is absorbed into EQ<->NEQ flips and
// True<->False, so the result contains no Not node at all.
ExprPtr to_nnf(const ExprPtr& expr);

std::set<VarRef> free_vars(const EventExpr& expr);
inline std::set<VarRef> free_vars(const ExprPtr& expr) { return free_vars(*expr); }

}  // namespace probcheck

#endif  // PROBCHECK_MODEL_HPP
