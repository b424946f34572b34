#include "probcheck/exact.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace probcheck {
namespace {

void require_valid(const SampleSpace& space, const ExprPtr& expr) {
    auto diagnostics = validate(expr, space);
    if (!diagnostics.empty())
        throw ValidationFailure("invalid expression: " + diagnostics.front());
}

// Counts satisfying assignments over a subset of slots, every other slot
// left unassigned. Returns (count, number of assignments).
std::pair<BigInt, BigInt> count_over_slots(const SampleSpace& space, const ExprPtr& expr,
                                           const std::vector<int>& slots,
                                           std::int64_t enumeration_cap) {
    BigInt total = 1;
    for (int slot : slots) total *= space.slot_cardinality(slot);
    if (total > enumeration_cap) throw SpaceTooLarge(total, BigInt(enumeration_cap));

    Outcome outcome(space);
    for (int slot : slots) outcome.set(slot, 1);
    BigInt count = 0;
    for (;;) {
        if (evaluate(expr, outcome)) ++count;
        // Odometer increment, last slot fastest.
        int pos = static_cast<int>(slots.size()) - 1;
        while (pos >= 0) {
            int slot = slots[pos];
            if (outcome.get(slot) < space.slot_cardinality(slot)) {
                outcome.set(slot, outcome.get(slot) + 1);
                break;
            }
            outcome.set(slot, 1);
            --pos;
        }
        if (pos < 0) break;
    }
    return {count, total};
}

std::vector<int> all_slots(const SampleSpace& space) {
    std::vector<int> slots(space.total_slots());
    for (int i = 0; i < space.total_slots(); ++i) slots[i] = i;
    return slots;
}

std::vector<int> slots_of(const SampleSpace& space, const std::set<VarRef>& vars) {
    std::vector<int> slots;
    for (const auto& v : vars) {
        auto slot = space.slot_of(v.family, v.index);
        if (slot) slots.push_back(*slot);
    }
    std::sort(slots.begin(), slots.end());
    return slots;
}

bool pairwise_disjoint(const std::vector<std::set<VarRef>>& var_sets) {
    std::set<VarRef> seen;
    for (const auto& vars : var_sets) {
        for (const auto& v : vars)
            if (!seen.insert(v).second) return false;
    }
    return true;
}

Rational compositional(const SampleSpace& space, const ExprPtr& expr,
                       std::int64_t enumeration_cap);

// Probability of a conjunction; shared draws fall back to enumeration
// over the involved slots only.
Rational conjunction_probability(const SampleSpace& space,
                                 const std::vector<ExprPtr>& children,
                                 std::int64_t enumeration_cap) {
    if (children.size() == 1) return compositional(space, children.front(), enumeration_cap);
    std::vector<std::set<VarRef>> var_sets;
    var_sets.reserve(children.size());
    for (const auto& c : children) var_sets.push_back(free_vars(c));
    if (pairwise_disjoint(var_sets)) {
        Rational product(1);
        for (const auto& c : children)
            product = product * compositional(space, c, enumeration_cap);
        return product;
    }
    ExprPtr joint = make_and(children);
    auto [count, total] = count_over_slots(space, joint, slots_of(space, free_vars(joint)),
                                           enumeration_cap);
    return Rational(count, total);
}

Rational compositional(const SampleSpace& space, const ExprPtr& expr,
                       std::int64_t enumeration_cap) {
    if (std::holds_alternative<TrueLit>(expr->node)) return Rational(1);
    if (std::holds_alternative<FalseLit>(expr->node)) return Rational(0);
    if (const auto* atom = std::get_if<Atom>(&expr->node))
        return atom_probability(space, *atom);
    if (const auto* n = std::get_if<NotNode>(&expr->node))
        return Rational(1) - compositional(space, n->child, enumeration_cap);
    if (const auto* a = std::get_if<AndNode>(&expr->node))
        return conjunction_probability(space, a->children, enumeration_cap);
    const auto& children = std::get<OrNode>(expr->node).children;
    // Inclusion-exclusion over nonempty child subsets.
    Rational result(0);
    const std::size_t n_children = children.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n_children); ++mask) {
        std::vector<ExprPtr> subset;
        for (std::size_t i = 0; i < n_children; ++i)
            if (mask & (std::size_t{1} << i)) subset.push_back(children[i]);
        Rational term = conjunction_probability(space, subset, enumeration_cap);
        if (__builtin_popcountll(mask) % 2 == 1)
            result = result + term;
        else
            result = result - term;
    }
    return result;
}

}  // namespace

ExactResult prob_enumerate(const SampleSpace& space, const ExprPtr& expr,
                           std::int64_t enumeration_cap) {
    require_valid(space, expr);
    auto [count, total] = count_over_slots(space, expr, all_slots(space), enumeration_cap);
    return {Rational(count, total), ExactMethod::Enumeration, count, total};
}

ExactResult prob_compositional(const SampleSpace& space, const ExprPtr& expr,
                               std::int64_t enumeration_cap) {
    require_valid(space, expr);
    Rational p = compositional(space, expr, enumeration_cap);
    return {std::move(p), ExactMethod::Compositional, BigInt(0), space.total_size()};
}

Rational atom_probability(const SampleSpace& space, const Atom& atom) {
    const auto* lhs_fam = space.find(atom.lhs.family);
    if (!lhs_fam) throw ValidationFailure("unknown family '" + atom.lhs.family + "'");
    const std::int64_t k1 = lhs_fam->cardinality;
    Rational p_eq(0);
    if (const auto* rv = std::get_if<VarRef>(&atom.rhs)) {
        if (*rv == atom.lhs)
            throw ValidationFailure("degenerate self-comparison");
        const auto* rhs_fam = space.find(rv->family);
        if (!rhs_fam) throw ValidationFailure("unknown family '" + rv->family + "'");
        const std::int64_t k2 = rhs_fam->cardinality;
        // Both draws uniform and independent; they agree on each of the
        // min(k1, k2) common values with probability 1/(k1*k2).
        p_eq = Rational(std::min(k1, k2), 1) / Rational(k1 * k2, 1);
    } else {
        const std::int64_t value = std::get<std::int64_t>(atom.rhs);
        if (value < 1 || value > k1)
            throw ValidationFailure("constant out of range");
        p_eq = Rational(1, k1);
    }
    return atom.cmp == Cmp::Eq ? p_eq : Rational(1) - p_eq;
}

Rational binomial_term(unsigned k, unsigned n, const Rational& p) {
    if (k > n) throw std::invalid_argument("binomial_term: k > n");
    if (p < Rational(0) || p > Rational(1))
        throw std::invalid_argument("binomial_term: p outside [0, 1]");
    BigInt coeff = 1;
    for (unsigned i = 0; i < k; ++i) {
        coeff *= n - i;
        coeff /= i + 1;
    }
    return Rational(coeff) * p.pow(k) * (Rational(1) - p).pow(n - k);
}

std::string to_repeating_decimal(const Rational& r) {
    if (r < Rational(0) || r > Rational(1))
        throw std::invalid_argument("to_repeating_decimal: value outside [0, 1]");
    BigInt remainder = r.num() % r.den();
    std::string integer_part = BigInt(r.num() / r.den()).str();
    if (remainder == 0) return integer_part;

    // Long division; a repeated remainder marks the repetend start.
    std::string digits;
    std::map<BigInt, std::size_t> seen;
    std::size_t repeat_at = std::string::npos;
    while (remainder != 0) {
        auto [it, inserted] = seen.emplace(remainder, digits.size());
        if (!inserted) {
            repeat_at = it->second;
            break;
        }
        remainder *= 10;
        BigInt digit = remainder / r.den();
        digits += static_cast<char>('0' + digit.convert_to<int>());
        remainder %= r.den();
    }
    std::string out = integer_part + ".";
    if (repeat_at == std::string::npos) return out + digits;
    out += digits.substr(0, repeat_at);
    out += "(" + digits.substr(repeat_at) + ")";
    return out;
}

}  // namespace probcheck
