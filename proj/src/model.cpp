#include "probcheck/model.hpp"

#include <algorithm>

namespace probcheck {

SampleSpace::SampleSpace(std::vector<CategoricalFamily> families)
    : families_(std::move(families)) {
    for (const auto& fam : families_) {
        if (fam.count < 1 || fam.cardinality < 1)
            throw std::invalid_argument("family " + fam.name + ": count and cardinality must be >= 1");
        for (const auto& other : families_) {
            if (&other != &fam && other.name == fam.name)
                throw std::invalid_argument("duplicate family name: " + fam.name);
        }
        for (int i = 0; i < fam.count; ++i)
            slot_cardinality_.push_back(fam.cardinality);
    }
}

const CategoricalFamily* SampleSpace::find(const std::string& name) const {
    for (const auto& fam : families_)
        if (fam.name == name) return &fam;
    return nullptr;
}

std::optional<int> SampleSpace::slot_of(const std::string& family, int index) const {
    int base = 0;
    for (const auto& fam : families_) {
        if (fam.name == family) {
            if (index < 0 || index >= fam.count) return std::nullopt;
            return base + index;
        }
        base += fam.count;
    }
    return std::nullopt;
}

BigInt SampleSpace::total_size() const {
    BigInt total = 1;
    for (const auto& fam : families_)
        for (int i = 0; i < fam.count; ++i)
            total *= fam.cardinality;
    return total;
}

ExprPtr make_atom(VarRef lhs, Cmp cmp, std::variant<VarRef, std::int64_t> rhs) {
    return std::make_shared<EventExpr>(EventExpr{Atom{std::move(lhs), cmp, std::move(rhs)}});
}
ExprPtr make_not(ExprPtr child) {
    return std::make_shared<EventExpr>(EventExpr{NotNode{std::move(child)}});
}
ExprPtr make_and(std::vector<ExprPtr> children) {
    if (children.size() < 2)
        throw std::invalid_argument("And requires at least 2 children");
    return std::make_shared<EventExpr>(EventExpr{AndNode{std::move(children)}});
}
ExprPtr make_or(std::vector<ExprPtr> children) {
    if (children.size() < 2)
        throw std::invalid_argument("Or requires at least 2 children");
    return std::make_shared<EventExpr>(EventExpr{OrNode{std::move(children)}});
}
ExprPtr make_true() { return std::make_shared<EventExpr>(EventExpr{TrueLit{}}); }
ExprPtr make_false() { return std::make_shared<EventExpr>(EventExpr{FalseLit{}}); }

bool structurally_equal(const EventExpr& a, const EventExpr& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* aa = std::get_if<Atom>(&a.node)) {
        const auto& ba = std::get<Atom>(b.node);
        return aa->lhs == ba.lhs && aa->cmp == ba.cmp && aa->rhs == ba.rhs;
    }
    if (const auto* an = std::get_if<NotNode>(&a.node))
        return structurally_equal(*an->child, *std::get<NotNode>(b.node).child);
    auto equal_children = [](const auto& xs, const auto& ys) {
        if (xs.size() != ys.size()) return false;
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (!structurally_equal(*xs[i], *ys[i])) return false;
        return true;
    };
    if (const auto* aand = std::get_if<AndNode>(&a.node))
        return equal_children(aand->children, std::get<AndNode>(b.node).children);
    if (const auto* aor = std::get_if<OrNode>(&a.node))
        return equal_children(aor->children, std::get<OrNode>(b.node).children);
    return true;  // TrueLit / FalseLit
}

namespace {

std::int64_t resolve(const VarRef& ref, const Outcome& outcome) {
    auto slot = outcome.space().slot_of(ref.family, ref.index);
    if (!slot)
        throw UnresolvedVarRef("unresolved reference " + ref.family + "[" +
                               std::to_string(ref.index) + "]");
    std::int64_t value = outcome.get(*slot);
    if (value == 0)
        throw UnresolvedVarRef("unassigned draw " + ref.family + "[" +
                               std::to_string(ref.index) + "]");
    return value;
}

}  // namespace

bool evaluate(const EventExpr& expr, const Outcome& outcome) {
    if (const auto* atom = std::get_if<Atom>(&expr.node)) {
        std::int64_t lhs = resolve(atom->lhs, outcome);
        std::int64_t rhs = std::holds_alternative<VarRef>(atom->rhs)
                               ? resolve(std::get<VarRef>(atom->rhs), outcome)
                               : std::get<std::int64_t>(atom->rhs);
        return atom->cmp == Cmp::Eq ? lhs == rhs : lhs != rhs;
    }
    if (const auto* n = std::get_if<NotNode>(&expr.node))
        return !evaluate(*n->child, outcome);
    if (const auto* a = std::get_if<AndNode>(&expr.node)) {
        for (const auto& c : a->children)
            if (!evaluate(*c, outcome)) return false;
        return true;
    }
    if (const auto* o = std::get_if<OrNode>(&expr.node)) {
        for (const auto& c : o->children)
            if (evaluate(*c, outcome)) return true;
        return false;
    }
    return std::holds_alternative<TrueLit>(expr.node);
}

namespace {

void check_ref(const VarRef& ref, const SampleSpace& space,
               std::vector<std::string>& out) {
    const auto* fam = space.find(ref.family);
    if (!fam) {
        out.push_back("unknown family '" + ref.family + "'");
        return;
    }
    if (ref.index < 0 || ref.index >= fam->count)
        out.push_back("index out of range: " + ref.family + "[" +
                      std::to_string(ref.index) + "] (count " +
                      std::to_string(fam->count) + ")");
}

void validate_into(const EventExpr& expr, const SampleSpace& space,
                   std::vector<std::string>& out) {
    if (const auto* atom = std::get_if<Atom>(&expr.node)) {
        check_ref(atom->lhs, space, out);
        if (const auto* rv = std::get_if<VarRef>(&atom->rhs)) {
            check_ref(*rv, space, out);
            if (*rv == atom->lhs)
                out.push_back("degenerate self-comparison on " + atom->lhs.family +
                              "[" + std::to_string(atom->lhs.index) + "]");
        } else {
            std::int64_t value = std::get<std::int64_t>(atom->rhs);
            const auto* fam = space.find(atom->lhs.family);
            if (fam && (value < 1 || value > fam->cardinality))
                out.push_back("constant " + std::to_string(value) +
                              " out of range 1.." + std::to_string(fam->cardinality) +
                              " for family '" + fam->name + "'");
        }
        return;
    }
    if (const auto* n = std::get_if<NotNode>(&expr.node)) {
        validate_into(*n->child, space, out);
        return;
    }
    if (const auto* a = std::get_if<AndNode>(&expr.node)) {
        for (const auto& c : a->children) validate_into(*c, space, out);
        return;
    }
    if (const auto* o = std::get_if<OrNode>(&expr.node)) {
        for (const auto& c : o->children) validate_into(*c, space, out);
        return;
    }
}

}  // namespace

std::vector<std::string> validate(const EventExpr& expr, const SampleSpace& space) {
    std::vector<std::string> out;
    validate_into(expr, space, out);
    return out;
}

ExprPtr complement(ExprPtr expr) { return make_not(std::move(expr)); }

namespace {

ExprPtr nnf(const ExprPtr& expr, bool negated) {
    if (const auto* atom = std::get_if<Atom>(&expr->node)) {
        if (!negated) return expr;
        Cmp flipped = atom->cmp == Cmp::Eq ? Cmp::Neq : Cmp::Eq;
        return make_atom(atom->lhs, flipped, atom->rhs);
    }
    if (const auto* n = std::get_if<NotNode>(&expr->node))
        return nnf(n->child, !negated);
    if (const auto* a = std::get_if<AndNode>(&expr->node)) {
        std::vector<ExprPtr> children;
        children.reserve(a->children.size());
        for (const auto& c : a->children) children.push_back(nnf(c, negated));
        return negated ? make_or(std::move(children)) : make_and(std::move(children));
    }
    if (const auto* o = std::get_if<OrNode>(&expr->node)) {
        std::vector<ExprPtr> children;
        children.reserve(o->children.size());
        for (const auto& c : o->children) children.push_back(nnf(c, negated));
        return negated ? make_and(std::move(children)) : make_or(std::move(children));
    }
    bool truth = std::holds_alternative<TrueLit>(expr->node);
    return truth != negated ? make_true() : make_false();
}

}  // namespace

ExprPtr to_nnf(const ExprPtr& expr) { return nnf(expr, false); }

std::set<VarRef> free_vars(const EventExpr& expr) {
    std::set<VarRef> out;
    if (const auto* atom = std::get_if<Atom>(&expr.node)) {
        out.insert(atom->lhs);
        if (const auto* rv = std::get_if<VarRef>(&atom->rhs)) out.insert(*rv);
    } else if (const auto* n = std::get_if<NotNode>(&expr.node)) {
        out = free_vars(*n->child);
    } else if (const auto* a = std::get_if<AndNode>(&expr.node)) {
        for (const auto& c : a->children) out.merge(free_vars(*c));
    } else if (const auto* o = std::get_if<OrNode>(&expr.node)) {
        for (const auto& c : o->children) out.merge(free_vars(*c));
    }
    return out;
}

}  // namespace probcheck
