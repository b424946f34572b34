#include "probcheck/ambiguity.hpp"

#include "probcheck/parser.hpp"

#include <stdexcept>

namespace probcheck {

ReadingPair dual_readings(const SampleSpace& space, const std::vector<ExprPtr>& atoms,
                          std::int64_t enumeration_cap) {
    if (atoms.empty())
        throw std::invalid_argument("dual_readings: empty atom list");
    for (const auto& atom : atoms) {
        if (!std::holds_alternative<Atom>(atom->node))
            throw ValidationFailure("dual_readings: inputs must be atoms");
        auto diagnostics = validate(atom, space);
        if (!diagnostics.empty())
            throw ValidationFailure("invalid atom: " + diagnostics.front());
    }

    ReadingPair pair;
    if (atoms.size() == 1) {
        // The fork collapses: both readings are the plain negation.
        pair.loose_reading = make_not(atoms.front());
        pair.strict_reading = make_not(atoms.front());
    } else {
        pair.loose_reading = make_not(make_and(atoms));
        std::vector<ExprPtr> negated;
        negated.reserve(atoms.size());
        for (const auto& atom : atoms) negated.push_back(make_not(atom));
        pair.strict_reading = make_and(std::move(negated));
    }
    pair.p_loose = prob_compositional(space, pair.loose_reading, enumeration_cap).probability;
    pair.p_strict = prob_compositional(space, pair.strict_reading, enumeration_cap).probability;
    pair.divergence = pair.p_loose - pair.p_strict;
    pair.ambiguous = !pair.divergence.is_zero();
    return pair;
}

namespace {

bool is_not_of_and(const EventExpr& expr) {
    const auto* n = std::get_if<NotNode>(&expr.node);
    return n && std::holds_alternative<AndNode>(n->child->node);
}

void collect_sites(const ExprPtr& expr, std::vector<int>& path,
                   std::vector<AmbiguitySite>& out) {
    if (is_not_of_and(*expr))
        out.push_back({path, expr});
    auto descend = [&](const ExprPtr& child, int index) {
        path.push_back(index);
        collect_sites(child, path, out);
        path.pop_back();
    };
    if (const auto* n = std::get_if<NotNode>(&expr->node)) {
        descend(n->child, 0);
    } else if (const auto* a = std::get_if<AndNode>(&expr->node)) {
        for (std::size_t i = 0; i < a->children.size(); ++i)
            descend(a->children[i], static_cast<int>(i));
    } else if (const auto* o = std::get_if<OrNode>(&expr->node)) {
        for (std::size_t i = 0; i < o->children.size(); ++i)
            descend(o->children[i], static_cast<int>(i));
    }
}

}  // namespace

std::vector<AmbiguitySite> detect_ambiguity_sites(const ExprPtr& expr) {
    std::vector<AmbiguitySite> out;
    std::vector<int> path;
    collect_sites(expr, path, out);
    return out;
}

ReadingReport explain(const ReadingPair& pair) {
    ReadingReport report;
    report.loose_text = pretty_print(pair.loose_reading);
    report.strict_text = pretty_print(pair.strict_reading);
    report.loose_fraction = pair.p_loose.fraction_str();
    report.strict_fraction = pair.p_strict.fraction_str();
    report.loose_decimal = to_repeating_decimal(pair.p_loose);
    report.strict_decimal = to_repeating_decimal(pair.p_strict);
    report.divergence_fraction = pair.divergence.fraction_str();
    report.divergence_decimal = to_repeating_decimal(pair.divergence);
    report.readings_coincide = pair.divergence.is_zero();
    return report;
}

std::string path_to_string(const std::vector<int>& path) {
    if (path.empty()) return "root";
    std::string out = "root";
    for (int index : path) out += "." + std::to_string(index);
    return out;
}

}  // namespace probcheck
