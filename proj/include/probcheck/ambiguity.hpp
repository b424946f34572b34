#ifndef PROBCHECK_AMBIGUITY_HPP
#define PROBCHECK_AMBIGUITY_HPP

#include "probcheck/exact.hpp"
#include "probcheck/model.hpp"

#include <string>
#include <vector>

namespace probcheck {

// The two De Morgan readings of a negated condition over several draws:
// loose = "not both" = Not(And(atoms)), strict = "neither" = And of
// per-atom negations. The strict reading implies the loose one.
struct ReadingPair {
    ExprPtr loose_reading;
    ExprPtr strict_reading;
    Rational p_loose;
    Rational p_strict;
    Rational divergence;  // p_loose - p_strict, always >= 0
    bool ambiguous = false;
};

// A subexpression of shape Not(And(c1..cn)), n >= 2. The path is the
// sequence of child indices from the root (Not counts as one child).
struct AmbiguitySite {
    std::vector<int> path;
    ExprPtr sub_expression;
};

ReadingPair dual_readings(const SampleSpace& space, const std::vector<ExprPtr>& atoms,
                          std::int64_t enumeration_cap = kDefaultEnumerationCap);

std::vector<AmbiguitySite> detect_ambiguity_sites(const ExprPtr& expr);

struct ReadingReport {
    std::string loose_text;
    std::string strict_text;
    std::string loose_fraction;
    std::string strict_fraction;
    std::string loose_decimal;
    std::string strict_decimal;
    std::string divergence_fraction;
    std::string divergence_decimal;
    bool readings_coincide = false;  // logically equivalent on the space
};

ReadingReport explain(const ReadingPair& pair);

std::string path_to_string(const std::vector<int>& path);

}  // namespace probcheck

#endif  // PROBCHECK_AMBIGUITY_HPP
