#ifndef PROBCHECK_EXACT_HPP
#define PROBCHECK_EXACT_HPP

#include "probcheck/model.hpp"
#include "probcheck/rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace probcheck {

inline constexpr std::int64_t kDefaultEnumerationCap = 10'000'000;

enum class ExactMethod { Enumeration, Compositional };

struct ExactResult {
    Rational probability;
    ExactMethod method = ExactMethod::Enumeration;
    BigInt satisfying_count;  // meaningful for Enumeration only
    BigInt space_size;
};

struct SpaceTooLarge : std::runtime_error {
    BigInt size;
    BigInt cap;
    SpaceTooLarge(BigInt size_, BigInt cap_)
        : std::runtime_error("sample space has " + size_.str() +
                             " outcomes, exceeding the enumeration cap of " + cap_.str()),
          size(std::move(size_)),
          cap(std::move(cap_)) {}
};

struct ValidationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Full enumeration of the space, row-major over families in declaration
// order and draws in index order. Throws SpaceTooLarge past the cap.
ExactResult prob_enumerate(const SampleSpace& space, const ExprPtr& expr,
                           std::int64_t enumeration_cap = kDefaultEnumerationCap);

// Closed-form recursion: complement rule at Not, independence product at
// And over disjoint draws, inclusion-exclusion at Or, atom_probability
// at the leaves. And with shared draws falls back to enumeration over
// only the involved draws (the rest marginalize out).
ExactResult prob_compositional(const SampleSpace& space, const ExprPtr& expr,
                               std::int64_t enumeration_cap = kDefaultEnumerationCap);

Rational atom_probability(const SampleSpace& space, const Atom& atom);

// C(n,k) * p^k * (1-p)^(n-k), exact.
Rational binomial_term(unsigned k, unsigned n, const Rational& p);

// Long-division decimal rendering for 0 <= r <= 1, repetend in
// parentheses, e.g. 11/12 -> "0.91(6)", 1/4 -> "0.25".
std::string to_repeating_decimal(const Rational& r);

}  // namespace probcheck

#endif  // PROBCHECK_EXACT_HPP
