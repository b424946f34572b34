#include "probcheck/exact.hpp"

#include "gen.hpp"
#include "probcheck/parser.hpp"

#include <doctest.h>

using namespace probcheck;

namespace {

ProblemSet corpus_like() {
    ParseResult r = parse_problem(
        "space person[2] uniform(12)\n"
        "event p1: person[0] != person[1]\n"
        "event p2: not (person[0] == may and person[1] == may)\n"
        "event p3: person[0] != may and person[1] != may\n");
    REQUIRE(r.ok());
    return std::move(*r.problem);
}

// Test-only oracle: parse a repeating-decimal rendering back into an
// exact fraction. "0.91(6)" -> 91/100 + 6/900 etc.
BigInt digits_to_bigint(const std::string& digits) {
    BigInt value = 0;
    for (char c : digits) value = value * 10 + (c - '0');
    return value;
}

Rational decimal_to_rational(const std::string& text) {
    auto dot = text.find('.');
    BigInt integer_part = digits_to_bigint(text.substr(0, dot));
    if (dot == std::string::npos) return Rational(integer_part);
    std::string rest = text.substr(dot + 1);
    auto paren = rest.find('(');
    std::string prefix = paren == std::string::npos ? rest : rest.substr(0, paren);
    std::string repetend =
        paren == std::string::npos ? "" : rest.substr(paren + 1, rest.size() - paren - 2);
    BigInt pow10_prefix = 1;
    for (std::size_t i = 0; i < prefix.size(); ++i) pow10_prefix *= 10;
    Rational value(integer_part);
    if (!prefix.empty())
        value = value + Rational(digits_to_bigint(prefix), pow10_prefix);
    if (!repetend.empty()) {
        BigInt nines = 0;
        for (std::size_t i = 0; i < repetend.size(); ++i) nines = nines * 10 + 9;
        value = value + Rational(digits_to_bigint(repetend), nines * pow10_prefix);
    }
    return value;
}

}  // namespace

TEST_CASE("enumeration matches the closed-form corpus answers") {
    ProblemSet corpus = corpus_like();
    ExactResult p1 = prob_enumerate(corpus.space, corpus.events[0].expr);
    CHECK(p1.probability == Rational(11, 12));
    CHECK(p1.satisfying_count == 132);
    CHECK(p1.space_size == 144);

    CHECK(prob_enumerate(corpus.space, corpus.events[1].expr).probability == Rational(143, 144));
    CHECK(prob_enumerate(corpus.space, corpus.events[2].expr).probability == Rational(121, 144));
}

TEST_CASE("compositional closed forms on the corpus") {
    ProblemSet corpus = corpus_like();
    CHECK(prob_compositional(corpus.space, corpus.events[0].expr).probability ==
          Rational(11, 12));
    // 1 - (1/12)^2 via the complement rule.
    CHECK(prob_compositional(corpus.space, corpus.events[1].expr).probability ==
          Rational(143, 144));
    // (11/12)^2 via the independence product.
    CHECK(prob_compositional(corpus.space, corpus.events[2].expr).probability ==
          Rational(121, 144));

    // Inclusion-exclusion route to the same value: 11/12 + 11/12 - (11/12)^2.
    ExprPtr either = make_or({make_atom(VarRef{"person", 0}, Cmp::Neq, std::int64_t{5}),
                              make_atom(VarRef{"person", 1}, Cmp::Neq, std::int64_t{5})});
    CHECK(prob_compositional(corpus.space, either).probability == Rational(143, 144));
    CHECK(prob_enumerate(corpus.space, either).probability == Rational(143, 144));
}

TEST_CASE("atom_probability") {
    SampleSpace space({CategoricalFamily{"person", 2, 12}, CategoricalFamily{"die", 1, 6}});
    CHECK(atom_probability(space, Atom{VarRef{"person", 0}, Cmp::Eq, std::int64_t{5}}) ==
          Rational(1, 12));
    CHECK(atom_probability(space, Atom{VarRef{"person", 0}, Cmp::Neq, VarRef{"person", 1}}) ==
          Rational(11, 12));
    // Cross-family: 6 common values out of 72 joint outcomes.
    CHECK(atom_probability(space, Atom{VarRef{"person", 0}, Cmp::Eq, VarRef{"die", 0}}) ==
          Rational(6, 72));
    CHECK_THROWS_AS(
        atom_probability(space, Atom{VarRef{"person", 0}, Cmp::Eq, VarRef{"person", 0}}),
        ValidationFailure);
}

TEST_CASE("binomial_term") {
    Rational p(1, 12);
    CHECK(binomial_term(1, 2, p) == Rational(11, 72));
    CHECK(binomial_term(0, 2, p) == Rational(121, 144));
    CHECK(binomial_term(2, 2, p) == Rational(1, 144));
    CHECK_THROWS_AS(binomial_term(3, 2, p), std::invalid_argument);

    // The decomposition of "not both": k=0 and k=1 terms.
    CHECK(binomial_term(0, 2, p) + binomial_term(1, 2, p) == Rational(143, 144));
    // Dropping the binomial coefficient lands on the wrong answer 11/12.
    Rational fallacy = Rational(11, 12) * Rational(11, 12) + Rational(1, 12) * Rational(11, 12);
    CHECK(fallacy == Rational(11, 12));
    CHECK_FALSE(fallacy == Rational(143, 144));
}

TEST_CASE("binomial completeness") {
    for (const Rational& p : {Rational(1, 12), Rational(1, 2), Rational(3, 7)}) {
        for (unsigned n = 1; n <= 12; ++n) {
            Rational sum(0);
            for (unsigned k = 0; k <= n; ++k) sum = sum + binomial_term(k, n, p);
            CHECK(sum == Rational(1));
        }
    }
}

TEST_CASE("repeating decimal rendering") {
    CHECK(to_repeating_decimal(Rational(11, 12)) == "0.91(6)");
    CHECK(to_repeating_decimal(Rational(143, 144)) == "0.9930(5)");
    CHECK(to_repeating_decimal(Rational(121, 144)) == "0.8402(7)");
    CHECK(to_repeating_decimal(Rational(1, 4)) == "0.25");
    CHECK(to_repeating_decimal(Rational(1, 3)) == "0.(3)");
    CHECK(to_repeating_decimal(Rational(1, 7)) == "0.(142857)");
    CHECK(to_repeating_decimal(Rational(0)) == "0");
    CHECK(to_repeating_decimal(Rational(1)) == "1");
    CHECK_THROWS_AS(to_repeating_decimal(Rational(3, 2)), std::invalid_argument);
}

TEST_CASE("property: decimal round-trip for random rationals") {
    testgen::Gen gen(99);
    for (int i = 0; i < 100; ++i) {
        std::int64_t den = gen.range(1, 1000);
        std::int64_t num = gen.range(0, den);
        Rational r(num, den);
        CHECK(decimal_to_rational(to_repeating_decimal(r)) == r);
    }
}

TEST_CASE("enumeration cap") {
    SampleSpace big({CategoricalFamily{"person", 8, 12}});  // 12^8 outcomes
    ExprPtr expr = make_atom(VarRef{"person", 0}, Cmp::Eq, std::int64_t{5});
    CHECK_THROWS_AS(prob_enumerate(big, expr), SpaceTooLarge);
    CHECK_NOTHROW(prob_enumerate(big, expr, 500'000'000));
}

TEST_CASE("validation failures are rejected") {
    SampleSpace space({CategoricalFamily{"x", 1, 4}});
    ExprPtr bad = make_atom(VarRef{"x", 0}, Cmp::Eq, std::int64_t{9});
    CHECK_THROWS_AS(prob_enumerate(space, bad), ValidationFailure);
    CHECK_THROWS_AS(prob_compositional(space, bad), ValidationFailure);
}

TEST_CASE("property: compositional equals enumeration, with laws") {
    testgen::Gen gen(314159);
    for (int i = 0; i < 200; ++i) {
        SampleSpace space = gen.space();
        ExprPtr e = gen.expr(space, 6);
        Rational enumerated = prob_enumerate(space, e).probability;
        Rational composed = prob_compositional(space, e).probability;
        CHECK_MESSAGE(enumerated == composed, pretty_print(e));

        // Complement law, both methods.
        ExprPtr not_e = complement(e);
        CHECK(prob_enumerate(space, not_e).probability + enumerated == Rational(1));
        CHECK(prob_compositional(space, not_e).probability + composed == Rational(1));

        // Inclusion-exclusion against a second expression.
        ExprPtr f = gen.expr(space, 4);
        Rational p_or = prob_enumerate(space, make_or({e, f})).probability;
        Rational p_and = prob_enumerate(space, make_and({e, f})).probability;
        Rational p_f = prob_enumerate(space, f).probability;
        CHECK(p_or == enumerated + p_f - p_and);
    }
}
