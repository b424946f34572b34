#ifndef PROBCHECK_CORPUS_HPP
#define PROBCHECK_CORPUS_HPP

namespace probcheck {

// Built-in problem set: two people, twelve equally likely birth months.
// p1: not born in the same month; p2: not both born in May; p3: neither
// born in May. The "not born in May" wording has no single reading, so
// it ships as an atom pair for the analyzer instead of an event.
inline constexpr const char* kCorpusText =
    "# Birthday-month problems: two people, twelve equally likely months.\n"
    "space person[2] uniform(12)\n"
    "\n"
    "# Probability the two were not born in the same month.\n"
    "event p1: person[0] != person[1]\n"
    "\n"
    "# Probability the two were not both born in May.\n"
    "event p2: not (person[0] == may and person[1] == may)\n"
    "\n"
    "# Probability neither was born in May.\n"
    "event p3: person[0] != may and person[1] != may\n";

// Atom pair behind the ambiguous "two people were not born in May":
// negating their conjunction and conjoining their negations give
// different probabilities.
inline constexpr const char* kCorpusAmbiguousAtoms =
    "person[0] == may, person[1] == may";

inline constexpr const char* kCorpusSourceName = "<builtin corpus>";

}  // namespace probcheck

#endif  // PROBCHECK_CORPUS_HPP
