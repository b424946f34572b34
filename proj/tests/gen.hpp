// Deterministic random spaces and expressions for property tests, plus
// an exhaustive outcome iterator. Test-only; independent of the engines
// it is used to check.
#ifndef PROBCHECK_TESTS_GEN_HPP
#define PROBCHECK_TESTS_GEN_HPP

#include "probcheck/mc.hpp"
#include "probcheck/model.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace probcheck::testgen {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t below(std::uint64_t bound) { return rng_.next() % bound; }
    std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    bool coin() { return below(2) == 0; }

    // 1..3 families, counts 1..3, cardinalities 1..6, total size <= 10^4.
    SampleSpace space() {
        for (;;) {
            int n_families = static_cast<int>(range(1, 3));
            std::vector<CategoricalFamily> families;
            std::int64_t total = 1;
            for (int f = 0; f < n_families; ++f) {
                CategoricalFamily fam{"f" + std::to_string(f),
                                      static_cast<int>(range(1, 3)), range(1, 6)};
                for (int i = 0; i < fam.count; ++i) total *= fam.cardinality;
                families.push_back(std::move(fam));
            }
            if (total <= 10'000) return SampleSpace(std::move(families));
        }
    }

    VarRef ref(const SampleSpace& space) {
        const auto& families = space.families();
        const auto& fam = families[below(families.size())];
        return VarRef{fam.name, static_cast<int>(range(0, fam.count - 1))};
    }

    ExprPtr atom(const SampleSpace& space) {
        VarRef lhs = ref(space);
        Cmp cmp = coin() ? Cmp::Eq : Cmp::Neq;
        if (coin()) {
            const auto* fam = space.find(lhs.family);
            return make_atom(lhs, cmp, range(1, fam->cardinality));
        }
        for (int attempt = 0; attempt < 8; ++attempt) {
            VarRef rhs = ref(space);
            if (!(rhs == lhs)) return make_atom(lhs, cmp, rhs);
        }
        const auto* fam = space.find(lhs.family);
        return make_atom(lhs, cmp, range(1, fam->cardinality));
    }

    ExprPtr expr(const SampleSpace& space, int max_depth) {
        if (max_depth <= 0) {
            switch (below(8)) {
                case 0: return make_true();
                case 1: return make_false();
                default: return atom(space);
            }
        }
        switch (below(10)) {
            case 0: return make_true();
            case 1: return make_false();
            case 2:
            case 3: return atom(space);
            case 4:
            case 5: return make_not(expr(space, max_depth - 1));
            case 6:
            case 7: {
                std::vector<ExprPtr> children;
                for (std::int64_t i = 0, n = range(2, 3); i < n; ++i)
                    children.push_back(expr(space, max_depth - 1));
                return make_and(std::move(children));
            }
            default: {
                std::vector<ExprPtr> children;
                for (std::int64_t i = 0, n = range(2, 3); i < n; ++i)
                    children.push_back(expr(space, max_depth - 1));
                return make_or(std::move(children));
            }
        }
    }

private:
    SplitMix64 rng_;
};

// Calls fn for every outcome of the space (row-major odometer).
inline void for_each_outcome(const SampleSpace& space,
                             const std::function<void(const Outcome&)>& fn) {
    Outcome outcome(space);
    const int n = space.total_slots();
    for (int s = 0; s < n; ++s) outcome.set(s, 1);
    for (;;) {
        fn(outcome);
        int pos = n - 1;
        while (pos >= 0) {
            if (outcome.get(pos) < space.slot_cardinality(pos)) {
                outcome.set(pos, outcome.get(pos) + 1);
                break;
            }
            outcome.set(pos, 1);
            --pos;
        }
        if (pos < 0) break;
    }
}

}  // namespace probcheck::testgen

#endif  // PROBCHECK_TESTS_GEN_HPP
