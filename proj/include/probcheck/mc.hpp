#ifndef PROBCHECK_MC_HPP
#define PROBCHECK_MC_HPP

#include "probcheck/exact.hpp"
#include "probcheck/model.hpp"
#include "probcheck/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace probcheck {

// SplitMix64. Each batch of trials gets its own stream derived from
// (seed, batch index), so estimates are independent of how batches are
// scheduled across workers.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d4da2a793f4bbdULL;
        return z ^ (z >> 31);
    }

    // Uniform over 1..bound; values in the partial top interval of the
    // 64-bit range are rejected to keep the reduction unbiased.
    std::int64_t uniform_category(std::int64_t bound) {
        const std::uint64_t b = static_cast<std::uint64_t>(bound);
        const std::uint64_t excess = (UINT64_MAX % b + 1) % b;
        std::uint64_t u;
        do {
            u = next();
        } while (excess != 0 && u > UINT64_MAX - excess);
        return static_cast<std::int64_t>(u % b) + 1;
    }

    static SplitMix64 batch_stream(std::uint64_t seed, std::uint64_t batch_index);

private:
    std::uint64_t state_;
};

struct McConfig {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 0;
    std::uint64_t batch_size = 1u << 16;
    unsigned workers = 1;
};

struct McEstimate {
    std::string event_name;
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;
    double p_hat = 0.0;
    double std_err = 0.0;
};

struct ConsistencyVerdict {
    std::string event_name;
    Rational p_exact;
    double p_hat = 0.0;
    double z_score = 0.0;  // infinity when std_err = 0 and values differ
    bool pass = false;
};

// One draw per slot, each uniform over its family's categories.
Outcome sample_outcome(const SampleSpace& space, SplitMix64& rng);

// All events are evaluated against the same sampled outcomes (one shared
// outcome per trial). Total outcomes drawn = trials regardless of event
// count. Bit-identical across runs and worker counts.
std::vector<McEstimate> estimate(const SampleSpace& space,
                                 const std::vector<std::pair<std::string, ExprPtr>>& events,
                                 const McConfig& config);

// Bernoulli plug-in standard error sqrt(p(1-p)/n).
double std_error(double p_hat, std::uint64_t trials);

// Pass iff |p_hat - exact| <= z_threshold * std_err; with std_err = 0
// only exact equality (hits/trials == exact as rationals) passes.
ConsistencyVerdict consistency_check(const McEstimate& est, const Rational& exact,
                                     double z_threshold = 5.0);

}  // namespace probcheck

#endif  // PROBCHECK_MC_HPP
