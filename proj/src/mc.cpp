#include "probcheck/mc.hpp"

#include <cmath>
#include <limits>
#include <thread>

namespace probcheck {

SplitMix64 SplitMix64::batch_stream(std::uint64_t seed, std::uint64_t batch_index) {
    // Finalizer-mixed combination of seed and batch index; distinct
    // batches get well-separated initial states.
    SplitMix64 mixer(seed);
    std::uint64_t base = mixer.next();
    SplitMix64 offset(batch_index ^ 0x6a09e667f3bcc909ULL);
    return SplitMix64(base ^ offset.next());
}

Outcome sample_outcome(const SampleSpace& space, SplitMix64& rng) {
    Outcome outcome(space);
    for (int slot = 0; slot < space.total_slots(); ++slot)
        outcome.set(slot, rng.uniform_category(space.slot_cardinality(slot)));
    return outcome;
}

namespace {

void run_batches(const SampleSpace& space,
                 const std::vector<std::pair<std::string, ExprPtr>>& events,
                 const McConfig& config, std::uint64_t first_batch,
                 std::uint64_t batch_stride, std::vector<std::uint64_t>& hits) {
    const std::uint64_t n_batches =
        (config.trials + config.batch_size - 1) / config.batch_size;
    Outcome outcome(space);
    const int n_slots = space.total_slots();
    for (std::uint64_t b = first_batch; b < n_batches; b += batch_stride) {
        SplitMix64 rng = SplitMix64::batch_stream(config.seed, b);
        const std::uint64_t begin = b * config.batch_size;
        const std::uint64_t end = std::min(begin + config.batch_size, config.trials);
        for (std::uint64_t t = begin; t < end; ++t) {
            for (int slot = 0; slot < n_slots; ++slot)
                outcome.set(slot, rng.uniform_category(space.slot_cardinality(slot)));
            for (std::size_t e = 0; e < events.size(); ++e)
                if (evaluate(events[e].second, outcome)) ++hits[e];
        }
    }
}

}  // namespace

std::vector<McEstimate> estimate(const SampleSpace& space,
                                 const std::vector<std::pair<std::string, ExprPtr>>& events,
                                 const McConfig& config) {
    for (const auto& [name, expr] : events) {
        auto diagnostics = validate(expr, space);
        if (!diagnostics.empty())
            throw ValidationFailure("event " + name + ": " + diagnostics.front());
    }
    const unsigned workers = std::max(1u, config.workers);
    std::vector<std::vector<std::uint64_t>> per_worker(
        workers, std::vector<std::uint64_t>(events.size(), 0));
    if (workers == 1) {
        run_batches(space, events, config, 0, 1, per_worker[0]);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            threads.emplace_back(run_batches, std::cref(space), std::cref(events),
                                 std::cref(config), w, workers, std::ref(per_worker[w]));
        for (auto& t : threads) t.join();
    }

    std::vector<McEstimate> out;
    out.reserve(events.size());
    for (std::size_t e = 0; e < events.size(); ++e) {
        std::uint64_t hits = 0;
        for (unsigned w = 0; w < workers; ++w) hits += per_worker[w][e];
        const double p_hat = static_cast<double>(hits) / static_cast<double>(config.trials);
        out.push_back({events[e].first, hits, config.trials, p_hat,
                       std_error(p_hat, config.trials)});
    }
    return out;
}

double std_error(double p_hat, std::uint64_t trials) {
    return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(trials));
}

ConsistencyVerdict consistency_check(const McEstimate& est, const Rational& exact,
                                     double z_threshold) {
    ConsistencyVerdict verdict;
    verdict.event_name = est.event_name;
    verdict.p_exact = exact;
    verdict.p_hat = est.p_hat;
    if (est.std_err == 0.0) {
        // hits/trials compared to exact as rationals, no rounding.
        const bool equal =
            Rational(BigInt(est.hits), BigInt(est.trials)) == exact;
        verdict.z_score = equal ? 0.0 : std::numeric_limits<double>::infinity();
        verdict.pass = equal;
        return verdict;
    }
    verdict.z_score = std::abs(est.p_hat - exact.to_double()) / est.std_err;
    verdict.pass = verdict.z_score <= z_threshold;
    return verdict;
}

}  // namespace probcheck
