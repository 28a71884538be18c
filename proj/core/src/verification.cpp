#include "balsched/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "balsched/errors.hpp"
#include "balsched/ppsjbp.hpp"
#include "balsched/rng.hpp"

namespace balsched {

namespace {

double binomial_tolerance(double p, std::uint64_t trials) {
    return 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

}  // namespace

std::string to_string(LemmaId id) {
    switch (id) {
        case LemmaId::L1: return "L1";
        case LemmaId::L2: return "L2";
        case LemmaId::L3: return "L3";
        case LemmaId::L4: return "L4";
        case LemmaId::C1: return "C1";
    }
    return "?";
}

std::optional<LemmaId> lemma_from_string(std::string_view text) {
    if (text == "L1") return LemmaId::L1;
    if (text == "L2") return LemmaId::L2;
    if (text == "L3") return LemmaId::L3;
    if (text == "L4") return LemmaId::L4;
    if (text == "C1") return LemmaId::C1;
    return std::nullopt;
}

double harmonic_number(int n) {
    if (n < 1) throw ConfigError("harmonic number needs n >= 1");
    double sum = 0.0;
    for (int i = n; i >= 1; --i) sum += 1.0 / static_cast<double>(i);
    return sum;
}

LemmaReport check_concentration(int schedule_count, int high_cost_jobs,
                                std::uint64_t trials, std::uint64_t seed) {
    if (schedule_count < 2) throw ConfigError("concentration check needs l >= 2");
    if (high_cost_jobs < 1) throw ConfigError("concentration check needs J >= 1");
    if (trials < 1) throw ConfigError("trial count must be positive");

    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, t));
        bool all_first = true;
        for (int j = 0; j < high_cost_jobs; ++j)
            if (sample_destination(rng, schedule_count) != 0) all_first = false;
        if (all_first) ++hits;
    }

    LemmaReport report;
    report.lemma_id = LemmaId::L1;
    report.predicted =
        std::pow(static_cast<double>(schedule_count), -high_cost_jobs);
    report.observed = static_cast<double>(hits) / static_cast<double>(trials);
    report.trials = trials;
    report.tolerance = binomial_tolerance(report.predicted, trials);
    report.pass = std::abs(report.observed - report.predicted) <= report.tolerance;
    return report;
}

LemmaReport check_expected_load(std::size_t pool_size, int schedule_count,
                                std::uint64_t trials, std::uint64_t seed) {
    if (pool_size < 1) throw ConfigError("load check needs n >= 1");
    if (schedule_count < 1) throw ConfigError("load check needs l >= 1");
    if (trials < 1) throw ConfigError("trial count must be positive");

    std::uint64_t total = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, t));
        for (std::size_t j = 0; j < pool_size; ++j)
            if (sample_destination(rng, schedule_count) == 0) ++total;
    }

    const double p = 1.0 / static_cast<double>(schedule_count);
    LemmaReport report;
    report.lemma_id = LemmaId::L2;
    report.predicted = static_cast<double>(pool_size) * p;
    report.observed = static_cast<double>(total) / static_cast<double>(trials);
    report.trials = trials;
    report.tolerance = 4.0 * std::sqrt(static_cast<double>(pool_size) * p *
                                       (1.0 - p) / static_cast<double>(trials));
    report.pass = std::abs(report.observed - report.predicted) <= report.tolerance;
    return report;
}

LemmaReport check_coupon_collector(int schedule_count, std::uint64_t trials,
                                   std::uint64_t seed) {
    if (schedule_count < 1) throw ConfigError("coupon check needs l >= 1");
    if (trials < 1) throw ConfigError("trial count must be positive");

    std::vector<double> draws_per_trial;
    draws_per_trial.reserve(trials);
    std::vector<bool> seen(static_cast<std::size_t>(schedule_count));
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, t));
        std::fill(seen.begin(), seen.end(), false);
        int covered = 0;
        std::uint64_t draws = 0;
        while (covered < schedule_count) {
            const auto dest =
                static_cast<std::size_t>(sample_destination(rng, schedule_count));
            ++draws;
            if (!seen[dest]) {
                seen[dest] = true;
                ++covered;
            }
        }
        draws_per_trial.push_back(static_cast<double>(draws));
    }

    double mean = 0.0;
    for (double d : draws_per_trial) mean += d;
    mean /= static_cast<double>(trials);

    const double l = static_cast<double>(schedule_count);
    LemmaReport report;
    report.lemma_id = LemmaId::L3;
    report.predicted = l * harmonic_number(schedule_count);
    report.observed = mean;
    report.trials = trials;
    report.tolerance =
        trials >= 2 ? 4.0 * std::sqrt(sample_variance(draws_per_trial) /
                                      static_cast<double>(trials))
                    : 0.0;
    report.pass = std::abs(report.observed - report.predicted) <= report.tolerance;
    char approx[64];
    std::snprintf(approx, sizeof(approx), "l*ln(l)=%.6g", l * std::log(l));
    report.detail = approx;
    return report;
}

LemmaReport check_chernoff_tail(std::size_t pool_size, int schedule_count,
                                std::uint64_t trials, std::uint64_t seed) {
    if (pool_size < 1) throw ConfigError("tail check needs n >= 1");
    if (schedule_count < 2) throw ConfigError("tail check needs l >= 2");
    if (trials < 1) throw ConfigError("trial count must be positive");

    const double cutoff = 1.5 * static_cast<double>(pool_size) /
                          static_cast<double>(schedule_count);
    std::uint64_t exceeded = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, t));
        std::uint64_t load = 0;
        for (std::size_t j = 0; j < pool_size; ++j)
            if (sample_destination(rng, schedule_count) == 0) ++load;
        if (static_cast<double>(load) >= cutoff) ++exceeded;
    }

    LemmaReport report;
    report.lemma_id = LemmaId::L4;
    report.predicted = std::exp(-static_cast<double>(pool_size) /
                                (12.0 * static_cast<double>(schedule_count)));
    report.observed =
        static_cast<double>(exceeded) / static_cast<double>(trials);
    report.trials = trials;
    report.tolerance = 0.0;  // one-sided bound
    report.pass = report.observed <= report.predicted;
    return report;
}

LemmaReport check_secretary(std::uint64_t iterations, std::uint64_t trials,
                            std::uint64_t seed) {
    if (iterations < 2) throw ConfigError("secretary check needs K >= 2");
    if (trials < 1) throw ConfigError("trial count must be positive");

    // Fixed pool with irrational costs: variance ties across iterations have
    // negligible probability, so the global minimum is essentially unique.
    constexpr int kJobs = 16;
    constexpr int kSchedules = 3;
    double costs[kJobs];
    for (int j = 0; j < kJobs; ++j) costs[j] = std::sqrt(static_cast<double>(j + 2));

    const auto prefix = static_cast<std::uint64_t>(std::max<long long>(
        1, std::llround(static_cast<double>(iterations) / std::numbers::e)));

    std::uint64_t hits = 0;
    std::vector<double> totals(kSchedules);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint64_t run_seed = derive_seed(seed, t);
        double best = std::numeric_limits<double>::infinity();
        std::uint64_t best_index = 0;
        for (std::uint64_t k = 0; k < iterations; ++k) {
            Rng rng(derive_seed(run_seed, k));
            std::fill(totals.begin(), totals.end(), 0.0);
            for (int j = 0; j < kJobs; ++j)
                totals[static_cast<std::size_t>(
                    sample_destination(rng, kSchedules))] += costs[j];
            const double v = sample_variance(totals);
            if (v < best) {
                best = v;
                best_index = k;
            }
        }
        if (best_index < prefix) ++hits;
    }

    LemmaReport report;
    report.lemma_id = LemmaId::C1;
    report.predicted =
        static_cast<double>(prefix) / static_cast<double>(iterations);
    report.observed = static_cast<double>(hits) / static_cast<double>(trials);
    report.trials = trials;
    report.tolerance = binomial_tolerance(report.predicted, trials);
    report.pass = std::abs(report.observed - report.predicted) <= report.tolerance;
    char note[64];
    std::snprintf(note, sizeof(note), "prefix=%llu of K=%llu",
                  static_cast<unsigned long long>(prefix),
                  static_cast<unsigned long long>(iterations));
    report.detail = note;
    return report;
}

std::vector<TimingPoint> check_runtime_scaling(const JobPool& pool,
                                               int schedule_count,
                                               std::span<const std::uint64_t> k_values,
                                               std::uint64_t seed) {
    if (k_values.empty()) throw ConfigError("no iteration counts to time");
    using clock = std::chrono::steady_clock;

    const auto run_once = [&pool, schedule_count, seed](std::uint64_t k) {
        RraConfig config;
        config.iterations = k;
        config.schedule_count = schedule_count;
        config.master_seed = seed;
        const auto out = rra(pool, config);
        // Keep the result alive so the loop cannot be elided.
        return out.cost_matrix.data.back();
    };

    volatile double sink = 0.0;

    // Calibrate a repetition count on the first K so every timed window is
    // long enough to be stable, then reuse it for all K (ratios stay honest).
    const auto t0 = clock::now();
    sink = sink + run_once(k_values.front());
    const double single =
        std::chrono::duration<double>(clock::now() - t0).count();
    const int repeat =
        std::max(1, static_cast<int>(std::ceil(0.03 / std::max(single, 1e-9))));

    std::vector<TimingPoint> points;
    points.reserve(k_values.size());
    for (std::uint64_t k : k_values) {
        double best = std::numeric_limits<double>::infinity();
        for (int rep = 0; rep < 5; ++rep) {
            const auto begin = clock::now();
            for (int i = 0; i < repeat; ++i) sink = sink + run_once(k);
            const double window =
                std::chrono::duration<double>(clock::now() - begin).count();
            best = std::min(best, window / repeat);
        }
        points.push_back({k, best});
    }
    return points;
}

}  // namespace balsched
