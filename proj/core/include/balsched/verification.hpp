#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "balsched/model.hpp"

namespace balsched {

// The five statistical claims the allocator rests on.
enum class LemmaId { L1, L2, L3, L4, C1 };

std::string to_string(LemmaId id);
std::optional<LemmaId> lemma_from_string(std::string_view text);

struct LemmaReport {
    LemmaId lemma_id = LemmaId::L1;
    double predicted = 0.0;
    double observed = 0.0;
    std::uint64_t trials = 0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;  // optional context, e.g. a companion approximation
};

// Every estimator below draws destinations through the same routine the
// allocator uses (sample_destination) with one derived sub-seed per trial,
// so a passing report certifies the production sampling path itself.

// L1: probability that J designated jobs all land in one fixed schedule is
// 1/l^J. Two-sided, 4 binomial standard errors.
LemmaReport check_concentration(int schedule_count, int high_cost_jobs,
                                std::uint64_t trials, std::uint64_t seed);

// L2: a fixed schedule receives n/l jobs in expectation. Two-sided, 4
// standard errors of the mean.
LemmaReport check_expected_load(std::size_t pool_size, int schedule_count,
                                std::uint64_t trials, std::uint64_t seed);

// L3: draws until every schedule is hit average l * H_l (exact harmonic sum;
// the l*ln(l) approximation is reported in `detail`). Two-sided, 4 empirical
// standard errors.
LemmaReport check_coupon_collector(int schedule_count, std::uint64_t trials,
                                   std::uint64_t seed);

// L4: the probability that a fixed schedule's job count reaches 1.5x its
// expectation stays below exp(-n / (12 l)). One-sided: observed <= bound.
LemmaReport check_chernoff_tail(std::size_t pool_size, int schedule_count,
                                std::uint64_t trials, std::uint64_t seed);

// C1: across independent K-iteration allocation runs, the global minimum-
// variance iteration falls in the first round(K/e) iterations with frequency
// round(K/e)/K (~ 1/e). Two-sided, 4 binomial standard errors.
LemmaReport check_secretary(std::uint64_t iterations, std::uint64_t trials,
                            std::uint64_t seed);

struct TimingPoint {
    std::uint64_t iterations = 0;
    double seconds = 0.0;
};

// Wall time of the allocation loop per iteration count, for checking that
// cost grows linearly in K. Each point is the best of several repetitions.
std::vector<TimingPoint> check_runtime_scaling(const JobPool& pool,
                                               int schedule_count,
                                               std::span<const std::uint64_t> k_values,
                                               std::uint64_t seed);

// Exact H_n = sum_{i=1..n} 1/i, the oracle behind check_coupon_collector.
double harmonic_number(int n);

}  // namespace balsched
