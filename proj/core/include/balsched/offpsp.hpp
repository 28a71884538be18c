#pragma once

#include <optional>

#include "balsched/model.hpp"

namespace balsched {

struct OffpspConfig {
    int schedule_count = 1;  // l

    // Cost budget per schedule; defaults to pool total / schedule_count.
    // Must be positive whenever the pool has positive total cost.
    std::optional<double> threshold;

    double duration = 1.0;
};

// Threshold greedy with uniform utility: jobs are taken cheapest first
// (the utility/cost ratio is then largest; equal costs keep input order) and
// appended to the current schedule until its total first exceeds the
// threshold, at which point allocation moves to the next schedule. The last
// schedule absorbs everything left over. Deterministic; consumes no
// randomness.
ScheduleSet run_offpsp(const JobPool& pool, const OffpspConfig& config);

}  // namespace balsched
