#pragma once

#include <cstdint>

#include "balsched/model.hpp"

namespace balsched {

// How the minimum-variance scan breaks ties between equal row variances.
// Paper: the running minimum is replaced on <=, so the last minimal row wins.
// FirstIndex: strict <, the earliest minimal row wins.
enum class TieMode { Paper, FirstIndex };

struct RraConfig {
    std::uint64_t iterations = 8000;  // K
    int schedule_count = 1;           // l
    std::uint64_t master_seed = 0;

    TieMode tie_mode = TieMode::Paper;

    // Also draw a random job visiting order per iteration instead of walking
    // the pool in order. Same allocation distribution, different stream.
    bool shuffle_job_order = false;

    // Keep every iteration's full assignment. Off by default: the winner is
    // re-materialized by replaying its derived seed, so memory stays at one
    // K x l matrix.
    bool retain_assignments = false;

    // Iterations run in contiguous blocks across this many threads.
    // 0 = one per hardware thread. Results are identical for any value:
    // iteration k always draws from seed derive_seed(master_seed, k).
    unsigned workers = 1;

    // Testing hook: use these fixed assignments instead of sampling. Overrides
    // `iterations` with the table's row count and ignores the seed.
    const AssignmentTable* injected = nullptr;
};

struct RraOutput {
    CostMatrix cost_matrix;
    // Filled when retain_assignments is set or assignments were injected.
    std::vector<AllocationRun> assignments;
};

// Repeated random allocation: K independent iterations, each assigning every
// job to a uniformly random schedule, recording per-schedule cost totals.
RraOutput rra(const JobPool& pool, const RraConfig& config);

// Reproduces the assignment of one iteration from its derived seed (or from
// the injected table).
AllocationRun replay_allocation(const JobPool& pool, const RraConfig& config,
                                std::uint64_t iteration);

struct MbdfResult {
    std::size_t index = 0;  // 0-based row
    double variance = 0.0;
};

// Minimum-variance row of the cost matrix. Throws DegenerateVarianceError
// when the matrix has a single column and ConfigError when it has no rows.
MbdfResult mbdf(const CostMatrix& matrix, TieMode tie_mode = TieMode::Paper);

// Expands one allocation run into a full schedule set (1-based indices, one
// slot per schedule, variance of the totals; 0.0 when there is one schedule).
ScheduleSet materialize(const JobPool& pool, const AllocationRun& run,
                        int schedule_count, double duration,
                        std::uint64_t iteration);

// Reorders schedules by non-increasing total cost; stable, so equal totals
// keep their original index order. Membership and variance are untouched.
ScheduleSet lcsf(ScheduleSet set);

// Full pipeline: allocate K times, keep the minimum-variance iteration,
// order its schedules by non-increasing cost. With one schedule the variance
// scan is skipped and the unique allocation is returned directly.
ScheduleSet run_ppsjbp(const JobPool& pool, const RraConfig& config,
                       double duration = 1.0);
ScheduleSet run_ppsjbp(const JobPool& pool, const TimeHorizon& horizon,
                       const RraConfig& config);

}  // namespace balsched
