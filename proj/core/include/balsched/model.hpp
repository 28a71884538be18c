#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace balsched {

// One unit of work. Costs are non-negative 64-bit floats; dataset-derived
// costs are integer-valued, so they stay exact. `location` is an optional
// opaque tag ("" = untagged) used only to filter pools.
struct Job {
    std::string id;
    double cost = 0.0;
    std::string location;
};

struct JobPool {
    std::vector<Job> jobs;

    std::size_t size() const { return jobs.size(); }
    double total_cost() const;
};

// Throws IntegrityError on duplicate ids, ConfigError on negative costs.
void validate_pool(const JobPool& pool);

// Jobs carrying the given location tag, in pool order.
JobPool filter_by_location(const JobPool& pool, std::string_view location);

// Planning window [start, finish] carved into schedules of length `unit`.
// All three are in the same time measure.
struct TimeHorizon {
    double start = 0.0;
    double finish = 0.0;
    double unit = 0.0;
};

// (finish - start) / unit, which must be a positive integer; otherwise throws
// ConfigError naming all three values.
int make_schedule_count(const TimeHorizon& horizon);

// One schedule slot of the horizon. `index` is 1-based and keeps identifying
// the same slot after reordering.
struct Schedule {
    int index = 0;
    double duration = 0.0;
    std::vector<std::string> job_ids;
    double total_cost = 0.0;
};

// A complete partition of a pool across schedules, tagged with the 0-based
// allocation iteration it came from and the sample variance of its totals.
struct ScheduleSet {
    std::vector<Schedule> schedules;
    std::uint64_t iteration = 0;
    double variance = 0.0;
};

// Sums the named jobs' costs from the pool; throws IntegrityError on an
// unknown id.
double recompute_total_cost(const Schedule& schedule, const JobPool& pool);

// Checks that the set's schedules partition the pool exactly (every id once)
// and that stored totals match recomputation. Throws IntegrityError.
void verify_partition(const ScheduleSet& set, const JobPool& pool);

// Sample variance with the (L - 1) denominator. Throws
// DegenerateVarianceError when fewer than two values are given.
double sample_variance(std::span<const double> values);

// Per-iteration schedule cost totals: rows = iterations, cols = schedules.
struct CostMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // row-major

    CostMatrix() = default;
    CostMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::span<const double> row(std::size_t r) const {
        return std::span<const double>(data).subspan(r * cols, cols);
    }
    std::span<double> row(std::size_t r) {
        return std::span<double>(data).subspan(r * cols, cols);
    }
};

// Sample variance of every row.
std::vector<double> row_variances(const CostMatrix& matrix);

// One iteration's complete assignment: 0-based destination schedule per job,
// in pool order.
using AllocationRun = std::vector<std::int32_t>;

// A fixed sequence of allocation runs, used to drive the allocator with
// predetermined assignments instead of sampled ones.
struct AssignmentTable {
    std::vector<AllocationRun> rows;
};

// Throws ConfigError unless every row covers every job with a destination in
// [0, schedule_count).
void validate_assignments(const AssignmentTable& table, std::size_t job_count,
                          int schedule_count);

}  // namespace balsched
