#include "balsched/offpsp.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "balsched/errors.hpp"

namespace balsched {

ScheduleSet run_offpsp(const JobPool& pool, const OffpspConfig& config) {
    validate_pool(pool);
    if (pool.jobs.empty()) throw ConfigError("job pool is empty");
    if (config.schedule_count < 1)
        throw ConfigError("schedule count must be at least 1");

    const double pool_total = pool.total_cost();
    const double threshold = config.threshold.value_or(
        pool_total / static_cast<double>(config.schedule_count));
    if (pool_total > 0.0 && threshold <= 0.0)
        throw ConfigError("threshold must be positive for a pool with cost");

    // Cheapest first; zero-cost jobs lead and can never trip a threshold.
    std::vector<std::size_t> order(pool.jobs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&pool](std::size_t a, std::size_t b) {
        return pool.jobs[a].cost < pool.jobs[b].cost;
    });

    ScheduleSet set;
    set.schedules.resize(static_cast<std::size_t>(config.schedule_count));
    for (int i = 0; i < config.schedule_count; ++i) {
        set.schedules[static_cast<std::size_t>(i)].index = i + 1;
        set.schedules[static_cast<std::size_t>(i)].duration = config.duration;
    }

    std::size_t current = 0;
    const auto last = static_cast<std::size_t>(config.schedule_count) - 1;
    for (std::size_t idx : order) {
        auto& schedule = set.schedules[current];
        schedule.job_ids.push_back(pool.jobs[idx].id);
        schedule.total_cost += pool.jobs[idx].cost;
        if (schedule.total_cost > threshold && current < last) ++current;
    }

    if (config.schedule_count >= 2) {
        std::vector<double> totals;
        totals.reserve(set.schedules.size());
        for (const auto& schedule : set.schedules)
            totals.push_back(schedule.total_cost);
        set.variance = sample_variance(totals);
    }
    return set;
}

}  // namespace balsched
