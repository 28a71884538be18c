#include "balsched/ppsjbp.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <thread>

#include "balsched/errors.hpp"
#include "balsched/rng.hpp"

namespace balsched {

namespace {

void validate_run_inputs(const JobPool& pool, const RraConfig& config) {
    validate_pool(pool);
    if (pool.jobs.empty()) throw ConfigError("job pool is empty");
    if (config.schedule_count < 1)
        throw ConfigError("schedule count must be at least 1");
    if (config.injected) {
        validate_assignments(*config.injected, pool.jobs.size(),
                             config.schedule_count);
    } else if (config.iterations < 1) {
        throw ConfigError("iteration count must be at least 1");
    }
}

// One allocation iteration. Writes per-schedule totals into `totals` and,
// when `run_out` is non-null, the destination of every job.
void run_one_iteration(const JobPool& pool, const RraConfig& config,
                       std::uint64_t iteration, std::span<double> totals,
                       AllocationRun* run_out) {
    const auto n = pool.jobs.size();
    std::fill(totals.begin(), totals.end(), 0.0);
    if (run_out) run_out->assign(n, 0);

    if (config.injected) {
        const auto& row = config.injected->rows[iteration];
        for (std::size_t j = 0; j < n; ++j) {
            totals[static_cast<std::size_t>(row[j])] += pool.jobs[j].cost;
            if (run_out) (*run_out)[j] = row[j];
        }
        return;
    }

    Rng rng(derive_seed(config.master_seed, iteration));
    if (config.shuffle_job_order) {
        std::vector<std::uint32_t> order(n);
        std::iota(order.begin(), order.end(), 0u);
        for (std::size_t i = n - 1; i > 0; --i) {
            const auto j = rng.bounded(i + 1);
            std::swap(order[i], order[j]);
        }
        for (std::size_t pos = 0; pos < n; ++pos) {
            const auto job = order[pos];
            const int dest = sample_destination(rng, config.schedule_count);
            totals[static_cast<std::size_t>(dest)] += pool.jobs[job].cost;
            if (run_out) (*run_out)[job] = dest;
        }
    } else {
        for (std::size_t j = 0; j < n; ++j) {
            const int dest = sample_destination(rng, config.schedule_count);
            totals[static_cast<std::size_t>(dest)] += pool.jobs[j].cost;
            if (run_out) (*run_out)[j] = dest;
        }
    }
}

}  // namespace

RraOutput rra(const JobPool& pool, const RraConfig& config) {
    validate_run_inputs(pool, config);
    const std::uint64_t iterations =
        config.injected ? config.injected->rows.size() : config.iterations;
    const auto cols = static_cast<std::size_t>(config.schedule_count);

    RraOutput out;
    out.cost_matrix = CostMatrix(iterations, cols);
    const bool keep = config.retain_assignments || config.injected != nullptr;
    if (keep) out.assignments.resize(iterations);

    const auto work = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t k = begin; k < end; ++k)
            run_one_iteration(pool, config, k, out.cost_matrix.row(k),
                              keep ? &out.assignments[k] : nullptr);
    };

    unsigned workers = config.workers != 0
                           ? config.workers
                           : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, iterations));
    if (workers <= 1) {
        work(0, iterations);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        const std::uint64_t chunk = (iterations + workers - 1) / workers;
        for (unsigned t = 0; t < workers; ++t) {
            const std::uint64_t begin = static_cast<std::uint64_t>(t) * chunk;
            const std::uint64_t end = std::min(iterations, begin + chunk);
            if (begin >= end) break;
            threads.emplace_back(work, begin, end);
        }
        for (auto& thread : threads) thread.join();
    }
    return out;
}

AllocationRun replay_allocation(const JobPool& pool, const RraConfig& config,
                                std::uint64_t iteration) {
    if (config.injected && iteration >= config.injected->rows.size())
        throw ConfigError("iteration " + std::to_string(iteration) +
                          " outside the injected table");
    AllocationRun run;
    std::vector<double> totals(static_cast<std::size_t>(config.schedule_count));
    run_one_iteration(pool, config, iteration, totals, &run);
    return run;
}

MbdfResult mbdf(const CostMatrix& matrix, TieMode tie_mode) {
    if (matrix.rows == 0) throw ConfigError("cost matrix has no rows");
    if (matrix.cols == 1)
        throw DegenerateVarianceError(
            "variance over a single schedule is undefined");

    MbdfResult best{0, std::numeric_limits<double>::infinity()};
    for (std::size_t r = 0; r < matrix.rows; ++r) {
        const double v = sample_variance(matrix.row(r));
        const bool take =
            tie_mode == TieMode::Paper ? v <= best.variance : v < best.variance;
        if (take) best = {r, v};
    }
    return best;
}

ScheduleSet materialize(const JobPool& pool, const AllocationRun& run,
                        int schedule_count, double duration,
                        std::uint64_t iteration) {
    if (run.size() != pool.jobs.size())
        throw IntegrityError("allocation run does not cover the pool");

    ScheduleSet set;
    set.iteration = iteration;
    set.schedules.resize(static_cast<std::size_t>(schedule_count));
    for (int i = 0; i < schedule_count; ++i) {
        set.schedules[static_cast<std::size_t>(i)].index = i + 1;
        set.schedules[static_cast<std::size_t>(i)].duration = duration;
    }
    for (std::size_t j = 0; j < run.size(); ++j) {
        auto& schedule = set.schedules[static_cast<std::size_t>(run[j])];
        schedule.job_ids.push_back(pool.jobs[j].id);
        schedule.total_cost += pool.jobs[j].cost;
    }
    if (schedule_count >= 2) {
        std::vector<double> totals;
        totals.reserve(set.schedules.size());
        for (const auto& schedule : set.schedules)
            totals.push_back(schedule.total_cost);
        set.variance = sample_variance(totals);
    }
    return set;
}

ScheduleSet lcsf(ScheduleSet set) {
    std::stable_sort(set.schedules.begin(), set.schedules.end(),
                     [](const Schedule& a, const Schedule& b) {
                         return a.total_cost > b.total_cost;
                     });
    return set;
}

ScheduleSet run_ppsjbp(const JobPool& pool, const RraConfig& config,
                       double duration) {
    validate_run_inputs(pool, config);

    if (config.schedule_count == 1) {
        // Variance over one schedule is undefined; the allocation is unique.
        const auto run = replay_allocation(pool, config, 0);
        return lcsf(materialize(pool, run, 1, duration, 0));
    }

    const RraOutput out = rra(pool, config);
    const MbdfResult best = mbdf(out.cost_matrix, config.tie_mode);
    const AllocationRun run = out.assignments.empty()
                                  ? replay_allocation(pool, config, best.index)
                                  : out.assignments[best.index];
    return lcsf(materialize(pool, run, config.schedule_count, duration,
                            best.index));
}

ScheduleSet run_ppsjbp(const JobPool& pool, const TimeHorizon& horizon,
                       const RraConfig& config) {
    RraConfig derived = config;
    derived.schedule_count = make_schedule_count(horizon);
    return run_ppsjbp(pool, derived, horizon.unit);
}

}  // namespace balsched
