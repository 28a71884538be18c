#include "balsched/model.hpp"

#include <cmath>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "balsched/errors.hpp"

namespace balsched {

double JobPool::total_cost() const {
    double sum = 0.0;
    for (const auto& job : jobs) sum += job.cost;
    return sum;
}

void validate_pool(const JobPool& pool) {
    std::unordered_set<std::string_view> seen;
    seen.reserve(pool.jobs.size());
    for (const auto& job : pool.jobs) {
        if (job.id.empty()) throw IntegrityError("job with empty id");
        if (!seen.insert(job.id).second)
            throw IntegrityError("duplicate job id '" + job.id + "'");
        if (job.cost < 0.0 || !std::isfinite(job.cost))
            throw ConfigError("job '" + job.id + "' has invalid cost");
    }
}

JobPool filter_by_location(const JobPool& pool, std::string_view location) {
    JobPool out;
    for (const auto& job : pool.jobs)
        if (job.location == location) out.jobs.push_back(job);
    return out;
}

int make_schedule_count(const TimeHorizon& horizon) {
    const auto describe = [&horizon] {
        std::ostringstream os;
        os << "start=" << horizon.start << ", finish=" << horizon.finish
           << ", unit=" << horizon.unit;
        return os.str();
    };
    if (!(horizon.unit > 0.0))
        throw ConfigError("schedule unit must be positive: " + describe());
    if (!(horizon.finish > horizon.start))
        throw ConfigError("horizon must have positive span: " + describe());
    const double quotient = (horizon.finish - horizon.start) / horizon.unit;
    const auto count = static_cast<long long>(std::llround(quotient));
    if (count < 1 ||
        std::abs(quotient - static_cast<double>(count)) > 1e-9 * std::max(1.0, quotient))
        throw ConfigError("horizon span is not an integer multiple of the unit: " +
                          describe());
    return static_cast<int>(count);
}

double recompute_total_cost(const Schedule& schedule, const JobPool& pool) {
    std::unordered_map<std::string_view, double> costs;
    costs.reserve(pool.jobs.size());
    for (const auto& job : pool.jobs) costs.emplace(job.id, job.cost);
    double sum = 0.0;
    for (const auto& id : schedule.job_ids) {
        auto it = costs.find(id);
        if (it == costs.end())
            throw IntegrityError("schedule references unknown job id '" + id + "'");
        sum += it->second;
    }
    return sum;
}

void verify_partition(const ScheduleSet& set, const JobPool& pool) {
    std::unordered_map<std::string_view, int> counts;
    counts.reserve(pool.jobs.size());
    for (const auto& job : pool.jobs) counts.emplace(job.id, 0);
    for (const auto& schedule : set.schedules) {
        for (const auto& id : schedule.job_ids) {
            auto it = counts.find(id);
            if (it == counts.end())
                throw IntegrityError("set references unknown job id '" + id + "'");
            if (++it->second > 1)
                throw IntegrityError("job id '" + id + "' assigned more than once");
        }
        const double actual = recompute_total_cost(schedule, pool);
        if (std::abs(actual - schedule.total_cost) >
            1e-9 * std::max(1.0, std::abs(actual)))
            throw IntegrityError("stored total for schedule " +
                                 std::to_string(schedule.index) +
                                 " does not match its members");
    }
    for (const auto& [id, count] : counts)
        if (count == 0)
            throw IntegrityError("job id '" + std::string(id) + "' left unassigned");
}

double sample_variance(std::span<const double> values) {
    if (values.size() < 2)
        throw DegenerateVarianceError(
            "sample variance needs at least two values, got " +
            std::to_string(values.size()));
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double sum_sq = 0.0;
    for (double v : values) sum_sq += (v - mean) * (v - mean);
    return sum_sq / static_cast<double>(values.size() - 1);
}

std::vector<double> row_variances(const CostMatrix& matrix) {
    std::vector<double> out;
    out.reserve(matrix.rows);
    for (std::size_t r = 0; r < matrix.rows; ++r)
        out.push_back(sample_variance(matrix.row(r)));
    return out;
}

void validate_assignments(const AssignmentTable& table, std::size_t job_count,
                          int schedule_count) {
    if (table.rows.empty()) throw ConfigError("assignment table has no rows");
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (row.size() != job_count)
            throw ConfigError("assignment row " + std::to_string(r + 1) + " covers " +
                              std::to_string(row.size()) + " jobs, pool has " +
                              std::to_string(job_count));
        for (std::int32_t dest : row)
            if (dest < 0 || dest >= schedule_count)
                throw ConfigError("assignment row " + std::to_string(r + 1) +
                                  " targets schedule " + std::to_string(dest + 1) +
                                  " outside 1.." + std::to_string(schedule_count));
    }
}

}  // namespace balsched
