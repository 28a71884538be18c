#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "balsched/model.hpp"
#include "balsched/verification.hpp"

namespace balsched {

// All JSON emitted here is canonical: object keys sorted bytewise, floats
// printed with 6 significant digits, no insignificant whitespace, one
// trailing newline. Two runs with the same inputs produce identical bytes.

struct PerScheduleRow {
    int index = 0;
    double total_cost = 0.0;
    std::size_t job_count = 0;
    double avg_cost = 0.0;  // 0 for an empty schedule
};

// Echo of the run configuration. Execution details (worker count, file
// paths) are deliberately absent so output bytes do not depend on them.
struct RunParams {
    std::uint64_t iterations = 0;
    int schedule_count = 0;
    std::uint64_t seed = 0;
    std::optional<double> threshold;
};

struct ComparisonReport {
    std::string algorithm;  // "ppsjbp" or "offpsp"
    std::vector<PerScheduleRow> per_schedule;
    double variance = 0.0;
    RunParams params;
};

ComparisonReport make_report(std::string algorithm, const ScheduleSet& set,
                             const RunParams& params);

// Per-schedule metrics of a single allocation iteration. `iteration` is
// 1-based in reports, matching the numbering of allocation tables.
struct ScheduleReport {
    std::uint64_t iteration = 0;
    std::vector<PerScheduleRow> per_schedule;
    double variance = 0.0;
};

ScheduleReport make_schedule_report(const ScheduleSet& set);

// The selected minimum-variance set side by side with uniformly sampled
// non-winning iterations, split into two disjoint groups.
struct RandomSetComparison {
    ScheduleReport balanced;
    std::vector<ScheduleReport> group_prime;
    std::vector<ScheduleReport> group_double_prime;
};

std::string to_canonical_json(const ComparisonReport& report);
std::string to_canonical_json(const ComparisonReport& ppsjbp,
                              const ComparisonReport& offpsp);
std::string to_canonical_json(const RandomSetComparison& comparison);
std::string to_canonical_json(const std::vector<TimingPoint>& points,
                              std::size_t pool_size, int schedule_count);

// One LemmaReport as a single JSON line (no trailing newline).
std::string to_json_line(const LemmaReport& report);

// %.6g with "-0" normalized to "0"; non-finite values render as null.
std::string format_sig6(double value);

// Per-schedule table `index,total_cost,job_count,avg_cost` for plotting.
void write_schedule_csv(const ComparisonReport& report,
                        const std::filesystem::path& path);

}  // namespace balsched
