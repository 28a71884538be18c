#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "balsched/model.hpp"

namespace balsched {

// Integer-uniform costs in [cost_min, cost_max], ids g1..g<count>,
// deterministic per seed.
struct SyntheticSpec {
    std::size_t count = 200;
    std::int64_t cost_min = 1;
    std::int64_t cost_max = 100;
    std::uint64_t seed = 0;
};

JobPool generate_synthetic(const SyntheticSpec& spec);

// Row-level outcome of an ingestion pass.
struct IngestStats {
    std::size_t rows_read = 0;      // data rows seen (header excluded)
    std::size_t rows_rejected = 0;  // dropped with a warning
    std::size_t selected_students = 0;  // course-log ingestion only
};

// Bus-line workloads: delimited text (comma, semicolon, or tab; detected from
// the header) with at least the columns Bus_Line_Id and Duration. One job per
// distinct line id (first-appearance order), cost = summed duration. Rows
// with negative or unreadable durations are rejected and counted.
JobPool ingest_bus_driver(const std::filesystem::path& path,
                          IngestStats* stats = nullptr);

// One row of a course activity log.
struct CourseLogEntry {
    std::string enroll_id;
    std::int64_t timestamp = 0;  // seconds since the Unix epoch
    std::string event;
    std::string course_id;
};

// The recognized activity events.
inline constexpr std::array<std::string_view, 7> kCourseEvents = {
    "access", "video", "discussion", "navigate",
    "problem", "wikipedia", "page_close"};

// Seconds since the epoch for an ISO date ("2013-12-12") plus a "HH:MM:SS"
// clock; nullopt when either does not parse.
std::optional<std::int64_t> parse_log_timestamp(std::string_view date,
                                                std::string_view time);

enum class KddStream {
    PerStudent,        // successor gaps within a student's full log
    PerStudentCourse,  // gaps within each (student, course) sub-log
};

struct KddOptions {
    std::size_t top_students = 30;  // keep the most-enrolled students
    KddStream stream = KddStream::PerStudent;
};

// Course activity logs: CSV `enroll_id,date,time,event,course_id`. Keeps the
// top_students enrollments by distinct-course count (students tied with the
// last kept rank are all included), sorts each kept student's entries by
// timestamp, prices every entry at the gap to its successor (the final entry
// costs 0), and sums seconds per (course_id, event). One job per pair, id
// "<course_id>:<event>", cost = whole minutes (floored). Rows with malformed
// timestamps or unknown events are rejected and counted.
JobPool ingest_kdd_logs(const std::filesystem::path& path,
                        const KddOptions& options = {},
                        IngestStats* stats = nullptr);

}  // namespace balsched
