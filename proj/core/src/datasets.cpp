#include "balsched/datasets.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "balsched/errors.hpp"
#include "balsched/rng.hpp"

namespace balsched {

namespace {

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\"");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t\"");
    return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, delim)) fields.push_back(field);
    if (!line.empty() && line.back() == delim) fields.emplace_back();
    return fields;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
    return in;
}

}  // namespace

JobPool generate_synthetic(const SyntheticSpec& spec) {
    if (spec.count < 1) throw ConfigError("synthetic pool needs at least one job");
    if (spec.cost_min < 0 || spec.cost_max < spec.cost_min)
        throw ConfigError("synthetic cost bounds must satisfy 0 <= min <= max");

    const auto width =
        static_cast<std::uint64_t>(spec.cost_max - spec.cost_min) + 1;
    Rng rng(derive_seed(spec.seed, 0));
    JobPool pool;
    pool.jobs.reserve(spec.count);
    for (std::size_t i = 0; i < spec.count; ++i) {
        Job job;
        job.id = "g" + std::to_string(i + 1);
        job.cost = static_cast<double>(
            spec.cost_min + static_cast<std::int64_t>(rng.bounded(width)));
        pool.jobs.push_back(std::move(job));
    }
    return pool;
}

JobPool ingest_bus_driver(const std::filesystem::path& path, IngestStats* stats) {
    auto in = open_input(path);
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw ParseError("empty bus-line file", 1);
    ++line_no;
    line = strip_cr(line);

    // The header decides the delimiter: whichever one exposes both required
    // columns.
    std::size_t id_col = 0, duration_col = 0;
    char delimiter = '\0';
    for (char candidate : {',', ';', '\t'}) {
        auto header = split(line, candidate);
        std::size_t id_at = header.size(), duration_at = header.size();
        for (std::size_t i = 0; i < header.size(); ++i) {
            const auto name = trim(header[i]);
            if (name == "Bus_Line_Id") id_at = i;
            if (name == "Duration") duration_at = i;
        }
        if (id_at < header.size() && duration_at < header.size()) {
            delimiter = candidate;
            id_col = id_at;
            duration_col = duration_at;
            break;
        }
    }
    if (delimiter == '\0')
        throw ParseError(
            "header must contain columns Bus_Line_Id and Duration "
            "(comma, semicolon, or tab separated)",
            line_no);

    IngestStats local;
    std::vector<std::string> line_order;
    std::unordered_map<std::string, double> totals;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        ++local.rows_read;
        auto fields = split(line, delimiter);
        if (fields.size() <= std::max(id_col, duration_col)) {
            ++local.rows_rejected;
            continue;
        }
        const auto id = trim(fields[id_col]);
        const auto duration_text = trim(fields[duration_col]);
        errno = 0;
        char* end = nullptr;
        const double duration = std::strtod(duration_text.c_str(), &end);
        if (id.empty() || end == duration_text.c_str() || *end != '\0' ||
            errno == ERANGE || duration < 0.0) {
            ++local.rows_rejected;
            continue;
        }
        auto [it, inserted] = totals.emplace(id, 0.0);
        if (inserted) line_order.push_back(id);
        it->second += duration;
    }

    JobPool pool;
    pool.jobs.reserve(line_order.size());
    for (const auto& id : line_order)
        pool.jobs.push_back(Job{id, totals.at(id), ""});
    validate_pool(pool);
    if (stats) *stats = local;
    return pool;
}

std::optional<std::int64_t> parse_log_timestamp(std::string_view date,
                                                std::string_view time) {
    int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;

    const auto parse_int = [](std::string_view text, int& out) {
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
        return ec == std::errc{} && ptr == text.data() + text.size();
    };
    const auto field = [](std::string_view text, std::size_t at,
                          std::size_t len) { return text.substr(at, len); };

    if (date.size() != 10 || date[4] != '-' || date[7] != '-') return std::nullopt;
    if (time.size() != 8 || time[2] != ':' || time[5] != ':') return std::nullopt;
    if (!parse_int(field(date, 0, 4), year) || !parse_int(field(date, 5, 2), month) ||
        !parse_int(field(date, 8, 2), day) || !parse_int(field(time, 0, 2), hour) ||
        !parse_int(field(time, 3, 2), minute) || !parse_int(field(time, 6, 2), second))
        return std::nullopt;

    const std::chrono::year_month_day ymd{std::chrono::year{year},
                                          std::chrono::month{static_cast<unsigned>(month)},
                                          std::chrono::day{static_cast<unsigned>(day)}};
    if (!ymd.ok()) return std::nullopt;
    if (hour > 23 || minute > 59 || second > 59) return std::nullopt;

    const auto days = std::chrono::sys_days{ymd}.time_since_epoch().count();
    return static_cast<std::int64_t>(days) * 86400 + hour * 3600 + minute * 60 +
           second;
}

JobPool ingest_kdd_logs(const std::filesystem::path& path,
                        const KddOptions& options, IngestStats* stats) {
    if (options.top_students < 1)
        throw ConfigError("top_students must be at least 1");
    auto in = open_input(path);
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw ParseError("empty course-log file", 1);
    ++line_no;
    if (strip_cr(line) != "enroll_id,date,time,event,course_id")
        throw ParseError("expected header 'enroll_id,date,time,event,course_id'",
                         line_no);

    IngestStats local;
    std::vector<CourseLogEntry> entries;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        ++local.rows_read;
        auto fields = split(line, ',');
        if (fields.size() != 5) {
            ++local.rows_rejected;
            continue;
        }
        CourseLogEntry entry;
        entry.enroll_id = trim(fields[0]);
        entry.event = trim(fields[3]);
        entry.course_id = trim(fields[4]);
        const auto ts = parse_log_timestamp(trim(fields[1]), trim(fields[2]));
        const bool known_event =
            std::find(kCourseEvents.begin(), kCourseEvents.end(), entry.event) !=
            kCourseEvents.end();
        if (entry.enroll_id.empty() || entry.course_id.empty() || !ts ||
            !known_event) {
            ++local.rows_rejected;
            continue;
        }
        entry.timestamp = *ts;
        entries.push_back(std::move(entry));
    }

    // Students ranked by how many distinct courses they touch; everyone tied
    // with the last kept rank stays in.
    std::unordered_map<std::string, std::unordered_set<std::string>> courses_of;
    for (const auto& entry : entries)
        courses_of[entry.enroll_id].insert(entry.course_id);
    std::vector<std::pair<std::string, std::size_t>> ranking;
    ranking.reserve(courses_of.size());
    for (const auto& [student, courses] : courses_of)
        ranking.emplace_back(student, courses.size());
    std::sort(ranking.begin(), ranking.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::unordered_set<std::string> selected;
    if (!ranking.empty()) {
        const std::size_t boundary =
            std::min(options.top_students, ranking.size()) - 1;
        const std::size_t cutoff = ranking[boundary].second;
        for (const auto& [student, count] : ranking)
            if (count >= cutoff) selected.insert(student);
    }
    local.selected_students = selected.size();

    // Each kept entry costs the gap to its successor in its stream; the last
    // entry of a stream costs 0.
    std::vector<CourseLogEntry> kept;
    kept.reserve(entries.size());
    for (auto& entry : entries)
        if (selected.contains(entry.enroll_id)) kept.push_back(std::move(entry));
    std::stable_sort(kept.begin(), kept.end(),
                     [&options](const CourseLogEntry& a, const CourseLogEntry& b) {
                         if (a.enroll_id != b.enroll_id) return a.enroll_id < b.enroll_id;
                         if (options.stream == KddStream::PerStudentCourse &&
                             a.course_id != b.course_id)
                             return a.course_id < b.course_id;
                         return a.timestamp < b.timestamp;
                     });

    const auto same_stream = [&options](const CourseLogEntry& a,
                                        const CourseLogEntry& b) {
        if (a.enroll_id != b.enroll_id) return false;
        return options.stream == KddStream::PerStudent || a.course_id == b.course_id;
    };

    std::map<std::pair<std::string, std::string>, std::int64_t> seconds;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        std::int64_t gap = 0;
        if (i + 1 < kept.size() && same_stream(kept[i], kept[i + 1]))
            gap = kept[i + 1].timestamp - kept[i].timestamp;
        seconds[{kept[i].course_id, kept[i].event}] += gap;
    }

    JobPool pool;
    pool.jobs.reserve(seconds.size());
    for (const auto& [key, total] : seconds)
        pool.jobs.push_back(Job{key.first + ":" + key.second,
                                static_cast<double>(total / 60), ""});
    validate_pool(pool);
    if (stats) *stats = local;
    return pool;
}

}  // namespace balsched
