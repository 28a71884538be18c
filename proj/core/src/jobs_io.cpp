#include "balsched/jobs_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "balsched/errors.hpp"

namespace balsched {

namespace {

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, delim)) fields.push_back(field);
    if (!line.empty() && line.back() == delim) fields.emplace_back();
    return fields;
}

double parse_cost(const std::string& text, std::size_t line_no) {
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE)
        throw ParseError("cost '" + text + "' is not a number", line_no);
    if (value < 0.0) throw ParseError("cost must be non-negative", line_no);
    return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
    return in;
}

}  // namespace

JobPool read_jobs_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_jobs_csv(in);
}

JobPool read_jobs_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw ParseError("empty jobs file", 1);
    ++line_no;
    line = strip_cr(line);
    bool has_location = false;
    if (line == "id,cost,location")
        has_location = true;
    else if (line != "id,cost")
        throw ParseError("expected header 'id,cost' or 'id,cost,location', got '" +
                             line + "'",
                         line_no);

    JobPool pool;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split(line, ',');
        const std::size_t expected = has_location ? 3 : 2;
        if (fields.size() != expected)
            throw ParseError("expected " + std::to_string(expected) +
                                 " fields, got " + std::to_string(fields.size()),
                             line_no);
        if (fields[0].empty()) throw ParseError("empty job id", line_no);
        Job job;
        job.id = fields[0];
        job.cost = parse_cost(fields[1], line_no);
        if (has_location) job.location = fields[2];
        pool.jobs.push_back(std::move(job));
    }
    validate_pool(pool);
    return pool;
}

void write_jobs_csv(const JobPool& pool, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path.string() + "'", 0);
    write_jobs_csv(pool, out);
}

void write_jobs_csv(const JobPool& pool, std::ostream& out) {
    bool any_location = false;
    for (const auto& job : pool.jobs)
        if (!job.location.empty()) any_location = true;

    out << (any_location ? "id,cost,location\n" : "id,cost\n");
    char buffer[64];
    for (const auto& job : pool.jobs) {
        std::snprintf(buffer, sizeof(buffer), "%.17g", job.cost);
        out << job.id << ',' << buffer;
        if (any_location) out << ',' << job.location;
        out << '\n';
    }
}

AssignmentTable read_assignment_csv(const std::filesystem::path& path,
                                    const JobPool& pool, int schedule_count) {
    auto in = open_input(path);
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw ParseError("empty assignment file", 1);
    ++line_no;
    if (strip_cr(line) != "iteration,job_id,schedule")
        throw ParseError("expected header 'iteration,job_id,schedule'", line_no);

    std::unordered_map<std::string, std::size_t> job_position;
    for (std::size_t i = 0; i < pool.jobs.size(); ++i)
        job_position.emplace(pool.jobs[i].id, i);

    // destinations[k][j] = -1 until the file provides (k+1, job j).
    std::vector<AllocationRun> rows;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split(line, ',');
        if (fields.size() != 3)
            throw ParseError("expected 3 fields, got " + std::to_string(fields.size()),
                             line_no);

        char* end = nullptr;
        const long iteration = std::strtol(fields[0].c_str(), &end, 10);
        if (end == fields[0].c_str() || *end != '\0' || iteration < 1)
            throw ParseError("iteration '" + fields[0] + "' is not a positive integer",
                             line_no);
        auto pos = job_position.find(fields[1]);
        if (pos == job_position.end())
            throw IntegrityError("assignment file names unknown job id '" + fields[1] +
                                 "' at line " + std::to_string(line_no));
        const long schedule = std::strtol(fields[2].c_str(), &end, 10);
        if (end == fields[2].c_str() || *end != '\0' || schedule < 1 ||
            schedule > schedule_count)
            throw ParseError("schedule '" + fields[2] + "' outside 1.." +
                                 std::to_string(schedule_count),
                             line_no);

        const auto row = static_cast<std::size_t>(iteration - 1);
        if (row >= rows.size())
            rows.resize(row + 1, AllocationRun(pool.jobs.size(), -1));
        auto& slot = rows[row][pos->second];
        if (slot != -1)
            throw IntegrityError("duplicate assignment for iteration " +
                                 std::to_string(iteration) + ", job '" + fields[1] +
                                 "' at line " + std::to_string(line_no));
        slot = static_cast<std::int32_t>(schedule - 1);
    }

    AssignmentTable table{std::move(rows)};
    for (std::size_t k = 0; k < table.rows.size(); ++k)
        for (std::size_t j = 0; j < table.rows[k].size(); ++j)
            if (table.rows[k][j] == -1)
                throw IntegrityError("iteration " + std::to_string(k + 1) +
                                     " has no assignment for job '" +
                                     pool.jobs[j].id + "'");
    validate_assignments(table, pool.jobs.size(), schedule_count);
    return table;
}

}  // namespace balsched
