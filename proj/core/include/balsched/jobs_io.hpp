#pragma once

#include <filesystem>
#include <iosfwd>

#include "balsched/model.hpp"

namespace balsched {

// Jobs file: UTF-8 CSV, header `id,cost` or `id,cost,location`. Costs are
// non-negative decimals. Throws ParseError with a 1-based line number on
// malformed input and IntegrityError on duplicate ids.
JobPool read_jobs_csv(const std::filesystem::path& path);
JobPool read_jobs_csv(std::istream& in);

void write_jobs_csv(const JobPool& pool, const std::filesystem::path& path);
void write_jobs_csv(const JobPool& pool, std::ostream& out);

// Assignment file for driving the allocator with fixed destinations:
// header `iteration,job_id,schedule`, iterations numbered 1..R and schedule
// indices 1-based. Every (iteration, job) pair must appear exactly once.
AssignmentTable read_assignment_csv(const std::filesystem::path& path,
                                    const JobPool& pool, int schedule_count);

}  // namespace balsched
