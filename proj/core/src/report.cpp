#include "balsched/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "balsched/errors.hpp"

namespace balsched {

namespace {

void append_float(std::string& out, double value) { out += format_sig6(value); }

void append_unsigned(std::string& out, std::uint64_t value) {
    out += std::to_string(value);
}

void append_signed(std::string& out, std::int64_t value) {
    out += std::to_string(value);
}

void append_string(std::string& out, std::string_view text) {
    out += '"';
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

// Keys below are written in sorted byte order; keep every emitter that way so
// outputs stay canonical.

void append_row(std::string& out, const PerScheduleRow& row) {
    out += "{\"avg_cost\":";
    append_float(out, row.avg_cost);
    out += ",\"index\":";
    append_signed(out, row.index);
    out += ",\"job_count\":";
    append_unsigned(out, row.job_count);
    out += ",\"total_cost\":";
    append_float(out, row.total_cost);
    out += '}';
}

void append_rows(std::string& out, const std::vector<PerScheduleRow>& rows) {
    out += '[';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) out += ',';
        append_row(out, rows[i]);
    }
    out += ']';
}

void append_params(std::string& out, const RunParams& params) {
    out += "{\"iterations\":";
    append_unsigned(out, params.iterations);
    out += ",\"schedules\":";
    append_signed(out, params.schedule_count);
    out += ",\"seed\":";
    append_unsigned(out, params.seed);
    out += ",\"threshold\":";
    if (params.threshold && std::isfinite(*params.threshold))
        append_float(out, *params.threshold);
    else
        out += "null";
    out += '}';
}

void append_comparison(std::string& out, const ComparisonReport& report) {
    out += "{\"algorithm\":";
    append_string(out, report.algorithm);
    out += ",\"params\":";
    append_params(out, report.params);
    out += ",\"per_schedule\":";
    append_rows(out, report.per_schedule);
    out += ",\"variance\":";
    append_float(out, report.variance);
    out += '}';
}

void append_schedule_report(std::string& out, const ScheduleReport& report) {
    out += "{\"iteration\":";
    append_unsigned(out, report.iteration);
    out += ",\"per_schedule\":";
    append_rows(out, report.per_schedule);
    out += ",\"variance\":";
    append_float(out, report.variance);
    out += '}';
}

const PerScheduleRow& row_with_index(const ComparisonReport& report, int index) {
    for (const auto& row : report.per_schedule)
        if (row.index == index) return row;
    throw IntegrityError("report lacks schedule index " + std::to_string(index));
}

}  // namespace

std::string format_sig6(double value) {
    if (!std::isfinite(value)) return "null";
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6g", value);
    std::string text = buffer;
    if (text == "-0") text = "0";
    return text;
}

ComparisonReport make_report(std::string algorithm, const ScheduleSet& set,
                             const RunParams& params) {
    ComparisonReport report;
    report.algorithm = std::move(algorithm);
    report.variance = set.variance;
    report.params = params;
    report.per_schedule.reserve(set.schedules.size());
    for (const auto& schedule : set.schedules) {
        PerScheduleRow row;
        row.index = schedule.index;
        row.total_cost = schedule.total_cost;
        row.job_count = schedule.job_ids.size();
        row.avg_cost = row.job_count == 0
                           ? 0.0
                           : row.total_cost / static_cast<double>(row.job_count);
        report.per_schedule.push_back(row);
    }
    return report;
}

ScheduleReport make_schedule_report(const ScheduleSet& set) {
    ScheduleReport report;
    report.iteration = set.iteration + 1;  // 1-based outside the library
    report.variance = set.variance;
    report.per_schedule.reserve(set.schedules.size());
    for (const auto& schedule : set.schedules) {
        PerScheduleRow row;
        row.index = schedule.index;
        row.total_cost = schedule.total_cost;
        row.job_count = schedule.job_ids.size();
        row.avg_cost = row.job_count == 0
                           ? 0.0
                           : row.total_cost / static_cast<double>(row.job_count);
        report.per_schedule.push_back(row);
    }
    return report;
}

std::string to_canonical_json(const ComparisonReport& report) {
    std::string out;
    append_comparison(out, report);
    out += '\n';
    return out;
}

std::string to_canonical_json(const ComparisonReport& ppsjbp,
                              const ComparisonReport& offpsp) {
    if (ppsjbp.per_schedule.size() != offpsp.per_schedule.size())
        throw IntegrityError("compared runs have different schedule counts");

    std::string out = "{\"deltas\":{\"avg_cost\":[";
    const int count = static_cast<int>(ppsjbp.per_schedule.size());
    for (int index = 1; index <= count; ++index) {
        if (index > 1) out += ',';
        append_float(out, row_with_index(offpsp, index).avg_cost -
                              row_with_index(ppsjbp, index).avg_cost);
    }
    out += "],\"job_count\":[";
    for (int index = 1; index <= count; ++index) {
        if (index > 1) out += ',';
        append_signed(
            out,
            static_cast<std::int64_t>(row_with_index(offpsp, index).job_count) -
                static_cast<std::int64_t>(row_with_index(ppsjbp, index).job_count));
    }
    out += "]},\"offpsp\":";
    append_comparison(out, offpsp);
    out += ",\"ppsjbp\":";
    append_comparison(out, ppsjbp);
    out += ",\"variance_ratio_offpsp_over_ppsjbp\":";
    if (ppsjbp.variance > 0.0)
        append_float(out, offpsp.variance / ppsjbp.variance);
    else
        out += "null";
    out += "}\n";
    return out;
}

std::string to_canonical_json(const RandomSetComparison& comparison) {
    std::string out = "{\"balanced\":";
    append_schedule_report(out, comparison.balanced);
    out += ",\"others_double_prime\":[";
    for (std::size_t i = 0; i < comparison.group_double_prime.size(); ++i) {
        if (i) out += ',';
        append_schedule_report(out, comparison.group_double_prime[i]);
    }
    out += "],\"others_prime\":[";
    for (std::size_t i = 0; i < comparison.group_prime.size(); ++i) {
        if (i) out += ',';
        append_schedule_report(out, comparison.group_prime[i]);
    }
    out += "]}\n";
    return out;
}

std::string to_canonical_json(const std::vector<TimingPoint>& points,
                              std::size_t pool_size, int schedule_count) {
    std::string out = "{\"pool_size\":";
    append_unsigned(out, pool_size);
    out += ",\"ratios\":[";
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (i > 1) out += ',';
        if (points[i - 1].seconds > 0.0)
            append_float(out, points[i].seconds / points[i - 1].seconds);
        else
            out += "null";
    }
    out += "],\"results\":[";
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i) out += ',';
        out += "{\"iterations\":";
        append_unsigned(out, points[i].iterations);
        out += ",\"seconds\":";
        append_float(out, points[i].seconds);
        out += '}';
    }
    out += "],\"schedules\":";
    append_signed(out, schedule_count);
    out += "}\n";
    return out;
}

std::string to_json_line(const LemmaReport& report) {
    std::string out = "{";
    if (!report.detail.empty()) {
        out += "\"detail\":";
        append_string(out, report.detail);
        out += ',';
    }
    out += "\"lemma\":";
    append_string(out, to_string(report.lemma_id));
    out += ",\"observed\":";
    append_float(out, report.observed);
    out += ",\"pass\":";
    out += report.pass ? "true" : "false";
    out += ",\"predicted\":";
    append_float(out, report.predicted);
    out += ",\"tolerance\":";
    append_float(out, report.tolerance);
    out += ",\"trials\":";
    append_unsigned(out, report.trials);
    out += '}';
    return out;
}

void write_schedule_csv(const ComparisonReport& report,
                        const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path.string() + "'", 0);
    out << "index,total_cost,job_count,avg_cost\n";
    for (const auto& row : report.per_schedule)
        out << row.index << ',' << format_sig6(row.total_cost) << ','
            << row.job_count << ',' << format_sig6(row.avg_cost) << '\n';
}

}  // namespace balsched
