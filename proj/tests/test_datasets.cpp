#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "balsched/datasets.hpp"
#include "balsched/errors.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace balsched;

namespace {

std::map<std::string, double> pool_as_map(const JobPool& pool) {
    std::map<std::string, double> out;
    for (const auto& job : pool.jobs) out.emplace(job.id, job.cost);
    return out;
}

}  // namespace

TEST_CASE("synthetic pools are integral, bounded, and reproducible") {
    SyntheticSpec spec;
    spec.count = 500;
    spec.cost_min = 3;
    spec.cost_max = 17;
    spec.seed = 99;
    const auto pool = generate_synthetic(spec);
    REQUIRE(pool.size() == 500);
    CHECK(pool.jobs.front().id == "g1");
    CHECK(pool.jobs.back().id == "g500");
    bool saw_min = false, saw_max = false;
    for (const auto& job : pool.jobs) {
        CHECK(job.cost >= 3.0);
        CHECK(job.cost <= 17.0);
        CHECK(job.cost == static_cast<double>(static_cast<std::int64_t>(job.cost)));
        if (job.cost == 3.0) saw_min = true;
        if (job.cost == 17.0) saw_max = true;
    }
    CHECK(saw_min);
    CHECK(saw_max);

    const auto again = generate_synthetic(spec);
    for (std::size_t i = 0; i < 500; ++i)
        CHECK(pool.jobs[i].cost == again.jobs[i].cost);

    spec.seed = 100;
    const auto other = generate_synthetic(spec);
    bool any_difference = false;
    for (std::size_t i = 0; i < 500; ++i)
        if (pool.jobs[i].cost != other.jobs[i].cost) any_difference = true;
    CHECK(any_difference);

    spec.cost_min = 7;
    spec.cost_max = 7;
    for (const auto& job : generate_synthetic(spec).jobs) CHECK(job.cost == 7.0);

    spec.cost_max = 6;
    CHECK_THROWS_AS(generate_synthetic(spec), ConfigError);
    spec.cost_max = 8;
    spec.count = 0;
    CHECK_THROWS_AS(generate_synthetic(spec), ConfigError);
}

TEST_CASE("bus-line fixture aggregates per line in first-appearance order") {
    IngestStats stats;
    const auto pool = ingest_bus_driver(testutil::fixture("bus_lines.csv"), &stats);
    REQUIRE(pool.size() == 12);
    CHECK(stats.rows_read == 20);
    CHECK(stats.rows_rejected == 0);
    CHECK(pool.total_cost() == 8627.0);

    const std::vector<std::pair<std::string, double>> expected = {
        {"1", 1145}, {"2", 1110}, {"3", 850}, {"4", 1090},
        {"5", 840},  {"6", 600},  {"7", 500}, {"8", 999},
        {"9", 333},  {"10", 100}, {"11", 60}, {"12", 1000}};
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(pool.jobs[i].id == expected[i].first);
        CHECK(pool.jobs[i].cost == expected[i].second);
    }
}

TEST_CASE("bus-line durations sum per id") {
    testutil::TempDir tmp;
    const auto path = tmp.write("two.csv",
                                "Sl_No,Bus_Line_Id,Duration\n"
                                "1,A,10\n"
                                "2,A,20\n");
    const auto pool = ingest_bus_driver(path);
    REQUIRE(pool.size() == 1);
    CHECK(pool.jobs[0].id == "A");
    CHECK(pool.jobs[0].cost == 30.0);
}

TEST_CASE("bus-line loader detects semicolons and tabs") {
    testutil::TempDir tmp;
    const auto semi = tmp.write("semi.csv",
                                "Sl_No;Bus_Line_Id;Duration;Depot\n"
                                "1;L1;25;north\n"
                                "2;L2;40;south\n");
    auto pool = ingest_bus_driver(semi);
    REQUIRE(pool.size() == 2);
    CHECK(pool.jobs[0].id == "L1");
    CHECK(pool.jobs[0].cost == 25.0);
    CHECK(pool.jobs[1].cost == 40.0);

    const auto tabbed = tmp.write("tabbed.tsv",
                                  "Bus_Line_Id\tDuration\n"
                                  "T9\t12\n"
                                  "T9\t8\n");
    pool = ingest_bus_driver(tabbed);
    REQUIRE(pool.size() == 1);
    CHECK(pool.jobs[0].id == "T9");
    CHECK(pool.jobs[0].cost == 20.0);
}

TEST_CASE("bus-line loader needs both columns") {
    testutil::TempDir tmp;
    const auto missing = tmp.write("missing.csv", "Sl_No,Line,Minutes\n1,A,10\n");
    CHECK_THROWS_AS(ingest_bus_driver(missing), ParseError);
    const auto empty = tmp.write("empty.csv", "");
    CHECK_THROWS_AS(ingest_bus_driver(empty), ParseError);
}

TEST_CASE("bus-line loader rejects bad rows and counts them") {
    testutil::TempDir tmp;
    const auto path = tmp.write("bad.csv",
                                "Bus_Line_Id,Duration\n"
                                "A,10\n"
                                "B,-5\n"
                                "C,oops\n"
                                "D\n"
                                ",30\n"
                                "A,5\n");
    IngestStats stats;
    const auto pool = ingest_bus_driver(path, &stats);
    CHECK(stats.rows_read == 6);
    CHECK(stats.rows_rejected == 4);
    REQUIRE(pool.size() == 1);
    CHECK(pool.jobs[0].cost == 15.0);
}

TEST_CASE("bus-line ingestion matches an independent tally on random data") {
    testutil::TempDir tmp;
    std::ostringstream csv;
    csv << "Sl_No,Bus_Line_Id,Duration,Depot\n";
    std::map<std::string, double> tally;
    std::vector<std::string> order;
    std::uint64_t state = 0x9e3779b97f4a7c15ULL;
    for (int row = 0; row < 50; ++row) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        const auto line = "L" + std::to_string((state >> 33) % 9);
        const double duration = static_cast<double>((state >> 17) % 500);
        csv << row << ',' << line << ',' << duration << ",depot\n";
        if (tally.emplace(line, 0.0).second) order.push_back(line);
        tally[line] += duration;
    }
    const auto path = tmp.write("random.csv", csv.str());
    IngestStats stats;
    const auto pool = ingest_bus_driver(path, &stats);
    CHECK(stats.rows_read == 50);
    CHECK(stats.rows_rejected == 0);
    REQUIRE(pool.size() == order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        CHECK(pool.jobs[i].id == order[i]);
        CHECK(pool.jobs[i].cost == doctest::Approx(tally[order[i]]).epsilon(1e-12));
    }

    const auto rerun = ingest_bus_driver(path);
    for (std::size_t i = 0; i < pool.size(); ++i) {
        CHECK(pool.jobs[i].id == rerun.jobs[i].id);
        CHECK(pool.jobs[i].cost == rerun.jobs[i].cost);
    }
}

TEST_CASE("timestamp parsing") {
    CHECK(parse_log_timestamp("1970-01-01", "00:00:00") == 0);
    CHECK(parse_log_timestamp("1970-01-01", "00:01:00") == 60);
    CHECK(parse_log_timestamp("1970-01-02", "00:00:00") == 86400);
    CHECK(parse_log_timestamp("2013-12-12", "03:10:00").value() -
              parse_log_timestamp("2013-12-12", "03:00:00").value() ==
          600);
    // leap day exists in 2012 but not 2013
    CHECK(parse_log_timestamp("2012-02-29", "12:00:00").has_value());
    CHECK_FALSE(parse_log_timestamp("2013-02-29", "12:00:00").has_value());
    CHECK_FALSE(parse_log_timestamp("2013-13-01", "00:00:00").has_value());
    CHECK_FALSE(parse_log_timestamp("2013-12-12", "24:00:00").has_value());
    CHECK_FALSE(parse_log_timestamp("2013-12-12", "03:60:00").has_value());
    CHECK_FALSE(parse_log_timestamp("13-12-12", "03:00:00").has_value());
    CHECK_FALSE(parse_log_timestamp("2013/12/12", "03:00:00").has_value());
    CHECK_FALSE(parse_log_timestamp("2013-12-12", "3:00:00").has_value());
    CHECK_FALSE(parse_log_timestamp("", "").has_value());
}

TEST_CASE("course-log fixture prices events by successor gaps") {
    IngestStats stats;
    const auto pool =
        ingest_kdd_logs(testutil::fixture("course_logs.csv"), {}, &stats);
    CHECK(stats.rows_read == 6);
    CHECK(stats.rows_rejected == 0);
    CHECK(stats.selected_students == 2);

    const auto jobs = pool_as_map(pool);
    REQUIRE(jobs.size() == 6);
    CHECK(jobs.at("81UZ:navigate") == 10.0);
    CHECK(jobs.at("81UZ:access") == 15.0);
    CHECK(jobs.at("81UZ:video") == 4.0);
    CHECK(jobs.at("81UZ:page_close") == 0.0);
    CHECK(jobs.at("3VkH:video") == 2.0);
    CHECK(jobs.at("3VkH:page_close") == 0.0);

    // job order follows sorted (course, event) pairs
    CHECK(pool.jobs.front().id == "3VkH:page_close");
    CHECK(pool.jobs.back().id == "81UZ:video");
}

TEST_CASE("course-log stream modes price interleaved courses differently") {
    testutil::TempDir tmp;
    const auto path = tmp.write("interleaved.csv",
                                "enroll_id,date,time,event,course_id\n"
                                "s1,2014-01-01,00:00:00,access,A\n"
                                "s1,2014-01-01,00:02:00,video,B\n"
                                "s1,2014-01-01,00:03:00,access,A\n"
                                "s1,2014-01-01,00:07:00,video,B\n");

    KddOptions merged;
    merged.stream = KddStream::PerStudent;
    const auto full = pool_as_map(ingest_kdd_logs(path, merged));
    CHECK(full.at("A:access") == 6.0);  // 120 s + 240 s
    CHECK(full.at("B:video") == 1.0);   // 60 s + final entry

    KddOptions split;
    split.stream = KddStream::PerStudentCourse;
    const auto per_course = pool_as_map(ingest_kdd_logs(path, split));
    CHECK(per_course.at("A:access") == 3.0);  // 180 s within course A
    CHECK(per_course.at("B:video") == 5.0);   // 300 s within course B
}

TEST_CASE("course-log edge pricing") {
    testutil::TempDir tmp;
    const auto lone = tmp.write("lone.csv",
                                "enroll_id,date,time,event,course_id\n"
                                "s1,2014-01-01,10:00:00,video,C\n");
    auto pool = ingest_kdd_logs(lone);
    REQUIRE(pool.size() == 1);
    CHECK(pool.jobs[0].id == "C:video");
    CHECK(pool.jobs[0].cost == 0.0);

    const auto minute = tmp.write("minute.csv",
                                  "enroll_id,date,time,event,course_id\n"
                                  "s1,2014-01-01,10:00:00,video,C\n"
                                  "s1,2014-01-01,10:01:00,page_close,C\n");
    pool = ingest_kdd_logs(minute);
    CHECK(pool_as_map(pool).at("C:video") == 1.0);

    // 59 seconds floor to zero minutes
    const auto partial = tmp.write("partial.csv",
                                   "enroll_id,date,time,event,course_id\n"
                                   "s1,2014-01-01,10:00:00,video,C\n"
                                   "s1,2014-01-01,10:00:59,page_close,C\n");
    pool = ingest_kdd_logs(partial);
    CHECK(pool_as_map(pool).at("C:video") == 0.0);
}

TEST_CASE("course-log rejection counting") {
    testutil::TempDir tmp;
    const auto path = tmp.write("reject.csv",
                                "enroll_id,date,time,event,course_id\n"
                                "s1,2014-01-01,10:00:00,video,C\n"
                                "s1,2014-01-01,25:00:00,video,C\n"
                                "s1,2014-01-01,10:05:00,dance,C\n"
                                "s1,2014-01-01,10:06:00,video\n"
                                ",2014-01-01,10:07:00,video,C\n"
                                "s1,2014-01-01,10:08:00,video,C\n");
    IngestStats stats;
    const auto pool = ingest_kdd_logs(path, {}, &stats);
    CHECK(stats.rows_read == 6);
    CHECK(stats.rows_rejected == 4);
    CHECK(pool_as_map(pool).at("C:video") == 8.0);  // 480 s between kept rows

    const auto bad_header = tmp.write("hdr.csv", "id,when,event\n");
    CHECK_THROWS_AS(ingest_kdd_logs(bad_header), ParseError);
}

TEST_CASE("student selection keeps ties at the cutoff") {
    const auto build = [](int two_course_students, int one_course_students) {
        std::ostringstream csv;
        csv << "enroll_id,date,time,event,course_id\n";
        for (int i = 0; i < two_course_students; ++i) {
            const auto id = "t" + std::to_string(i);
            csv << id << ",2014-01-01,00:00:00,video,Ca\n";
            csv << id << ",2014-01-01,01:00:00,video,Cb\n";
        }
        for (int i = 0; i < one_course_students; ++i)
            csv << "o" << i << ",2014-01-01,02:00:00,video,Ca\n";
        return csv.str();
    };

    testutil::TempDir tmp;
    IngestStats stats;

    // rank 30 lands on a single-course student: the tie pulls all of them in
    ingest_kdd_logs(tmp.write("tied.csv", build(28, 5)), {}, &stats);
    CHECK(stats.selected_students == 33);

    // rank 30 lands on a two-course student: single-course students drop out
    ingest_kdd_logs(tmp.write("untied.csv", build(30, 5)), {}, &stats);
    CHECK(stats.selected_students == 30);

    // fewer students than the cap keeps everyone
    ingest_kdd_logs(tmp.write("few.csv", build(3, 2)), {}, &stats);
    CHECK(stats.selected_students == 5);

    KddOptions top_one;
    top_one.top_students = 1;
    ingest_kdd_logs(tmp.write("one.csv", build(2, 3)), top_one, &stats);
    CHECK(stats.selected_students == 2);  // both two-course students tie

    top_one.top_students = 0;
    CHECK_THROWS_AS(ingest_kdd_logs(tmp.write("zero.csv", build(1, 1)), top_one),
                    ConfigError);
}
