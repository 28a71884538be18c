// balsched: balanced schedule construction, baselines, dataset ingestion,
// and Monte Carlo verification, behind one CLI.
//
// Exit codes: 0 success, 1 verification failure, 2 input error, 64 usage
// error. Reports go to stdout as canonical JSON; human-oriented notes go to
// stderr.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "balsched/datasets.hpp"
#include "balsched/errors.hpp"
#include "balsched/jobs_io.hpp"
#include "balsched/offpsp.hpp"
#include "balsched/ppsjbp.hpp"
#include "balsched/report.hpp"
#include "balsched/rng.hpp"
#include "balsched/verification.hpp"

namespace {

using namespace balsched;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitUsage = 64;

// Stream tag for draws that are not allocation iterations (iteration k uses
// stream k, so sampling of non-winning iterations lives far away from them).
constexpr std::uint64_t kSamplingStream = 0xffffffffffffffffULL;

TieMode parse_tie_mode(const std::string& text) {
    return text == "first" ? TieMode::FirstIndex : TieMode::Paper;
}

// --seed wins; otherwise BALSCHED_SEED; otherwise 0.
std::uint64_t resolve_seed(bool seed_given, std::uint64_t seed_flag) {
    if (seed_given) return seed_flag;
    const char* env = std::getenv("BALSCHED_SEED");
    if (!env || !*env) return 0;
    char* end = nullptr;
    const auto value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
        throw CLI::ValidationError("BALSCHED_SEED",
                                   "BALSCHED_SEED is not an unsigned integer");
    return value;
}

void emit(const std::string& text) { std::fputs(text.c_str(), stdout); }

void write_csv_dir(const std::string& dir, const ComparisonReport& report) {
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    write_schedule_csv(report,
                       std::filesystem::path(dir) /
                           (report.algorithm + "_schedules.csv"));
}

struct ScheduleArgs {
    std::string jobs_path;
    std::string algo = "ppsjbp";
    int schedules = 0;
    std::uint64_t iterations = 8000;
    std::uint64_t seed = 0;
    bool seed_given = false;
    double threshold = 0.0;
    bool threshold_given = false;
    std::string tie_mode = "paper";
    bool shuffle_order = false;
    unsigned workers = 1;
    std::string inject_path;
    std::string csv_dir;
};

ComparisonReport run_ppsjbp_report(const JobPool& pool, const ScheduleArgs& args,
                                   std::uint64_t seed) {
    RraConfig config;
    config.iterations = args.iterations;
    config.schedule_count = args.schedules;
    config.master_seed = seed;
    config.tie_mode = parse_tie_mode(args.tie_mode);
    config.shuffle_job_order = args.shuffle_order;
    config.workers = args.workers;

    AssignmentTable table;
    if (!args.inject_path.empty()) {
        table = read_assignment_csv(args.inject_path, pool, args.schedules);
        config.injected = &table;
    }

    const ScheduleSet set = run_ppsjbp(pool, config);

    RunParams params;
    params.iterations = config.injected ? table.rows.size() : config.iterations;
    params.schedule_count = args.schedules;
    params.seed = seed;
    return make_report("ppsjbp", set, params);
}

ComparisonReport run_offpsp_report(const JobPool& pool, int schedules,
                                   std::optional<double> threshold) {
    OffpspConfig config;
    config.schedule_count = schedules;
    config.threshold = threshold;
    const ScheduleSet set = run_offpsp(pool, config);

    RunParams params;
    params.schedule_count = schedules;
    params.threshold = threshold.value_or(
        pool.total_cost() / static_cast<double>(schedules));
    return make_report("offpsp", set, params);
}

int cmd_schedule(const ScheduleArgs& args) {
    const JobPool pool = read_jobs_csv(args.jobs_path);
    ComparisonReport report;
    if (args.algo == "offpsp") {
        report = run_offpsp_report(pool, args.schedules,
                                   args.threshold_given
                                       ? std::optional<double>(args.threshold)
                                       : std::nullopt);
    } else {
        report = run_ppsjbp_report(pool, args,
                                   resolve_seed(args.seed_given, args.seed));
    }
    emit(to_canonical_json(report));
    write_csv_dir(args.csv_dir, report);
    return kExitOk;
}

int cmd_compare(const ScheduleArgs& args) {
    const JobPool pool = read_jobs_csv(args.jobs_path);
    const std::uint64_t master = resolve_seed(args.seed_given, args.seed);

    // The allocation half draws from its own derived stream, so each half of
    // the comparison can be reproduced on its own.
    const ComparisonReport ppsjbp_report =
        run_ppsjbp_report(pool, args, derive_seed(master, 1));
    const ComparisonReport offpsp_report = run_offpsp_report(
        pool, args.schedules,
        args.threshold_given ? std::optional<double>(args.threshold)
                             : std::nullopt);

    emit(to_canonical_json(ppsjbp_report, offpsp_report));
    write_csv_dir(args.csv_dir, ppsjbp_report);
    write_csv_dir(args.csv_dir, offpsp_report);
    return kExitOk;
}

int cmd_random_sets(const ScheduleArgs& args, int k_prime) {
    if (args.schedules < 2)
        throw CLI::ValidationError("--schedules",
                                   "random-sets needs at least 2 schedules");
    if (args.iterations < 2 * static_cast<std::uint64_t>(k_prime) + 1)
        throw CLI::ValidationError(
            "--k-prime", "need iterations >= 2*k_prime + 1 to sample losers");

    const JobPool pool = read_jobs_csv(args.jobs_path);
    const std::uint64_t master = resolve_seed(args.seed_given, args.seed);

    RraConfig config;
    config.iterations = args.iterations;
    config.schedule_count = args.schedules;
    config.master_seed = master;
    config.tie_mode = parse_tie_mode(args.tie_mode);
    config.shuffle_job_order = args.shuffle_order;
    config.workers = args.workers;

    const RraOutput out = rra(pool, config);
    const MbdfResult best = mbdf(out.cost_matrix, config.tie_mode);

    RandomSetComparison comparison;
    comparison.balanced = make_schedule_report(
        materialize(pool, replay_allocation(pool, config, best.index),
                    args.schedules, 1.0, best.index));

    // Uniform sample, without replacement, of 2*k_prime non-winning
    // iterations; first half prime, second half double prime.
    std::vector<std::uint64_t> losers;
    losers.reserve(args.iterations - 1);
    for (std::uint64_t k = 0; k < args.iterations; ++k)
        if (k != best.index) losers.push_back(k);
    Rng rng(derive_seed(master, kSamplingStream));
    const auto wanted = static_cast<std::size_t>(2 * k_prime);
    for (std::size_t i = 0; i < wanted; ++i) {
        const auto j = i + rng.bounded(losers.size() - i);
        std::swap(losers[i], losers[j]);
    }
    for (std::size_t i = 0; i < wanted; ++i) {
        const auto report = make_schedule_report(
            materialize(pool, replay_allocation(pool, config, losers[i]),
                        args.schedules, 1.0, losers[i]));
        if (i < static_cast<std::size_t>(k_prime))
            comparison.group_prime.push_back(report);
        else
            comparison.group_double_prime.push_back(report);
    }

    emit(to_canonical_json(comparison));
    return kExitOk;
}

struct VerifyArgs {
    std::vector<std::string> lemmas;
    std::uint64_t seed = 0;
    bool seed_given = false;
    double trials_scale = 1.0;
    int schedules = 0;      // 0 = per-lemma default
    std::size_t pool_size = 0;
    int j_high = 0;
    std::uint64_t iterations = 0;
};

int cmd_verify(const VerifyArgs& args) {
    std::vector<LemmaId> selected;
    if (args.lemmas.empty()) {
        selected = {LemmaId::L1, LemmaId::L2, LemmaId::L3, LemmaId::L4,
                    LemmaId::C1};
    } else {
        for (const auto& name : args.lemmas) {
            const auto id = lemma_from_string(name);
            if (!id) throw CLI::ValidationError("--lemmas", "unknown lemma '" + name + "'");
            selected.push_back(*id);
        }
    }

    const std::uint64_t master = resolve_seed(args.seed_given, args.seed);
    const auto scaled = [&args](std::uint64_t base) {
        const double value = static_cast<double>(base) * args.trials_scale;
        return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(value));
    };

    bool all_pass = true;
    for (const LemmaId id : selected) {
        const std::uint64_t seed =
            derive_seed(master, static_cast<std::uint64_t>(id) + 100);
        LemmaReport report;
        switch (id) {
            case LemmaId::L1:
                report = check_concentration(args.schedules ? args.schedules : 3,
                                             args.j_high ? args.j_high : 3,
                                             scaled(200000), seed);
                break;
            case LemmaId::L2:
                report = check_expected_load(args.pool_size ? args.pool_size : 200,
                                             args.schedules ? args.schedules : 4,
                                             scaled(20000), seed);
                break;
            case LemmaId::L3:
                report = check_coupon_collector(args.schedules ? args.schedules : 4,
                                                scaled(200000), seed);
                break;
            case LemmaId::L4:
                report = check_chernoff_tail(args.pool_size ? args.pool_size : 200,
                                             args.schedules ? args.schedules : 4,
                                             scaled(200000), seed);
                break;
            case LemmaId::C1:
                report = check_secretary(args.iterations ? args.iterations : 4000,
                                         scaled(2000), seed);
                break;
        }
        emit(to_json_line(report) + "\n");
        std::fprintf(stderr, "%-2s  predicted %-12s observed %-12s %s\n",
                     to_string(report.lemma_id).c_str(),
                     format_sig6(report.predicted).c_str(),
                     format_sig6(report.observed).c_str(),
                     report.pass ? "pass" : "FAIL");
        all_pass = all_pass && report.pass;
    }
    return all_pass ? kExitOk : kExitVerificationFailed;
}

struct BenchArgs {
    std::string jobs_path;
    std::size_t count = 200;
    int schedules = 4;
    std::vector<std::uint64_t> k_values = {4000, 8000};
    std::uint64_t seed = 0;
    bool seed_given = false;
};

int cmd_bench(const BenchArgs& args) {
    const std::uint64_t seed = resolve_seed(args.seed_given, args.seed);
    JobPool pool;
    if (!args.jobs_path.empty()) {
        pool = read_jobs_csv(args.jobs_path);
    } else {
        SyntheticSpec spec;
        spec.count = args.count;
        spec.seed = seed;
        pool = generate_synthetic(spec);
    }
    const auto points =
        check_runtime_scaling(pool, args.schedules, args.k_values, seed);
    emit(to_canonical_json(points, pool.size(), args.schedules));
    return kExitOk;
}

std::string summary_json(
    const std::vector<std::pair<std::string, std::string>>& sorted_fields) {
    std::string out = "{";
    for (std::size_t i = 0; i < sorted_fields.size(); ++i) {
        if (i) out += ',';
        out += '"' + sorted_fields[i].first + "\":" + sorted_fields[i].second;
    }
    out += "}\n";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Balanced schedule construction and verification"};
    app.require_subcommand(1);

    // generate
    struct {
        std::size_t count = 200;
        std::int64_t cost_min = 1;
        std::int64_t cost_max = 100;
        std::uint64_t seed = 0;
        std::string out;
    } gen;
    auto* generate = app.add_subcommand("generate", "Write a synthetic job pool");
    generate->add_option("--count", gen.count, "Number of jobs")
        ->capture_default_str();
    generate->add_option("--cost-min", gen.cost_min, "Smallest cost")
        ->capture_default_str();
    generate->add_option("--cost-max", gen.cost_max, "Largest cost")
        ->capture_default_str();
    auto* gen_seed = generate->add_option("--seed", gen.seed, "Master seed");
    generate->add_option("--out", gen.out, "Output jobs CSV")->required();

    // ingest-bus
    struct {
        std::string input;
        std::string out;
    } bus;
    auto* ingest_bus =
        app.add_subcommand("ingest-bus", "Jobs from bus-line workloads");
    ingest_bus->add_option("--input", bus.input, "Delimited bus-line file")
        ->required();
    ingest_bus->add_option("--out", bus.out, "Output jobs CSV")->required();

    // ingest-kdd
    struct {
        std::string input;
        std::string out;
        std::size_t top_students = 30;
        std::string stream = "student";
    } kdd;
    auto* ingest_kdd =
        app.add_subcommand("ingest-kdd", "Jobs from course activity logs");
    ingest_kdd->add_option("--input", kdd.input, "Course log CSV")->required();
    ingest_kdd->add_option("--out", kdd.out, "Output jobs CSV")->required();
    ingest_kdd
        ->add_option("--top-students", kdd.top_students,
                     "Keep this many most-enrolled students (ties included)")
        ->capture_default_str();
    ingest_kdd
        ->add_option("--kdd-stream", kdd.stream,
                     "Gap computation stream: student or student-course")
        ->check(CLI::IsMember({"student", "student-course"}));

    // shared scheduling options
    ScheduleArgs sched;
    int k_prime = 4;
    const auto add_common = [&sched](CLI::App* cmd, bool with_algo) {
        cmd->add_option("--jobs", sched.jobs_path, "Jobs CSV")->required();
        cmd->add_option("--schedules", sched.schedules, "Number of schedules (l)")
            ->required();
        cmd->add_option("--iterations", sched.iterations,
                        "Allocation iterations (K)")
            ->capture_default_str();
        cmd->add_option("--tie-mode", sched.tie_mode,
                        "Equal-variance tie handling: paper (last) or first")
            ->check(CLI::IsMember({"paper", "first"}));
        cmd->add_flag("--shuffle-order", sched.shuffle_order,
                      "Also draw a random job visiting order per iteration");
        cmd->add_option("--workers", sched.workers,
                        "Worker threads (0 = hardware)")
            ->capture_default_str();
        if (with_algo)
            cmd->add_option("--algo", sched.algo, "ppsjbp or offpsp")
                ->check(CLI::IsMember({"ppsjbp", "offpsp"}))
                ->capture_default_str();
        return cmd->add_option("--seed", sched.seed, "Master seed");
    };

    auto* schedule =
        app.add_subcommand("schedule", "Build one schedule set from a pool");
    auto* sched_seed = add_common(schedule, true);
    auto* sched_threshold = schedule->add_option(
        "--threshold", sched.threshold, "Cost budget per schedule (offpsp)");
    schedule->add_option("--inject-assignments", sched.inject_path,
                         "Fixed assignment CSV instead of sampling (testing only)");
    schedule->add_option("--csv", sched.csv_dir,
                         "Directory for per-schedule CSV tables");

    auto* compare = app.add_subcommand(
        "compare", "Run both algorithms on one pool and diff them");
    auto* compare_seed = add_common(compare, false);
    auto* compare_threshold = compare->add_option(
        "--threshold", sched.threshold, "Cost budget per schedule (offpsp)");
    compare->add_option("--csv", sched.csv_dir,
                        "Directory for per-schedule CSV tables");

    auto* random_sets = app.add_subcommand(
        "random-sets",
        "Selected minimum-variance set next to sampled non-winning iterations");
    auto* random_seed = add_common(random_sets, false);
    random_sets->add_option("--k-prime", k_prime, "Sets per comparison group")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // verify
    VerifyArgs verify_args;
    auto* verify = app.add_subcommand(
        "verify", "Monte Carlo checks of the allocator's statistical claims");
    verify->add_option("--lemmas", verify_args.lemmas,
                       "Subset to run (L1,L2,L3,L4,C1; default all)")
        ->delimiter(',');
    auto* verify_seed =
        verify->add_option("--seed", verify_args.seed, "Master seed");
    verify->add_option("--trials-scale", verify_args.trials_scale,
                       "Multiplier on per-check trial counts")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify->add_option("--schedules", verify_args.schedules,
                       "Override schedule count for all selected checks");
    verify->add_option("--pool-size", verify_args.pool_size,
                       "Override pool size (L2, L4)");
    verify->add_option("--j-high", verify_args.j_high,
                       "Override designated job count (L1)");
    verify->add_option("--iterations", verify_args.iterations,
                       "Override iteration count (C1)");

    // bench
    BenchArgs bench_args;
    auto* bench = app.add_subcommand(
        "bench", "Time the allocation loop across iteration counts");
    bench->add_option("--jobs", bench_args.jobs_path,
                      "Jobs CSV (default: synthetic pool)");
    bench->add_option("--count", bench_args.count, "Synthetic pool size")
        ->capture_default_str();
    bench->add_option("--schedules", bench_args.schedules, "Number of schedules")
        ->capture_default_str();
    bench->add_option("--k-values", bench_args.k_values,
                      "Iteration counts to time")
        ->delimiter(',');
    auto* bench_seed =
        bench->add_option("--seed", bench_args.seed, "Master seed");

    try {
        app.parse(argc, argv);

        if (generate->parsed()) {
            SyntheticSpec spec;
            spec.count = gen.count;
            spec.cost_min = gen.cost_min;
            spec.cost_max = gen.cost_max;
            spec.seed = resolve_seed(gen_seed->count() > 0, gen.seed);
            const JobPool pool = generate_synthetic(spec);
            write_jobs_csv(pool, gen.out);
            emit(summary_json({{"count", std::to_string(pool.size())},
                               {"total_cost", format_sig6(pool.total_cost())}}));
            return kExitOk;
        }
        if (ingest_bus->parsed()) {
            IngestStats stats;
            const JobPool pool = ingest_bus_driver(bus.input, &stats);
            write_jobs_csv(pool, bus.out);
            emit(summary_json(
                {{"jobs", std::to_string(pool.size())},
                 {"rows_read", std::to_string(stats.rows_read)},
                 {"rows_rejected", std::to_string(stats.rows_rejected)},
                 {"total_cost", format_sig6(pool.total_cost())}}));
            return kExitOk;
        }
        if (ingest_kdd->parsed()) {
            KddOptions options;
            options.top_students = kdd.top_students;
            options.stream = kdd.stream == "student-course"
                                 ? KddStream::PerStudentCourse
                                 : KddStream::PerStudent;
            IngestStats stats;
            const JobPool pool = ingest_kdd_logs(kdd.input, options, &stats);
            write_jobs_csv(pool, kdd.out);
            emit(summary_json(
                {{"jobs", std::to_string(pool.size())},
                 {"rows_read", std::to_string(stats.rows_read)},
                 {"rows_rejected", std::to_string(stats.rows_rejected)},
                 {"selected_students", std::to_string(stats.selected_students)},
                 {"total_cost", format_sig6(pool.total_cost())}}));
            return kExitOk;
        }
        if (schedule->parsed()) {
            sched.seed_given = sched_seed->count() > 0;
            sched.threshold_given = sched_threshold->count() > 0;
            return cmd_schedule(sched);
        }
        if (compare->parsed()) {
            sched.seed_given = compare_seed->count() > 0;
            sched.threshold_given = compare_threshold->count() > 0;
            return cmd_compare(sched);
        }
        if (random_sets->parsed()) {
            sched.seed_given = random_seed->count() > 0;
            return cmd_random_sets(sched, k_prime);
        }
        if (verify->parsed()) {
            verify_args.seed_given = verify_seed->count() > 0;
            return cmd_verify(verify_args);
        }
        if (bench->parsed()) {
            bench_args.seed_given = bench_seed->count() > 0;
            return cmd_bench(bench_args);
        }
        return kExitUsage;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\nRun with --help for usage.\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const IntegrityError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const ConfigError& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
