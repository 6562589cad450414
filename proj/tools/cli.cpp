#include "cli.hpp"

#include "binstretch/bench.hpp"
#include "binstretch/certificate.hpp"
#include "binstretch/combinatorics.hpp"
#include "binstretch/pruning.hpp"
#include "binstretch/search.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>

namespace binstretch::cli {

namespace {

enum class StatsLevel
{
    none,
    summary,
    full,
};

struct RunConfig
{
    int m = 0;
    int g = 0;
    int t = 0;
    std::string emit_proof;
    std::size_t memo_cap = 0;
    std::uint64_t memo_min_subtree = 0;
    double time_limit_s = 0;
    StatsLevel stats = StatsLevel::summary;
    std::string suite;
    std::string certificate;
    bool dump = false;
};

void print_result(std::ostream &out, const Verdict &v)
{
    out << "RESULT m=" << v.params.m << " g=" << v.params.g << " t=" << v.params.t
        << " proven=" << (v.proven() ? "true" : "false") << " nodes=" << v.stats.nodes
        << " pruned=" << v.stats.pruned << " memo_hits=" << v.stats.memo_hits << " time_ms=" << v.wall.count()
        << '\n';
}

void print_stats(std::ostream &out, const Verdict &v, StatsLevel level)
{
    if (level == StatsLevel::none)
        return;
    out << "outcome: " << to_string(v.outcome) << " (bound " << v.params.bound() << ", " << v.params.m << " bins)\n";
    if (level == StatsLevel::full) {
        out << "table build: " << v.table_time.count() << " ms\n"
            << "front extensions: " << v.stats.front_extensions << " (members " << v.stats.front_members
            << ", cache hits " << v.stats.extension_cache_hits << " misses " << v.stats.extension_cache_misses << ")\n"
            << "memo entries: " << v.stats.memo_entries << '\n'
            << "memo bytes: " << v.stats.memo_bytes << '\n';
        if (const auto &ts = v.proof_stats)
            out << "proof nodes: " << ts->nodes << " leaves: " << ts->leaves << " depth: " << ts->depth << '\n';
    }
}

SearchOptions options_from(const RunConfig &cfg)
{
    SearchOptions o;
    o.memo_cap_bytes = cfg.memo_cap;
    o.memo_min_subtree = cfg.memo_min_subtree;
    if (cfg.time_limit_s > 0)
        o.time_limit = std::chrono::milliseconds(static_cast<long long>(cfg.time_limit_s * 1000));
    return o;
}

int run_solve(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
    GameParams p;
    try {
        p = GameParams::make(cfg.m, cfg.g, cfg.t);
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    Verdict v;
    try {
        v = cfg.emit_proof.empty() ? solve(p, options_from(cfg)) : solve(p, options_from(cfg), cfg.emit_proof);
    } catch (const std::runtime_error &e) {
        err << "error: " << e.what() << '\n';
        return exit_inconclusive;
    }
    print_result(out, v);
    print_stats(out, v, cfg.stats);
    if (v.outcome == Outcome::inconclusive) {
        err << "inconclusive: resource limit reached\n";
        return exit_inconclusive;
    }
    if (!v.proven())
        return exit_not_proven;
    if (!cfg.emit_proof.empty() && cfg.stats != StatsLevel::none)
        out << "certificate written to " << cfg.emit_proof << '\n';
    return exit_proven;
}

int run_verify(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
    CertificateCheck check;
    try {
        check = check_certificate(cfg.certificate);
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    out << "claimed bound: " << check.params.bound() << " for " << check.params.m << " bins\n";
    const auto &ts = check.stats;
    out << "tree: nodes=" << ts.nodes << " leaves=" << ts.leaves << " depth=" << ts.depth
        << " distinct_items=" << ts.distinct_items << '\n';
    const auto &report = check.report;
    if (!report.passed()) {
        out << "FAIL " << to_string(report.code) << " at " << (report.path.empty() ? "/" : report.path) << ": "
            << report.message << '\n';
        return 1;
    }
    out << "PASS value=" << ts.value << '\n';
    return 0;
}

int run_table(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
    GameParams p;
    try {
        p = GameParams::make(cfg.m, cfg.g, cfg.t);
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    auto counts = std::make_shared<const CountTable>(p);
    const auto vt = compute_v_table(counts);
    const auto &st = vt.stats();
    out << "game: m=" << p.m << " g=" << p.g << " t=" << p.t << '\n'
        << "count tables: N_kn " << (p.t + 1) << "x" << p.m << ", N_Skn " << (p.m * p.g + 1) << "x" << (p.g + 1)
        << "x" << p.m << ", checksum " << std::hex << counts->checksum() << std::dec << '\n'
        << "largest front: " << counts->max_front_size() << '\n'
        << "v-table size: " << vt.size() << ", checksum " << std::hex << vt.checksum() << std::dec << '\n'
        << "algorithm-winning (v = g+1): " << st.algorithm_winning << '\n'
        << "histogram:";
    for (std::size_t v = 0; v < st.histogram.size(); ++v)
        if (st.histogram[v] != 0)
            out << ' ' << v << ':' << st.histogram[v];
    out << '\n';
    if (cfg.dump) {
        if (p.m != 2) {
            err << "error: --dump is only available for 2 bins\n";
            return exit_usage;
        }
        // Rows: first load b1 descending; columns: second load b2. '#' = g+1, '.' = outside.
        const int w = p.g + 1 >= 10 ? 3 : 2;
        out << "v(b1,b2), rows b1 = " << p.t - 1 << "..0, columns b2 = 0..b1\n";
        for (int b1 = p.t - 1; b1 >= 0; --b1) {
            out << std::setw(w) << b1 << " |";
            for (int b2 = 0; b2 <= b1; ++b2) {
                const int v = vt.value(std::vector<Load>{b1, b2});
                if (b1 + b2 > p.m * p.g)
                    out << std::setw(w) << '.';
                else if (v == p.g + 1)
                    out << std::setw(w) << '#';
                else
                    out << std::setw(w) << v;
            }
            out << '\n';
        }
    }
    return 0;
}

int run_bench(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
    std::span<const BenchCase> cases;
    try {
        cases = bench_suite(cfg.suite);
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    int mismatches = 0;
    out << std::left << std::setw(6) << "bins" << std::setw(8) << "bound" << std::setw(10) << "expected"
        << std::setw(14) << "outcome" << std::setw(12) << "time_ms" << std::setw(12) << "reference"
        << "certificate\n";
    const auto certificate = std::filesystem::temp_directory_path() / "binstretch_bench.json";
    for (const auto &c : cases) {
        const auto v = solve(c.params, options_from(cfg), certificate);
        std::string cert = "-";
        bool ok = v.proven() == c.expected_proven && v.outcome != Outcome::inconclusive;
        if (v.proven()) {
            const auto report = check_certificate(certificate).report;
            std::filesystem::remove(certificate);
            cert = report.passed() ? "verified" : "FAILED " + std::string(to_string(report.code));
            ok = ok && report.passed();
        }
        if (!ok)
            ++mismatches;
        out << std::setw(6) << c.params.m << std::setw(8) << c.params.bound() << std::setw(10)
            << (c.expected_proven ? "Yes" : "No") << std::setw(14) << to_string(v.outcome) << std::setw(12)
            << v.wall.count() << std::setw(12) << c.reference_time << cert << (ok ? "" : "  MISMATCH") << '\n';
        print_result(out, v);
    }
    out << std::right;
    if (mismatches != 0) {
        err << mismatches << " case(s) did not match the reference verdicts\n";
        return 1;
    }
    return 0;
}

void add_game_options(CLI::App *cmd, RunConfig &cfg)
{
    cmd->add_option("-m,--bins", cfg.m, "number of bins")->required();
    cmd->add_option("-g,--granularity", cfg.g, "bin capacity in item units")->required();
    cmd->add_option("-t,--target", cfg.t, "load the adversary must force")->required();
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Lower bounds for online bin stretching by adversarial game search"};
    app.require_subcommand(1);
    RunConfig cfg;

    const std::map<std::string, StatsLevel> stats_map{
        {"none", StatsLevel::none}, {"summary", StatsLevel::summary}, {"full", StatsLevel::full}};

    auto *solve_cmd = app.add_subcommand("solve", "search for a tree proof of t/g");
    add_game_options(solve_cmd, cfg);
    solve_cmd->add_option("--emit-proof", cfg.emit_proof, "write the certificate here when proven");
    solve_cmd->add_option("--memo-cap", cfg.memo_cap, "memo byte cap (0 = unbounded)");
    solve_cmd->add_option("--memo-min-subtree", cfg.memo_min_subtree,
                          "only memoize configurations whose search visited this many nodes");
    solve_cmd->add_option("--time-limit", cfg.time_limit_s, "search time budget in seconds (0 = none)");
    solve_cmd->add_option("--stats", cfg.stats, "none, summary or full")
        ->transform(CLI::CheckedTransformer(stats_map, CLI::ignore_case));

    auto *verify_cmd = app.add_subcommand("verify", "check a certificate file");
    verify_cmd->add_option("certificate", cfg.certificate, "certificate path")->required();

    auto *table_cmd = app.add_subcommand("table", "print count-table and v-table summaries");
    add_game_options(table_cmd, cfg);
    table_cmd->add_flag("--dump", cfg.dump, "print the full v-table grid (2 bins only)");

    auto *bench_cmd = app.add_subcommand("bench", "reproduce the reference verdicts and timings");
    bench_cmd->add_option("--suite", cfg.suite, "paper-small or paper-full")->required();
    bench_cmd->add_option("--memo-cap", cfg.memo_cap, "memo byte cap (0 = unbounded)");
    bench_cmd->add_option("--time-limit", cfg.time_limit_s, "per-case time budget in seconds (0 = none)");

    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
        return exit_usage;
    }

    if (solve_cmd->parsed())
        return run_solve(cfg, out, err);
    if (verify_cmd->parsed())
        return run_verify(cfg, out, err);
    if (table_cmd->parsed())
        return run_table(cfg, out, err);
    return run_bench(cfg, out, err);
}

} // namespace binstretch::cli
