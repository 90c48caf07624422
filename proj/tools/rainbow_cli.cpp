// Command-line front end. Exit codes: 0 success, 1 proven-none or nothing
// found, 2 error, 64 usage.

#include <rainbow/construct.hpp>
#include <rainbow/exact.hpp>
#include <rainbow/experiment.hpp>
#include <rainbow/gen.hpp>
#include <rainbow/io.hpp>
#include <rainbow/search.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace rainbow;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_none = 1;
constexpr int exit_error = 2;
constexpr int exit_usage = 64;

int report_status(ExtendStatus s)
{
    switch (s) {
    case ExtendStatus::matched: return exit_ok;
    case ExtendStatus::proven_none: std::cerr << "no rainbow matching exists\n"; return exit_none;
    case ExtendStatus::budget_exhausted: std::cerr << "search budget exhausted\n"; return exit_error;
    }
    return exit_error;
}

struct SolveArgs
{
    std::string input = "-";
    std::int64_t c = default_constant;
    std::size_t nmin = default_n_min;
    bool telemetry = false;
    bool strict = false;
    std::uint64_t budget = 10'000'000;
};

int run_solve(const SolveArgs &a)
{
    Instance inst = parse_instance(read_text(a.input));
    ExtendOptions opt;
    opt.c = a.c;
    opt.n_min = a.nmin;
    opt.strict = a.strict;
    opt.exact_budget = a.budget;
    auto r = solve_constructive(inst, opt);
    if (a.telemetry)
        for (const auto &step : r.steps)
            std::cerr << to_json_line(step) << '\n';
    if (r.status == ExtendStatus::matched)
        std::cout << write_matching(*r.matching);
    return report_status(r.status);
}

int run_exact(const std::string &input, std::uint64_t budget)
{
    Instance inst = parse_instance(read_text(input));
    auto r = exact_solve(inst, budget);
    if (r.verdict == ExactVerdict::matched) {
        std::cout << write_matching(*r.matching);
        return exit_ok;
    }
    if (r.verdict == ExactVerdict::proven_none) {
        std::cerr << "no rainbow matching exists (" << r.nodes << " nodes)\n";
        return exit_none;
    }
    std::cerr << "search budget exhausted after " << r.nodes << " nodes\n";
    return exit_error;
}

int run_verify(const std::string &instance_path, const std::string &matching_path)
{
    Instance inst = parse_instance(read_text(instance_path));
    Matching m = parse_matching(read_text(matching_path));
    auto rep = verify_matching(inst, m);
    if (rep.valid) {
        std::cout << "valid\n";
        return exit_ok;
    }
    std::cerr << "invalid: " << to_string(rep.violation) << " at relation " << rep.relation + 1 << ": "
              << rep.message << '\n';
    return exit_error;
}

struct GenArgs
{
    std::string family;
    std::size_t n = 0;
    std::int64_t c = default_constant;
    std::uint64_t seed = 1;
    std::int64_t slack = 0;
    std::string variant = "same";
    std::string sub_path;
};

int run_gen(const GenArgs &a)
{
    if (a.family == "lower-bound") {
        std::cout << write_instance(gen_lower_bound_family(a.n));
        return exit_ok;
    }
    if (a.family == "random") {
        std::cout << write_instance(gen_random_hypothesis(a.n, a.c, a.seed, a.slack));
        return exit_ok;
    }
    PlantedInstance p = a.family == "planted" ? gen_planted_concentrated(a.n, a.c, a.seed)
                                              : gen_planted_deep(a.n, parse_deep_variant(a.variant), a.c);
    std::cout << write_instance(p.instance);
    if (!a.sub_path.empty()) {
        std::ofstream out(a.sub_path);
        if (!out)
            throw std::runtime_error("cannot write " + a.sub_path);
        out << "# pairs for every relation except " << p.new_rel + 1 << "; usable constant " << p.c_eff << '\n';
        for (std::size_t i = 0; i < p.sub.size(); ++i)
            if (p.sub[i])
                out << i + 1 << ' ' << p.sub[i]->first << ' ' << p.sub[i]->second << '\n';
    }
    return exit_ok;
}

int run_search(const SearchOptions &opt, bool minimize)
{
    if (minimize) {
        auto r = min_unmatchable_kernel(opt.n, opt.max_ground, opt.budget, opt.seed);
        if (!r.witness) {
            std::cerr << "no unmatchable instance found\n";
            return exit_none;
        }
        std::cout << "# largest kernel found " << r.kernel << (r.exhaustive ? " (next size ruled out)" : "") << '\n'
                  << write_instance(*r.witness);
        return exit_ok;
    }
    auto r = search_unmatchable(opt);
    if (!r.witness) {
        std::cerr << "no unmatchable instance found after " << r.nodes << " nodes"
                  << (r.exhaustive ? " (space exhausted)" : "") << '\n';
        return exit_none;
    }
    std::cout << write_instance(*r.witness);
    return exit_ok;
}

int run_experiment_cmd(const std::string &config_path, unsigned threads)
{
    auto cfg = parse_experiment_config(read_text(config_path));
    std::cout << run_experiment(cfg, threads);
    return exit_ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Rainbow matchings for families of equivalence relations"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto *solve_cmd = app.add_subcommand("solve", "constructive solve of an instance file");
    solve_cmd->add_option("input", solve.input, "instance file, '-' for stdin");
    solve_cmd->add_option("--c", solve.c, "additive constant in the kernel hypothesis");
    solve_cmd->add_option("--nmin", solve.nmin, "number of relations solved exactly as the base");
    solve_cmd->add_flag("--telemetry", solve.telemetry, "write one JSON line per step to stderr");
    solve_cmd->add_flag("--strict", solve.strict, "fail when the kernel hypothesis does not hold");
    solve_cmd->add_option("--budget", solve.budget, "node budget for exact fallbacks (0 = unlimited)");

    std::string exact_input = "-";
    std::uint64_t exact_budget = 0;
    auto *exact_cmd = app.add_subcommand("exact", "exact search");
    exact_cmd->add_option("input", exact_input, "instance file, '-' for stdin");
    exact_cmd->add_option("--budget", exact_budget, "node budget (0 = unlimited)");

    std::string verify_instance, verify_matching_path;
    auto *verify_cmd = app.add_subcommand("verify", "check a matching against an instance");
    verify_cmd->add_option("instance", verify_instance)->required();
    verify_cmd->add_option("matching", verify_matching_path)->required();

    GenArgs gen;
    auto *gen_cmd = app.add_subcommand("gen", "generate an instance");
    gen_cmd->add_option("family", gen.family)
        ->required()
        ->check(CLI::IsMember({"lower-bound", "random", "planted", "deep"}));
    gen_cmd->add_option("n", gen.n, "number of relations")->required();
    gen_cmd->add_option("--c", gen.c, "additive constant");
    gen_cmd->add_option("--seed", gen.seed);
    gen_cmd->add_option("--slack", gen.slack, "extra kernel room (random)");
    gen_cmd->add_option("--variant", gen.variant, "deep variant: same, outside, split, split-blocked, conflicts");
    gen_cmd->add_option("--sub", gen.sub_path, "write the planted partial matching here");

    SearchOptions search;
    bool minimize = false;
    auto *search_cmd = app.add_subcommand("search", "randomized search for unmatchable instances");
    search_cmd->add_option("--n", search.n, "number of relations");
    search_cmd->add_option("--kernel", search.kernel_target, "minimum kernel size");
    search_cmd->add_option("--max-ground", search.max_ground);
    search_cmd->add_option("--budget", search.budget);
    search_cmd->add_option("--restart-nodes", search.restart_nodes);
    search_cmd->add_option("--seed", search.seed);
    search_cmd->add_flag("--min", minimize, "raise the kernel target while witnesses are found");

    std::string config_path;
    unsigned threads = 0;
    auto *exp_cmd = app.add_subcommand("experiment", "run an experiment config, CSV to stdout");
    exp_cmd->add_option("config", config_path)->required();
    exp_cmd->add_option("--threads", threads, "worker threads (0 = RAINBOW_THREADS or auto)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*solve_cmd)
            return run_solve(solve);
        if (*exact_cmd)
            return run_exact(exact_input, exact_budget);
        if (*verify_cmd)
            return run_verify(verify_instance, verify_matching_path);
        if (*gen_cmd)
            return run_gen(gen);
        if (*search_cmd)
            return run_search(search, minimize);
        if (*exp_cmd)
            return run_experiment_cmd(config_path, threads);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    }
    return exit_usage;
}
