#include <rainbow/experiment.hpp>

#include <rainbow/construct.hpp>
#include <rainbow/gen.hpp>
#include <rainbow/rng.hpp>

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace rainbow {

namespace {

using nlohmann::json;

template <typename T>
T get_field(const json &j, const char *key, T fallback)
{
    if (!j.contains(key))
        return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &) {
        throw ConfigError(std::string("field '") + key + "' has the wrong type");
    }
}

bool known_generator(const std::string &g)
{
    if (g == "uniform" || g == "planted")
        return true;
    if (g.rfind("deep-", 0) == 0) {
        try {
            parse_deep_variant(g.substr(5));
            return true;
        } catch (const std::invalid_argument &) {
            return false;
        }
    }
    return false;
}

struct Trial
{
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::int64_t c = 0;
    std::string generator;
};

struct TrialRow
{
    std::size_t min_kernel = 0;
    std::string outcome;
    std::string phase;
    std::int64_t wall_nanos = 0;
    std::uint64_t nodes = 0;
};

std::string outcome_name(ExtendStatus s)
{
    switch (s) {
    case ExtendStatus::matched: return "matched";
    case ExtendStatus::proven_none: return "proven-none";
    case ExtendStatus::budget_exhausted: return "budget";
    }
    return "budget";
}

TrialRow run_trial(const Trial &trial, const ExperimentConfig &cfg)
{
    TrialRow row;
    ExtendOptions opt;
    opt.c = trial.c;
    opt.n_min = cfg.nmin;
    opt.exact_budget = cfg.exact_budget;
    auto start = std::chrono::steady_clock::now();
    try {
        if (trial.generator == "uniform") {
            Instance inst = gen_random_hypothesis(trial.n, trial.c, trial.seed, cfg.slack);
            row.min_kernel = min_kernel(inst);
            auto r = solve_constructive(inst, opt);
            row.outcome = outcome_name(r.status);
            row.phase = to_string(r.deepest);
            row.nodes = r.exact_nodes;
            if (r.status == ExtendStatus::matched && !verify_matching(inst, *r.matching).valid)
                row.outcome = "logic-error";
        } else {
            PlantedInstance p = trial.generator == "planted"
                                    ? gen_planted_concentrated(trial.n, trial.c, trial.seed)
                                    : gen_planted_deep(trial.n, parse_deep_variant(trial.generator.substr(5)), trial.c);
            row.min_kernel = min_kernel(p.instance);
            opt.c = p.c_eff;
            auto r = extend_matching(p.instance, p.sub, p.new_rel, opt);
            row.outcome = outcome_name(r.status);
            row.phase = to_string(r.telemetry.phase);
            row.nodes = r.telemetry.exact_nodes;
            if (r.status == ExtendStatus::matched && !verify_partial(p.instance, r.matching).valid)
                row.outcome = "logic-error";
        }
    } catch (const InternalLogicError &) {
        row.outcome = "logic-error";
        row.phase = "unknown";
    }
    if (cfg.record_timing)
        row.wall_nanos = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start)
                             .count();
    return row;
}

std::vector<TrialRow> run_cell(const std::vector<Trial> &trials, const ExperimentConfig &cfg, unsigned threads)
{
    std::vector<TrialRow> rows(trials.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < trials.size(); k = next++)
            rows[k] = run_trial(trials[k], cfg);
    };
    unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials.size())));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < count; ++i)
        pool.emplace_back(worker);
    worker();
    for (auto &th : pool)
        th.join();
    return rows;
}

constexpr Phase all_phases[] = {Phase::direct,  Phase::track,    Phase::scheme2,   Phase::five_heavy_left,
                                Phase::scheme3, Phase::lucky,    Phase::final_win, Phase::exact_fallback};

} // namespace

ExperimentConfig parse_experiment_config(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config must be a JSON object");
    static const std::set<std::string> keys{"master_seed",  "n",    "c",            "trials",
                                            "generators",   "slack", "nmin",        "exact_budget",
                                            "stop_on_failure", "record_timing"};
    for (const auto &[k, v] : j.items())
        if (!keys.count(k))
            throw ConfigError("unknown config field '" + k + "'");

    ExperimentConfig cfg;
    cfg.master_seed = get_field<std::uint64_t>(j, "master_seed", 1);
    cfg.trials = get_field<std::size_t>(j, "trials", 0);
    cfg.slack = get_field<std::int64_t>(j, "slack", 0);
    cfg.nmin = get_field<std::size_t>(j, "nmin", 30);
    cfg.exact_budget = get_field<std::uint64_t>(j, "exact_budget", 10'000'000);
    cfg.stop_on_failure = get_field<bool>(j, "stop_on_failure", false);
    cfg.record_timing = get_field<bool>(j, "record_timing", false);
    cfg.cs = get_field<std::vector<std::int64_t>>(j, "c", {});
    cfg.generators = get_field<std::vector<std::string>>(j, "generators", {});

    if (j.contains("n") && j["n"].is_object()) {
        const json &r = j["n"];
        auto from = get_field<std::size_t>(r, "from", 0);
        auto to = get_field<std::size_t>(r, "to", 0);
        auto step = get_field<std::size_t>(r, "step", 1);
        if (step == 0 || from == 0 || to < from)
            throw ConfigError("n range needs 1 <= from <= to and step >= 1");
        for (std::size_t n = from; n <= to; n += step)
            cfg.ns.push_back(n);
    } else {
        cfg.ns = get_field<std::vector<std::size_t>>(j, "n", {});
    }

    if (cfg.slack < 0)
        throw ConfigError("slack must be non-negative");
    for (const auto &g : cfg.generators) {
        if (!known_generator(g))
            throw ConfigError("unknown generator '" + g + "'");
        for (std::size_t n : cfg.ns) {
            if (n == 0)
                throw ConfigError("n must be positive");
            if (g == "planted" && n < 30)
                throw ConfigError("generator 'planted' needs n >= 30");
            if (g.rfind("deep-", 0) == 0 && n < 100)
                throw ConfigError("generator '" + g + "' needs n >= 100");
        }
    }
    return cfg;
}

unsigned experiment_threads()
{
    unsigned n = 0;
    if (const char *env = std::getenv("RAINBOW_THREADS"))
        n = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    if (n == 0)
        n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

std::string run_experiment(const ExperimentConfig &cfg, unsigned threads)
{
    if (threads == 0)
        threads = experiment_threads();
    std::ostringstream csv;
    std::ostringstream summary;
    csv << csv_header << '\n';

    std::uint64_t trial_index = 0;
    for (std::size_t n : cfg.ns) {
        for (const auto &gen : cfg.generators) {
            bool failed = false;
            std::optional<std::int64_t> c_star;
            for (std::int64_t c : cfg.cs) {
                std::vector<Trial> trials;
                for (std::size_t k = 0; k < cfg.trials; ++k)
                    trials.push_back(Trial{derive_seed(cfg.master_seed, trial_index++), n, c, gen});
                summary << "# cell n=" << n << " c=" << c << " generator=" << gen;
                if (failed && cfg.stop_on_failure) {
                    summary << " skipped\n";
                    continue;
                }
                auto rows = run_cell(trials, cfg, threads);
                std::map<std::string, std::size_t> outcomes;
                std::map<std::string, std::size_t> phases;
                for (std::size_t k = 0; k < rows.size(); ++k) {
                    const auto &t = trials[k];
                    const auto &r = rows[k];
                    csv << t.seed << ',' << t.n << ',' << t.c << ',' << t.generator << ',' << r.min_kernel << ','
                        << r.outcome << ',' << r.phase << ',' << r.wall_nanos << ',' << r.nodes << '\n';
                    ++outcomes[r.outcome];
                    ++phases[r.phase];
                }
                const std::size_t matched = outcomes["matched"];
                summary << " trials=" << rows.size() << " matched=" << matched
                        << " proven_none=" << outcomes["proven-none"] << " logic_error=" << outcomes["logic-error"]
                        << " budget=" << outcomes["budget"] << " success=" << matched << '/' << rows.size()
                        << " phases=";
                bool first = true;
                for (Phase p : all_phases) {
                    summary << (first ? "" : ",") << to_string(p) << ':' << phases[to_string(p)];
                    first = false;
                }
                if (phases.count("unknown"))
                    summary << ",unknown:" << phases["unknown"];
                summary << '\n';
                if (matched != rows.size())
                    failed = true;
                else if (!failed)
                    c_star = c;
            }
            if (!cfg.cs.empty() && cfg.trials > 0) {
                summary << "# c_star n=" << n << " generator=" << gen << " value=";
                if (c_star)
                    summary << *c_star;
                else
                    summary << "none";
                summary << '\n';
            }
        }
    }
    return csv.str() + summary.str();
}

} // namespace rainbow
