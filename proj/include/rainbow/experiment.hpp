#pragma once

// Batch runs over (n, generator, c) cells with CSV output.
//
// Config (JSON):
//   master_seed      unsigned, default 1
//   n                list of sizes, or {"from", "to", "step"}
//   c                list of constants, swept in the order given
//   trials           trials per cell
//   generators       any of "uniform", "planted", "deep-<variant>"
//   slack            extra kernel room for "uniform", default 0
//   nmin             exact base size, default 30
//   exact_budget     node budget for exact fallbacks, default 10000000
//   stop_on_failure  skip the remaining c values of an (n, generator) sweep
//                    after a cell with any unmatched trial, default false
//   record_timing    fill wall_nanos, default false (keeps reports
//                    byte-identical across runs)
//
// Trial k (counting over all cells in n, generator, c order) uses seed
// derive_seed(master_seed, k).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rainbow {

class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig
{
    std::uint64_t master_seed = 1;
    std::vector<std::size_t> ns;
    std::vector<std::int64_t> cs;
    std::size_t trials = 0;
    std::vector<std::string> generators;
    std::int64_t slack = 0;
    std::size_t nmin = 30;
    std::uint64_t exact_budget = 10'000'000;
    bool stop_on_failure = false;
    bool record_timing = false;
};

inline constexpr std::string_view csv_header = "seed,n,c,generator,min_kernel,outcome,phase_reached,wall_nanos,node_count";

/// Throws ConfigError on unknown keys, bad types or unusable values.
ExperimentConfig parse_experiment_config(std::string_view json);

/// RAINBOW_THREADS, or the hardware concurrency when unset or 0.
unsigned experiment_threads();

/// Full CSV report: header, one row per trial, then '#' summary lines.
std::string run_experiment(const ExperimentConfig &config, unsigned threads = 0);

} // namespace rainbow
