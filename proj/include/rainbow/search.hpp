#pragma once

// Randomized-restart search for instances without a rainbow matching.

#include <rainbow/relations.hpp>

#include <cstdint>
#include <optional>

namespace rainbow {

struct SearchOptions
{
    std::size_t n = 3;
    std::size_t kernel_target = 8;
    std::size_t max_ground = 12;
    /// Total node budget over all restarts (build steps plus exact-check nodes).
    std::uint64_t budget = 100'000'000;
    std::uint64_t seed = 1;
    /// Node cap for one restart.
    std::uint64_t restart_nodes = 2'000'000;
};

struct SearchResult
{
    std::optional<Instance> witness;
    /// Every ground size in range had a restart finish uncapped without a
    /// witness, so none exists within the bounds.
    bool exhaustive = false;
    std::uint64_t nodes = 0;
    std::uint64_t restarts = 0;
};

/// Every witness has classes of size 2 or 3, every kernel at least the
/// target, and is certified unmatchable by the exact solver.
SearchResult search_unmatchable(const SearchOptions &options);

struct MinKernelResult
{
    /// Largest target with a witness; 0 when none was found.
    std::size_t kernel = 0;
    std::optional<Instance> witness;
    /// The next target up was ruled out exhaustively.
    bool exhaustive = false;
    std::uint64_t nodes = 0;
};

/// Raises the kernel target from 2 until the search fails. `budget` applies
/// to each target separately.
MinKernelResult min_unmatchable_kernel(std::size_t n, std::size_t max_ground, std::uint64_t budget,
                                       std::uint64_t seed = 1);

} // namespace rainbow
