#pragma once

// Exact rainbow-matching search: depth-first over per-relation pair choices,
// always branching on the relation with the fewest pairs still available.

#include <rainbow/relations.hpp>

#include <cstdint>
#include <span>
#include <string>

namespace rainbow {

enum class ExactVerdict
{
    matched,
    proven_none,
    budget_exhausted
};

std::string to_string(ExactVerdict v);

struct ExactResult
{
    ExactVerdict verdict = ExactVerdict::proven_none;
    std::optional<Matching> matching;
    std::uint64_t nodes = 0;
};

/// Budget counts search nodes; 0 means unlimited.
ExactResult exact_solve(const Instance &inst, std::uint64_t budget = 0);

struct PartialExactResult
{
    ExactVerdict verdict = ExactVerdict::proven_none;
    /// Indexed like the instance; filled only for the requested relations.
    PartialMatching matching;
    std::uint64_t nodes = 0;
};

/// Solves only the listed relations (distinct indices).
PartialExactResult exact_solve(const Instance &inst, std::span<const std::size_t> relations,
                               std::uint64_t budget = 0);

/// Same search over a prebuilt index.
PartialExactResult exact_solve(const InstanceIndex &index, std::span<const std::size_t> relations,
                               std::uint64_t budget = 0);

} // namespace rainbow
