#pragma once

// Instance generators: the classical lower-bound family, uniform instances
// meeting the kernel hypothesis, and planted instances that push the
// constructive step past the direct-pair shortcut.

#include <rainbow/relations.hpp>

#include <cstdint>
#include <string>

namespace rainbow {

/// n copies of the partition into triples {3j, 3j+1, 3j+2}, j < n - 1.
Instance gen_lower_bound_family(std::size_t n);

/// Ground size used by gen_random_hypothesis.
std::size_t random_ground_size(std::size_t n, std::int64_t c, std::int64_t slack);

/// Every kernel is at least ceil(16n/5) + c + slack; classes of size 2 or 3.
Instance gen_random_hypothesis(std::size_t n, std::int64_t c, std::uint64_t seed, std::int64_t slack = 0);

struct PlantedInstance
{
    Instance instance;
    /// Valid pairs for every relation except `new_rel`.
    PartialMatching sub;
    std::size_t new_rel = 0;
    /// The largest constant (at most the requested one) the kernels satisfy.
    std::int64_t c_eff = 0;
};

/// Relation 1 meets the planted matching only inside B, so the direct pair
/// fails and the track grows to floor(n/5) - 1 components. Requires n >= 30.
PlantedInstance gen_planted_concentrated(std::size_t n, std::int64_t c, std::uint64_t seed);

enum class DeepVariant
{
    same_component,
    outside,
    split,
    split_blocked,
    conflicts
};

std::string to_string(DeepVariant v);
DeepVariant parse_deep_variant(const std::string &s);

/// Structured instance on which the step runs the whole pipeline up to the
/// free pair. Requires n >= 100.
PlantedInstance gen_planted_deep(std::size_t n, DeepVariant variant, std::int64_t c = 5000);

} // namespace rainbow
