#pragma once

// Core data model: equivalence relations given as partitions of a dense
// ground set, kernels, rainbow matchings and their verification.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rainbow {

using Element = std::uint32_t;

/// Sorted, duplicate-free list of elements.
using ElementSet = std::vector<Element>;

struct Pair
{
    Element first = 0;
    Element second = 0;

    friend auto operator<=>(const Pair &, const Pair &) = default;
};

class InvalidInstance : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// One equivalence relation. Only classes of size >= 2 are stored; every
/// other element is an implicit singleton. Classes are kept sorted, and the
/// class list is sorted lexicographically, so equal partitions compare equal.
class Partition
{
public:
    Partition() = default;
    explicit Partition(std::vector<ElementSet> classes);

    const std::vector<ElementSet> &classes() const noexcept { return classes_; }
    std::size_t kernel_size() const noexcept { return kernel_size_; }

    friend bool operator==(const Partition &, const Partition &) = default;

private:
    std::vector<ElementSet> classes_;
    std::size_t kernel_size_ = 0;
};

class Instance
{
public:
    Instance() = default;
    Instance(std::size_t ground_size, std::vector<Partition> relations);

    std::size_t ground_size() const noexcept { return ground_size_; }
    std::size_t size() const noexcept { return relations_.size(); }
    const std::vector<Partition> &relations() const noexcept { return relations_; }
    const Partition &relation(std::size_t i) const { return relations_.at(i); }

    friend bool operator==(const Instance &, const Instance &) = default;

private:
    std::size_t ground_size_ = 0;
    std::vector<Partition> relations_;
};

/// One pair per relation, indexed like Instance::relations().
struct Matching
{
    std::vector<Pair> pairs;

    friend bool operator==(const Matching &, const Matching &) = default;
};

/// Pairs for a subset of relations; nullopt marks an unmatched relation.
using PartialMatching = std::vector<std::optional<Pair>>;

ElementSet kernel(const Partition &p);
ElementSet class_of(const Partition &p, Element x);
std::size_t min_kernel(const Instance &inst);

/// Splits classes so every class has size 2 or 3. Kernels are preserved and
/// every output class is contained in an input class.
Instance normalize(const Instance &inst);

enum class Violation
{
    none,
    wrong_pair_count,
    element_out_of_range,
    element_reused,
    not_equivalent
};

struct VerificationReport
{
    bool valid = true;
    Violation violation = Violation::none;
    /// Relation index the violation was found at.
    std::size_t relation = 0;
    /// The offending element, for range and reuse violations.
    Element element = 0;
    std::string message;
};

std::string to_string(Violation v);

/// Checks the matching in a fixed order: pair count, element range,
/// distinctness (scanning relations in order, first element then second),
/// then equivalence by relation index.
VerificationReport verify_matching(const Instance &inst, const Matching &m);

/// Same checks restricted to the relations that carry a pair.
VerificationReport verify_partial(const Instance &inst, const PartialMatching &m);

/// Constant-time class lookup for every relation of an instance.
class InstanceIndex
{
public:
    static constexpr std::uint32_t no_class = 0xffffffffu;

    explicit InstanceIndex(const Instance &inst);

    std::size_t ground_size() const noexcept { return ground_size_; }
    std::size_t size() const noexcept { return classes_.size(); }

    std::uint32_t class_id(std::size_t rel, Element x) const { return class_ids_[rel][x]; }
    bool in_kernel(std::size_t rel, Element x) const { return class_ids_[rel][x] != no_class; }
    bool equivalent(std::size_t rel, Element x, Element y) const
    {
        auto cx = class_ids_[rel][x];
        return cx != no_class && cx == class_ids_[rel][y];
    }
    /// Members of x's class, or an empty span for a singleton.
    std::span<const Element> class_members(std::size_t rel, Element x) const;
    const std::vector<ElementSet> &classes(std::size_t rel) const { return classes_[rel]; }
    std::size_t kernel_size(std::size_t rel) const { return kernel_sizes_[rel]; }

private:
    std::size_t ground_size_;
    std::vector<std::vector<ElementSet>> classes_;
    std::vector<std::vector<std::uint32_t>> class_ids_;
    std::vector<std::size_t> kernel_sizes_;
};

/// ceil(16 m / 5): the linear part of the kernel hypothesis for m relations.
constexpr std::int64_t linear_kernel_bound(std::size_t m)
{
    return (16 * static_cast<std::int64_t>(m) + 4) / 5;
}

} // namespace rainbow
