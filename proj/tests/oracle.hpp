#pragma once

// Independent helpers for tests: a plain enumerator over pair tuples and a
// small random instance maker. Neither shares code with the library search.

#include <rainbow/relations.hpp>
#include <rainbow/rng.hpp>

#include <numeric>
#include <vector>

namespace oracle {

using rainbow::Element;
using rainbow::Instance;

inline std::vector<std::vector<std::pair<Element, Element>>> pair_lists(const Instance &inst)
{
    std::vector<std::vector<std::pair<Element, Element>>> out;
    for (const auto &rel : inst.relations()) {
        std::vector<std::pair<Element, Element>> pairs;
        for (const auto &cls : rel.classes())
            for (std::size_t i = 0; i < cls.size(); ++i)
                for (std::size_t j = i + 1; j < cls.size(); ++j)
                    pairs.emplace_back(cls[i], cls[j]);
        out.push_back(std::move(pairs));
    }
    return out;
}

inline bool walk(const std::vector<std::vector<std::pair<Element, Element>>> &pairs, std::size_t r,
                 std::vector<char> &used)
{
    if (r == pairs.size())
        return true;
    for (auto [x, y] : pairs[r]) {
        if (used[x] || used[y])
            continue;
        used[x] = used[y] = 1;
        bool ok = walk(pairs, r + 1, used);
        used[x] = used[y] = 0;
        if (ok)
            return true;
    }
    return false;
}

/// Tries every tuple of one pair per relation, in relation order.
inline bool has_rainbow_matching(const Instance &inst)
{
    std::vector<char> used(inst.ground_size(), 0);
    return walk(pair_lists(inst), 0, used);
}

/// Each relation: a random permutation cut into classes of size 1..4.
inline Instance random_small(std::size_t n, std::size_t ground, std::uint64_t seed)
{
    rainbow::Rng rng(seed);
    std::vector<rainbow::Partition> rels;
    std::vector<Element> perm(ground);
    for (std::size_t r = 0; r < n; ++r) {
        std::iota(perm.begin(), perm.end(), Element{0});
        rng.shuffle(std::span(perm));
        std::vector<rainbow::ElementSet> classes;
        std::size_t at = 0;
        while (at < ground) {
            std::size_t size = 1 + rng.below(4);
            size = std::min(size, ground - at);
            if (size >= 2)
                classes.emplace_back(perm.begin() + static_cast<std::ptrdiff_t>(at),
                                     perm.begin() + static_cast<std::ptrdiff_t>(at + size));
            at += size;
        }
        rels.emplace_back(std::move(classes));
    }
    return Instance(ground, std::move(rels));
}

} // namespace oracle
