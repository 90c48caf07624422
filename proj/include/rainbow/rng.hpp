#pragma once

// Portable, bit-reproducible randomness. Standard distributions are
// implementation-defined, so bounded draws and shuffles are done here on top
// of the raw mt19937_64 stream (whose output sequence the standard fixes).

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace rainbow {

/// One SplitMix64 output step applied to `x`.
constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Child seed for trial `index` of a run with seed `master`.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
{
    return splitmix64(master ^ splitmix64(index + 1));
}

class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform draw from [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound)
    {
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do
            x = engine_();
        while (x >= limit);
        return x % bound;
    }

    bool coin() { return (engine_() >> 63) != 0; }

    template <typename T>
    void shuffle(std::span<T> items)
    {
        for (std::size_t i = items.size(); i > 1; --i)
            std::swap(items[i - 1], items[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace rainbow
