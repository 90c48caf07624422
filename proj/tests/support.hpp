#pragma once

#include <rainbow/construct.hpp>
#include <rainbow/fixture.hpp>

inline rainbow::Matching as_matching(const rainbow::Fixture &f, const std::vector<rainbow::Pair> &by_position)
{
    rainbow::Matching m;
    m.pairs.resize(f.state.size());
    for (std::size_t pos = 1; pos <= f.state.size(); ++pos)
        m.pairs[f.state.relation_at(pos)] = by_position[pos];
    return m;
}

inline bool valid(const rainbow::Fixture &f, const rainbow::Win &w)
{
    return rainbow::verify_matching(f.instance, as_matching(f, w.by_position)).valid;
}

/// Five heavy track components; position 3 is set up by the caller.
inline rainbow::FixtureSpec five_heavy_left()
{
    rainbow::FixtureSpec spec;
    for (std::size_t p = 2; p <= 6; ++p) {
        if (p != 2)
            spec.sigma[p] = 4;
        spec.tau[p] = 4;
    }
    return spec;
}
