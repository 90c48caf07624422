#pragma once

#include <rainbow/construct.hpp>

#include <algorithm>

namespace rainbow::detail {

/// Runs the completion engine; a result is returned only on success.
inline std::optional<Win> finish(const InstanceIndex &index, const TrackState &state, const Overrides &ov,
                                 std::string branch)
{
    auto pairs = try_complete_assignment(index, state, ov);
    if (!pairs)
        return std::nullopt;
    return Win{std::move(*pairs), std::move(branch)};
}

/// Throws InternalLogicError inside the proven regime, RegimeUnsupported
/// outside it.
[[noreturn]] inline void fail_late(const std::string &step, const std::string &detail, const TrackState &state,
                                   std::int64_t c)
{
    if (constant_is_proven(c))
        throw InternalLogicError(step, detail, state.digest());
    throw RegimeUnsupported(step, detail);
}

inline bool contains(const ElementSet &s, Element x)
{
    return std::find(s.begin(), s.end(), x) != s.end();
}

inline bool is_top(Role r) { return r == Role::a || r == Role::c; }

} // namespace rainbow::detail
