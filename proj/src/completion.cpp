#include <rainbow/construct.hpp>

#include <algorithm>

namespace rainbow {

namespace {

class Completion
{
public:
    Completion(const InstanceIndex &index, const TrackState &state, const Overrides &ov)
        : index_(index), state_(state), ov_(ov), consumed_(ov.consumed()), failed_(2 * (state.size() + 2), 0),
          out_(state.size() + 1)
    {
    }

    bool run() { return solve(state_.size(), false); }
    std::vector<Pair> take() { return std::move(out_); }

private:
    bool used(Element e) const { return std::binary_search(consumed_.begin(), consumed_.end(), e); }

    bool usable(std::size_t pos, Pair p) const
    {
        return !used(p.first) && !used(p.second) && index_.equivalent(state_.relation_at(pos), p.first, p.second);
    }

    // next_identity: position pos + 1 took its own identity pair.
    bool solve(std::size_t pos, bool next_identity)
    {
        if (pos == 0)
            return true;
        auto &fail = failed_[2 * pos + (next_identity ? 1 : 0)];
        if (fail)
            return false;

        if (auto it = ov_.assigned().find(pos); it != ov_.assigned().end()) {
            out_[pos] = it->second;
            if (solve(pos - 1, false))
                return true;
            fail = 1;
            return false;
        }

        if (pos >= 2) {
            const Component &own = state_.component(pos);
            Pair p{own.a, own.b};
            if (usable(pos, p)) {
                out_[pos] = p;
                if (solve(pos - 1, true))
                    return true;
            }
        }
        if (pos + 1 <= state_.left_end() && !next_identity) {
            const Component &nx = state_.component(pos + 1);
            for (Pair p : {Pair{nx.a, *nx.c}, Pair{nx.b, *nx.d}}) {
                if (!usable(pos, p))
                    continue;
                out_[pos] = p;
                if (solve(pos - 1, false))
                    return true;
            }
        }
        fail = 1;
        return false;
    }

    const InstanceIndex &index_;
    const TrackState &state_;
    const Overrides &ov_;
    ElementSet consumed_;
    std::vector<char> failed_;
    std::vector<Pair> out_;
};

} // namespace

std::optional<std::vector<Pair>> try_complete_assignment(const InstanceIndex &index, const TrackState &state,
                                                         const Overrides &ov)
{
    for (const auto &[pos, p] : ov.assigned())
        if (pos < 1 || pos > state.size() || !index.equivalent(state.relation_at(pos), p.first, p.second))
            return std::nullopt;
    Completion engine(index, state, ov);
    if (!engine.run())
        return std::nullopt;
    return engine.take();
}

std::vector<Pair> complete_assignment(const InstanceIndex &index, const TrackState &state, const Overrides &ov)
{
    auto r = try_complete_assignment(index, state, ov);
    if (!r)
        throw CompletionImpossible("no completion for " + std::to_string(ov.assigned().size()) + " overrides ("
                                   + state.digest() + ")");
    return std::move(*r);
}

} // namespace rainbow
