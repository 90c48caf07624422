#include "construct_detail.hpp"

namespace rainbow {

using detail::finish;

std::optional<Pair> try_direct_pair(const InstanceIndex &index, const TrackState &state)
{
    std::optional<Pair> best;
    for (const auto &cls : index.classes(state.relation_at(1))) {
        std::optional<Element> first;
        for (Element e : cls) {
            if (state.in_b(e))
                continue;
            if (!first) {
                first = e;
                continue;
            }
            Pair p{*first, e};
            if (!best || p < *best)
                best = p;
            break;
        }
    }
    return best;
}

namespace {

// Both elements sit in one left component, one in the top half and one in the
// bottom half.
bool split_across(const TrackState &state, Element x, Element y)
{
    auto sx = state.locate(x);
    auto sy = state.locate(y);
    if (!sx || !sy || sx->position != sy->position || !state.is_left(sx->position))
        return false;
    return detail::is_top(sx->role) != detail::is_top(sy->role);
}

std::optional<Pair> unless_pair(const InstanceIndex &index, const TrackState &state, std::size_t pos)
{
    std::optional<Pair> best;
    for (const auto &cls : index.classes(state.relation_at(pos))) {
        std::optional<Pair> here;
        for (std::size_t i = 0; i < cls.size() && !here; ++i) {
            if (state.in_right(cls[i]))
                continue;
            for (std::size_t j = i + 1; j < cls.size(); ++j) {
                if (state.in_right(cls[j]) || split_across(state, cls[i], cls[j]))
                    continue;
                here = Pair{cls[i], cls[j]};
                break;
            }
        }
        if (here && (!best || *here < *best))
            best = here;
    }
    return best;
}

} // namespace

std::optional<Win> try_unless_win(const InstanceIndex &index, const TrackState &state, std::size_t pos)
{
    auto p = unless_pair(index, state, pos);
    if (!p)
        return std::nullopt;
    Overrides ov;
    ov.assign(pos, *p);
    auto win = finish(index, state, ov, pos == 1 ? "direct" : "unless");
    if (!win)
        throw InternalLogicError("unless-win",
                                 "pair " + std::to_string(p->first) + "," + std::to_string(p->second)
                                     + " at position " + std::to_string(pos) + " not completable",
                                 state.digest());
    return win;
}

std::optional<Win> build_track(const InstanceIndex &index, TrackState &state, StepTelemetry *telemetry)
{
    const std::size_t m = state.size();
    const std::size_t t = state.track_length();
    while (state.left_end() < t) {
        const std::size_t i = state.left_end();
        if (auto win = try_unless_win(index, state, i))
            return win;

        const std::size_t rel = state.relation_at(i);
        std::vector<int> charges(m + 1, 0);
        std::vector<ElementSet> outside(m + 1);
        for (const auto &cls : index.classes(rel)) {
            for (Element x : cls) {
                if (auto s = state.locate(x)) {
                    ++charges[s->position];
                    continue;
                }
                std::size_t target = 0;
                for (Element y : cls) {
                    auto sy = state.locate(y);
                    if (sy && state.is_right(sy->position) && (target == 0 || sy->position < target))
                        target = sy->position;
                }
                if (target == 0)
                    throw InternalLogicError("scheme-1", "element " + std::to_string(x) + " has no charge target",
                                             state.digest());
                ++charges[target];
                outside[target].push_back(x);
            }
        }

        std::size_t total = 0;
        std::array<std::size_t, 5> hist{};
        for (std::size_t p = 2; p <= m; ++p) {
            if (charges[p] > 4)
                throw InternalLogicError("scheme-1", "component at " + std::to_string(p) + " has "
                                                         + std::to_string(charges[p]) + " charges",
                                         state.digest());
            total += static_cast<std::size_t>(charges[p]);
            ++hist[static_cast<std::size_t>(charges[p])];
        }
        if (total != index.kernel_size(rel))
            throw InternalLogicError("scheme-1", "charge total differs from kernel size", state.digest());
        if (telemetry) {
            telemetry->scheme1_histograms.push_back(hist);
            telemetry->invariant_checks += 2;
        }

        std::size_t full = 0;
        for (std::size_t p = i + 1; p <= m && full == 0; ++p)
            if (charges[p] == 4)
                full = p;
        if (full == 0)
            throw InternalLogicError("track", "no right component with four charges at step " + std::to_string(i),
                                     state.digest());

        const Component &comp = state.component(full);
        std::optional<Element> c, d;
        for (Element x : outside[full]) {
            if (index.equivalent(rel, x, comp.a) && !c)
                c = x;
            else if (index.equivalent(rel, x, comp.b) && !d)
                d = x;
        }
        if (!c || !d)
            throw InternalLogicError("track", "outside charges do not split between a and b", state.digest());
        state.promote(full, *c, *d);
        if (telemetry)
            telemetry->track_components = state.left_end() - 1;
    }
    return std::nullopt;
}

} // namespace rainbow
