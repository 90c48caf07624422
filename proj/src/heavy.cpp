#include "construct_detail.hpp"

namespace rainbow {

using detail::finish;

namespace {

// Outside partners of v under relation `rel`: classmates not in B.
ElementSet outside_partners(const InstanceIndex &index, const TrackState &state, std::size_t rel, Element v)
{
    ElementSet out;
    for (Element y : index.class_members(rel, v))
        if (y != v && !state.in_b(y))
            out.push_back(y);
    return out;
}

std::vector<Pair> inner_pairs(const InstanceIndex &index, const Component &comp, std::size_t rel)
{
    std::array<Element, 4> e{comp.a, comp.b, *comp.c, *comp.d};
    std::vector<Pair> out;
    for (std::size_t x = 0; x < 4; ++x)
        for (std::size_t y = x + 1; y < 4; ++y)
            if (index.equivalent(rel, e[x], e[y]))
                out.push_back({e[x], e[y]});
    return out;
}

} // namespace

std::optional<Win> try_five_heavy_left_win(const InstanceIndex &index, const TrackState &state,
                                           const ChargeLedger &ledger)
{
    HeavySets heavy = heavy_indices(state, ledger);
    if (heavy.left.size() < 5)
        return std::nullopt;
    const auto &h = heavy.left;
    const std::size_t t = state.left_end();
    const std::size_t first = state.relation_at(1);
    const std::size_t track = state.relation_at(t);
    const Component &mid = state.component(h[1]);
    const Element a = mid.a, b = mid.b, c = *mid.c, d = *mid.d;

    if (index.equivalent(track, c, d)) {
        for (std::size_t k = 2; k < 5; ++k) {
            const Component &comp = state.component(h[k]);
            for (Element v : {comp.a, comp.b})
                for (Element y : outside_partners(index, state, first, v)) {
                    if (y == c || y == d)
                        continue;
                    Overrides ov;
                    ov.assign(t, {c, d});
                    if (!ov.try_assign(1, {v, y}))
                        continue;
                    if (auto win = finish(index, state, ov, "heavy-left-1"))
                        return win;
                }
        }
    }

    // (p, q, r, s) is (a', b', c', d') or its mirror image.
    const std::array<std::array<Element, 4>, 2> orientations{{{a, b, c, d}, {b, a, d, c}}};
    for (const auto &[p, q, r, s] : orientations) {
        if (!index.equivalent(track, p, s))
            continue;
        for (Element y : outside_partners(index, state, first, q)) {
            if (y != s) {
                Overrides ov;
                ov.assign(1, {q, y});
                if (!ov.try_assign(t, {p, s}))
                    continue;
                if (auto win = finish(index, state, ov, "heavy-left-2a"))
                    return win;
                continue;
            }
            for (Pair tp : inner_pairs(index, state.component(h[0]), track)) {
                Overrides ov;
                ov.assign(h[1] - 1, {p, r});
                ov.assign(1, {q, s});
                if (!ov.try_assign(t, tp))
                    continue;
                if (auto win = finish(index, state, ov, "heavy-left-2b"))
                    return win;
            }
        }
    }
    throw InternalLogicError("heavy-left", "five heavy left components but no case applies", state.digest());
}

std::vector<HeavyPairChoice> all_heavy_pair_choices(const InstanceIndex &index, const TrackState &state,
                                                    const ChargeLedger &ledger, std::size_t i, std::size_t j,
                                                    std::optional<std::pair<Element, Element>> exactly_one_of)
{
    const std::size_t first = state.relation_at(1);
    const std::size_t track = state.relation_at(state.left_end());
    const std::array<Element, 4> vs{state.component(i).a, state.component(i).b, state.component(j).a,
                                    state.component(j).b};
    ElementSet ws;
    {
        ElementSet ui = ledger.u_set(i), uj = ledger.u_set(j);
        std::set_union(ui.begin(), ui.end(), uj.begin(), uj.end(), std::back_inserter(ws));
    }
    std::erase_if(ws, [&](Element w) { return std::find(vs.begin(), vs.end(), w) != vs.end(); });

    std::vector<HeavyPairChoice> out;
    for (Element v1 : vs)
        for (Element w1 : ws) {
            if (!index.equivalent(first, v1, w1))
                continue;
            for (Element v2 : vs) {
                if (v2 == v1)
                    continue;
                for (Element w2 : ws) {
                    if (w2 == w1 || !index.equivalent(track, v2, w2))
                        continue;
                    if (exactly_one_of) {
                        auto [q, r] = *exactly_one_of;
                        int hits = (w1 == q || w2 == q) + (w1 == r || w2 == r);
                        if (hits != 1)
                            continue;
                    }
                    out.push_back({v1, w1, v2, w2});
                }
            }
        }
    return out;
}

HeavyPairChoice pick_heavy_pair_elements(const InstanceIndex &index, const TrackState &state,
                                         const ChargeLedger &ledger, std::size_t i, std::size_t j,
                                         std::optional<std::pair<Element, Element>> exactly_one_of)
{
    auto all = all_heavy_pair_choices(index, state, ledger, i, j, exactly_one_of);
    if (all.empty())
        throw InternalLogicError("heavy-pair",
                                 "no four distinct elements for heavy pair " + std::to_string(i) + ","
                                     + std::to_string(j),
                                 state.digest());
    return all.front();
}

} // namespace rainbow
