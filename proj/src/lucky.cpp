#include "construct_detail.hpp"

#include <deque>
#include <map>

namespace rainbow {

using detail::contains;
using detail::fail_late;
using detail::finish;

namespace {

std::optional<Win> right_charge_a(const InstanceIndex &index, const TrackState &state, const ElementSet &s_i,
                                  std::size_t i)
{
    const std::size_t rel = state.relation_at(i);
    const std::size_t first = state.relation_at(1);
    const Component &own = state.component(i);
    for (const auto &cls : index.classes(rel)) {
        for (std::size_t p = 0; p < cls.size(); ++p) {
            Element x = cls[p];
            if (state.in_b(x) || contains(s_i, x))
                continue;
            for (std::size_t q = p + 1; q < cls.size(); ++q) {
                Element y = cls[q];
                if (state.in_b(y) || contains(s_i, y))
                    continue;
                for (Element u : s_i)
                    for (Element v : {own.a, own.b}) {
                        if (!index.equivalent(first, u, v))
                            continue;
                        Overrides ov;
                        ov.assign(i, {x, y});
                        if (!ov.try_assign(1, {u, v}))
                            continue;
                        if (auto win = finish(index, state, ov, "right-charge-a"))
                            return win;
                    }
                throw InternalLogicError("right-charge-a", "pair outside B u S not completable", state.digest());
            }
        }
    }
    return std::nullopt;
}

std::optional<Win> right_charge_b(const InstanceIndex &index, const TrackState &state, const ElementSet &t_i,
                                  const std::vector<char> &tainted, std::size_t i)
{
    const std::size_t rel = state.relation_at(i);
    const std::size_t t = state.left_end();
    const std::size_t track = state.relation_at(t);
    const Component &own = state.component(i);
    for (std::size_t j = 2; j <= t; ++j) {
        if (tainted[j])
            continue;
        const Component &comp = state.component(j);
        for (Element v : {comp.a, comp.b})
            for (Element z : index.class_members(rel, v)) {
                if (z == v || state.in_b_prime(z) || contains(t_i, z))
                    continue;
                for (Element w : t_i)
                    for (Element u : {own.a, own.b}) {
                        if (!index.equivalent(track, w, u))
                            continue;
                        Overrides ov;
                        ov.assign(i, {v, z});
                        if (!ov.try_assign(t, {w, u}))
                            continue;
                        if (auto win = finish(index, state, ov, "right-charge-b"))
                            return win;
                    }
                throw InternalLogicError("right-charge-b", "untainted left element pair not completable",
                                         state.digest());
            }
    }
    return std::nullopt;
}

} // namespace

Scheme3Result charge_scheme_3(const InstanceIndex &index, const TrackState &state, const ChargeLedger &ledger,
                              std::size_t heavy_position)
{
    const std::size_t i = heavy_position;
    const std::size_t m = state.size();
    const std::size_t rel = state.relation_at(i);
    const ElementSet &s_i = ledger.s_sets[i];
    const ElementSet &t_i = ledger.t_sets[i];
    const ElementSet u_i = ledger.u_set(i);

    std::vector<char> tainted(m + 1, 0);
    for (Element e : t_i)
        if (auto s = state.locate(e); s && state.is_left(s->position))
            tainted[s->position] = 1;

    if (auto win = right_charge_a(index, state, s_i, i))
        return *win;
    if (auto win = right_charge_b(index, state, t_i, tainted, i))
        return *win;

    Scheme3Table table;
    table.heavy_position = i;
    table.charges.assign(m + 1, 0);
    std::vector<ElementSet> outside(m + 1);
    for (const auto &cls : index.classes(rel)) {
        for (Element x : cls) {
            if (contains(u_i, x))
                continue;
            if (auto s = state.locate(x)) {
                ++table.charges[s->position];
                continue;
            }
            bool blocked = false;
            std::size_t target = 0;
            for (Element y : cls) {
                if (y == x)
                    continue;
                auto sy = state.locate(y);
                if (contains(s_i, y)
                    || (sy && tainted[sy->position] && (sy->role == Role::a || sy->role == Role::b)))
                    blocked = true;
                else if (sy && state.is_right(sy->position) && (target == 0 || sy->position < target))
                    target = sy->position;
            }
            if (blocked) {
                ++table.uncharged;
                continue;
            }
            if (target == 0)
                throw InternalLogicError("scheme-3", "element " + std::to_string(x) + " has no i-charge target",
                                         state.digest());
            ++table.charges[target];
            outside[target].push_back(x);
        }
    }

    if (table.uncharged > 6)
        throw InternalLogicError("scheme-3", std::to_string(table.uncharged) + " uncharged elements", state.digest());
    for (std::size_t p = 2; p <= m; ++p) {
        if (table.charges[p] > 4)
            throw InternalLogicError("scheme-3", "component at " + std::to_string(p) + " has "
                                                     + std::to_string(table.charges[p]) + " i-charges",
                                     state.digest());
        if (state.is_right(p) && table.charges[p] == 4) {
            if (outside[p].size() != 2)
                throw InternalLogicError("scheme-3", "full right component without two outside charges",
                                         state.digest());
            std::sort(outside[p].begin(), outside[p].end());
            table.full_right[p] = {outside[p][0], outside[p][1]};
        }
    }
    return table;
}

LuckyData find_lucky(const TrackState &state, const std::vector<Scheme3Table> &tables, std::int64_t c)
{
    std::map<std::size_t, std::size_t> count;
    for (const auto &tab : tables)
        for (const auto &[p, w] : tab.full_right)
            ++count[p];
    LuckyData lucky;
    std::size_t best = 0;
    for (const auto &[p, k] : count)
        if (k > best) {
            best = k;
            lucky.lucky = p;
        }
    if (best == 0)
        fail_late("lucky", "no right component takes four i-charges", state, c);

    for (const auto &tab : tables) {
        auto it = tab.full_right.find(lucky.lucky);
        if (it == tab.full_right.end() || tab.heavy_position == lucky.lucky)
            continue;
        lucky.h_prime.push_back(tab.heavy_position);
        lucky.witnesses[tab.heavy_position] = it->second;
    }
    std::sort(lucky.h_prime.begin(), lucky.h_prime.end());
    const std::int64_t need = std::max<std::int64_t>((c - 10 + 3) / 4, 1);
    if (static_cast<std::int64_t>(lucky.h_prime.size()) < need)
        fail_late("lucky", "|H'| = " + std::to_string(lucky.h_prime.size()) + " below " + std::to_string(need), state,
                  c);
    lucky.h_prime.resize(static_cast<std::size_t>(need));
    for (auto it = lucky.witnesses.begin(); it != lucky.witnesses.end();)
        it = std::binary_search(lucky.h_prime.begin(), lucky.h_prime.end(), it->first) ? std::next(it)
                                                                                        : lucky.witnesses.erase(it);
    return lucky;
}

bool conflicting(const InstanceIndex &index, const TrackState &state, const LuckyData &lucky, std::size_t k1,
                 std::size_t k2)
{
    const Component &jc = state.component(lucky.lucky);
    ElementSet ws;
    for (std::size_t k : {k1, k2})
        for (Element e : lucky.witnesses.at(k))
            if (!contains(ws, e))
                ws.push_back(e);
    const std::size_t r1 = state.relation_at(k1), r2 = state.relation_at(k2);
    for (auto [w, x] : {std::pair{jc.a, jc.b}, std::pair{jc.b, jc.a}})
        for (Element y : ws) {
            if (!index.equivalent(r1, w, y))
                continue;
            for (Element z : ws)
                if (z != y && index.equivalent(r2, x, z))
                    return false;
        }
    return true;
}

void select_nonconflicting(const InstanceIndex &index, const TrackState &state, LuckyData &lucky, std::int64_t c,
                           ConflictStats *stats)
{
    const auto &hp = lucky.h_prime;
    const std::size_t n = hp.size();
    std::vector<std::vector<std::size_t>> adj(n);
    std::size_t edges = 0;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (conflicting(index, state, lucky, hp[u], hp[v])) {
                adj[u].push_back(v);
                adj[v].push_back(u);
                ++edges;
            }

    std::vector<int> colour(n, -1);
    bool bipartite = true;
    for (std::size_t s = 0; s < n; ++s) {
        if (colour[s] != -1)
            continue;
        colour[s] = 0;
        std::deque<std::size_t> queue{s};
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            for (std::size_t v : adj[u]) {
                if (colour[v] == -1) {
                    colour[v] = 1 - colour[u];
                    queue.push_back(v);
                } else if (colour[v] == colour[u]) {
                    bipartite = false;
                }
            }
        }
    }
    if (stats) {
        stats->edges = edges;
        stats->bipartite = bipartite;
    }
    if (!bipartite)
        throw InternalLogicError("conflict-graph", "conflict graph has an odd cycle", state.digest());

    std::array<std::vector<std::size_t>, 2> side;
    for (std::size_t u = 0; u < n; ++u)
        side[static_cast<std::size_t>(colour[u])].push_back(hp[u]);
    lucky.h_double = side[0].size() >= side[1].size() ? side[0] : side[1];
    const auto want = static_cast<std::size_t>(std::max<std::int64_t>(c / 16, 0));
    if (lucky.h_double.size() < want || want < 2)
        fail_late("conflict-graph", "independent set of size " + std::to_string(lucky.h_double.size()), state, c);
    lucky.h_double.resize(want);
}

std::vector<std::pair<std::size_t, std::size_t>> compatible_pairs(const InstanceIndex &index,
                                                                  const TrackState &state,
                                                                  const ChargeLedger &ledger, LuckyData &lucky,
                                                                  std::int64_t c)
{
    const auto threshold = static_cast<std::size_t>(ceil_sqrt(c));
    std::map<Element, std::size_t> seen;
    for (std::size_t k : lucky.h_double)
        for (Element e : lucky.witnesses.at(k))
            ++seen[e];
    lucky.popular.clear();
    for (const auto &[e, n] : seen)
        if (n >= threshold)
            lucky.popular.push_back(e);

    auto disjoint = [](const auto &a, const ElementSet &b) {
        return std::none_of(a.begin(), a.end(), [&](Element e) { return contains(b, e); });
    };

    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t k1 : lucky.h_double) {
        ElementSet u1 = ledger.u_set(k1);
        if (!disjoint(u1, lucky.popular))
            continue;
        for (std::size_t k2 : lucky.h_double) {
            if (k2 == k1)
                continue;
            ElementSet u2 = ledger.u_set(k2);
            if (!disjoint(lucky.witnesses.at(k1), u2) || !disjoint(lucky.witnesses.at(k2), u1))
                continue;
            if (conflicting(index, state, lucky, k1, k2))
                continue;
            out.emplace_back(k1, k2);
        }
    }
    return out;
}

std::optional<std::pair<std::size_t, std::size_t>> find_compatible_pair(const InstanceIndex &index,
                                                                        const TrackState &state,
                                                                        const ChargeLedger &ledger,
                                                                        LuckyData &lucky, std::int64_t c)
{
    auto all = compatible_pairs(index, state, ledger, lucky, c);
    if (all.empty())
        return std::nullopt;
    return all.front();
}

void build_exclusion_set(const TrackState &state, const ChargeLedger &ledger, LuckyData &lucky)
{
    ElementSet y;
    for (std::size_t p = state.left_end() + 1; p <= state.size(); ++p) {
        y.push_back(state.component(p).a);
        y.push_back(state.component(p).b);
    }
    for (std::size_t k : lucky.h_double) {
        for (Element e : lucky.witnesses.at(k))
            y.push_back(e);
        for (Element e : ledger.u_set(k))
            y.push_back(e);
    }
    std::sort(y.begin(), y.end());
    y.erase(std::unique(y.begin(), y.end()), y.end());
    lucky.exclusion = std::move(y);
}

std::optional<Pair> find_free_pair(const InstanceIndex &index, const TrackState &state, const LuckyData &lucky)
{
    const auto &y = lucky.exclusion;
    auto excluded = [&](Element e) { return std::binary_search(y.begin(), y.end(), e); };
    std::optional<Pair> best;
    for (const auto &cls : index.classes(state.relation_at(lucky.lucky))) {
        std::optional<Element> first;
        for (Element e : cls) {
            if (excluded(e))
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

// Both ways of joining C_lucky to W_k1 u W_k2 under relations k1 and k2.
std::vector<std::array<Pair, 2>> lucky_links(const InstanceIndex &index, const TrackState &state,
                                             const LuckyData &lucky, std::size_t k1, std::size_t k2)
{
    const Component &jc = state.component(lucky.lucky);
    ElementSet ws;
    for (std::size_t k : {k1, k2})
        for (Element e : lucky.witnesses.at(k))
            if (!contains(ws, e))
                ws.push_back(e);
    std::sort(ws.begin(), ws.end());
    const std::size_t r1 = state.relation_at(k1), r2 = state.relation_at(k2);
    std::vector<std::array<Pair, 2>> out;
    for (auto [w, x] : {std::pair{jc.a, jc.b}, std::pair{jc.b, jc.a}})
        for (Element y : ws)
            if (index.equivalent(r1, w, y))
                for (Element z : ws)
                    if (z != y && index.equivalent(r2, x, z))
                        out.push_back({Pair{w, y}, Pair{x, z}});
    return out;
}

} // namespace

Win final_win(const InstanceIndex &index, const TrackState &state, const ChargeLedger &ledger,
              const LuckyData &lucky, const std::vector<std::pair<std::size_t, std::size_t>> &compatible,
              Pair free_pair, std::int64_t c)
{
    const auto [x, y] = free_pair;
    const std::size_t js = lucky.lucky;
    const std::size_t t = state.left_end();
    auto sx = state.locate(x);
    auto sy = state.locate(y);
    const bool lx = sx && state.is_left(sx->position);
    const bool ly = sy && state.is_left(sy->position);

    if (!(lx && ly) || sx->position == sy->position) {
        const std::string branch = (lx && ly) ? "final-ii" : "final-i";
        for (auto [k1, k2] : compatible)
            for (const auto &links : lucky_links(index, state, lucky, k1, k2))
                for (const auto &ch : all_heavy_pair_choices(index, state, ledger, k1, k2)) {
                    Overrides ov;
                    ov.assign(js, free_pair);
                    if (ov.try_assign(k1, links[0]) && ov.try_assign(k2, links[1])
                        && ov.try_assign(1, {ch.v1, ch.w1}) && ov.try_assign(t, {ch.v2, ch.w2}))
                        if (auto win = finish(index, state, ov, branch))
                            return std::move(*win);
                }
        fail_late("final", "no completion for free pair in " + branch, state, c);
    }

    auto blocked_of = [&](const Slot &s) {
        const Component &comp = state.component(s.position);
        return detail::is_top(s.role) ? *comp.d : *comp.c;
    };
    const Element bx = blocked_of(*sx), by = blocked_of(*sy);
    const std::size_t track = state.relation_at(t);
    const Component &jc = state.component(js);
    for (std::size_t k : lucky.h_double) {
        const ElementSet &tk = ledger.t_sets[k];
        if (contains(tk, bx) || contains(tk, by))
            continue;
        const std::size_t rk = state.relation_at(k);
        const Component &kc = state.component(k);
        for (Element w : {jc.a, jc.b})
            for (Element z : lucky.witnesses.at(k)) {
                if (!index.equivalent(rk, w, z))
                    continue;
                for (Element v : tk)
                    for (Element u : {kc.a, kc.b}) {
                        if (!index.equivalent(track, v, u))
                            continue;
                        Overrides ov;
                        ov.assign(js, free_pair);
                        if (ov.try_assign(k, {w, z}) && ov.try_assign(t, {v, u}))
                            if (auto win = finish(index, state, ov, "final-iii"))
                                return std::move(*win);
                    }
            }
    }
    fail_late("final", "no index of H'' completes the split free pair", state, c);
}

} // namespace rainbow
