#include "construct_detail.hpp"

#include <map>

namespace rainbow {

ElementSet ChargeLedger::u_set(std::size_t pos) const
{
    ElementSet out;
    std::set_union(s_sets[pos].begin(), s_sets[pos].end(), t_sets[pos].begin(), t_sets[pos].end(),
                   std::back_inserter(out));
    return out;
}

ChargeLedger charge_scheme_2(const InstanceIndex &index, const TrackState &state)
{
    const std::size_t m = state.size();
    const std::size_t t = state.left_end();
    ChargeLedger led;
    led.sigma.assign(m + 1, 0);
    led.tau.assign(m + 1, 0);
    led.s_sets.assign(m + 1, {});
    led.t_sets.assign(m + 1, {});

    const std::size_t first = state.relation_at(1);
    led.kernel_first = index.kernel_size(first);
    for (const auto &cls : index.classes(first)) {
        for (Element x : cls) {
            if (state.in_b(x)) {
                ++led.sigma[state.locate(x)->position];
                continue;
            }
            std::size_t target = 0;
            for (Element y : cls)
                if (state.in_b(y) && (target == 0 || state.locate(y)->position < target))
                    target = state.locate(y)->position;
            if (target == 0)
                throw InternalLogicError("scheme-2", "element " + std::to_string(x) + " has no 1-charge target",
                                         state.digest());
            ++led.sigma[target];
            led.s_sets[target].push_back(x);
        }
    }

    const std::size_t track = state.relation_at(t);
    led.kernel_track = index.kernel_size(track);
    std::vector<char> paired_cross(m + 1, 0);
    for (std::size_t j = 2; j <= t; ++j) {
        const Component &comp = state.component(j);
        paired_cross[j] = index.equivalent(track, *comp.c, *comp.d) ? 1 : 0;
    }
    for (const auto &cls : index.classes(track)) {
        for (Element z : cls) {
            auto sz = state.locate(z);
            if (sz && (sz->role == Role::a || sz->role == Role::b)) {
                ++led.tau[sz->position];
                continue;
            }
            std::size_t target = 0;
            if (sz && paired_cross[sz->position])
                target = sz->position;
            for (Element y : cls) {
                if (target != 0 && !state.is_right(target))
                    break;
                auto sy = state.locate(y);
                if (y != z && sy && state.is_right(sy->position) && (target == 0 || sy->position < target))
                    target = sy->position;
            }
            if (target == 0 && sz)
                for (Element y : cls) {
                    auto sy = state.locate(y);
                    if (y != z && sy && sy->position == sz->position)
                        target = sz->position;
                }
            if (target == 0)
                throw InternalLogicError("scheme-2", "element " + std::to_string(z) + " has no t-charge target",
                                         state.digest());
            ++led.tau[target];
            led.t_sets[target].push_back(z);
        }
    }
    for (std::size_t p = 2; p <= m; ++p) {
        std::sort(led.s_sets[p].begin(), led.s_sets[p].end());
        std::sort(led.t_sets[p].begin(), led.t_sets[p].end());
    }
    return led;
}

std::vector<std::string> ledger_violations(const ChargeLedger &ledger, const TrackState &state)
{
    std::vector<std::string> out;
    const std::size_t m = state.size();
    std::size_t sum_sigma = 0, sum_tau = 0;
    std::map<Element, int> in_s, in_t, in_u;
    for (std::size_t p = 2; p <= m; ++p) {
        auto at = " at position " + std::to_string(p);
        if (ledger.sigma[p] > 4)
            out.push_back("sigma > 4" + at);
        if (ledger.tau[p] > 4)
            out.push_back("tau > 4" + at);
        if (ledger.s_sets[p].size() > 2)
            out.push_back("|S| > 2" + at);
        if (ledger.t_sets[p].size() > 2)
            out.push_back("|T| > 2" + at);
        sum_sigma += static_cast<std::size_t>(ledger.sigma[p]);
        sum_tau += static_cast<std::size_t>(ledger.tau[p]);
        for (Element e : ledger.s_sets[p])
            ++in_s[e];
        for (Element e : ledger.t_sets[p])
            ++in_t[e];
        for (Element e : ledger.u_set(p))
            ++in_u[e];
    }
    if (sum_sigma != ledger.kernel_first)
        out.push_back("sigma total " + std::to_string(sum_sigma) + " != |K_1| " + std::to_string(ledger.kernel_first));
    if (sum_tau != ledger.kernel_track)
        out.push_back("tau total " + std::to_string(sum_tau) + " != |K_t| " + std::to_string(ledger.kernel_track));
    for (const auto &[e, k] : in_s)
        if (k > 1)
            out.push_back("S sets overlap at " + std::to_string(e));
    for (const auto &[e, k] : in_t)
        if (k > 1)
            out.push_back("T sets overlap at " + std::to_string(e));
    for (const auto &[e, k] : in_u)
        if (k > 2)
            out.push_back("element " + std::to_string(e) + " in three U sets");
    return out;
}

HeavySets heavy_indices(const TrackState &state, const ChargeLedger &ledger)
{
    HeavySets h;
    for (std::size_t p = 2; p <= state.size(); ++p) {
        if (ledger.total(p) < 7)
            continue;
        h.all.push_back(p);
        (state.is_left(p) ? h.left : h.right).push_back(p);
    }
    return h;
}

void check_heavy_sets(const TrackState &state, const ChargeLedger &ledger, const HeavySets &heavy)
{
    for (std::size_t p : heavy.right) {
        std::size_t s = ledger.s_sets[p].size(), t = ledger.t_sets[p].size(), u = ledger.u_set(p).size();
        if (s < 1 || t < 1 || std::max(s, t) != 2 || u < 2 || u > 4)
            throw InternalLogicError("heavy", "heavy component at " + std::to_string(p) + " has |S|="
                                                  + std::to_string(s) + " |T|=" + std::to_string(t)
                                                  + " |U|=" + std::to_string(u),
                                     state.digest());
    }
}

} // namespace rainbow
