#include "construct_detail.hpp"

#include <rainbow/exact.hpp>

namespace rainbow {

using detail::fail_late;
using detail::finish;

namespace {

std::optional<Win> run_pipeline(const InstanceIndex &index, TrackState &state, std::int64_t c, StepTelemetry &tel)
{
    const std::size_t m = state.size();
    auto ic = static_cast<std::int64_t>(m);

    tel.phase = Phase::direct;
    if (auto p = try_direct_pair(index, state)) {
        Overrides ov;
        ov.assign(1, *p);
        if (auto win = finish(index, state, ov, "direct"))
            return win;
        throw InternalLogicError("direct", "direct pair not completable", state.digest());
    }

    tel.phase = Phase::track;
    if (auto win = build_track(index, state, &tel))
        return win;

    tel.phase = Phase::scheme2;
    const std::size_t t = state.left_end();
    if (auto win = try_unless_win(index, state, t))
        return win;
    ChargeLedger ledger = charge_scheme_2(index, state);
    if (auto bad = ledger_violations(ledger, state); !bad.empty())
        throw InternalLogicError("scheme-2", bad.front(), state.digest());
    for (std::size_t p = 2; p <= m; ++p) {
        ++tel.sigma_histogram[static_cast<std::size_t>(ledger.sigma[p])];
        ++tel.tau_histogram[static_cast<std::size_t>(ledger.tau[p])];
    }
    HeavySets heavy = heavy_indices(state, ledger);
    tel.heavy_total = heavy.all.size();
    tel.heavy_left = heavy.left.size();
    tel.heavy_right = heavy.right.size();
    tel.invariant_checks += 2;
    if (5 * static_cast<std::int64_t>(heavy.all.size()) < ic + 5 * c)
        throw InternalLogicError("heavy", "only " + std::to_string(heavy.all.size()) + " heavy components",
                                 state.digest());

    tel.phase = Phase::five_heavy_left;
    if (auto win = try_five_heavy_left_win(index, state, ledger))
        return win;
    check_heavy_sets(state, ledger, heavy);
    tel.invariant_checks += 2;
    if (5 * static_cast<std::int64_t>(heavy.right.size()) < ic + 5 * c - 20)
        throw InternalLogicError("heavy", "only " + std::to_string(heavy.right.size()) + " heavy right components",
                                 state.digest());

    tel.phase = Phase::scheme3;
    std::vector<Scheme3Table> tables;
    for (std::size_t i : heavy.right) {
        auto r = charge_scheme_3(index, state, ledger, i);
        if (auto *win = std::get_if<Win>(&r))
            return std::move(*win);
        auto &tab = std::get<Scheme3Table>(r);
        ++tel.scheme3_runs;
        tel.invariant_checks += 2;
        tel.scheme3_max_uncharged = std::max(tel.scheme3_max_uncharged, tab.uncharged);
        for (int k : tab.charges)
            tel.scheme3_max_charges = std::max(tel.scheme3_max_charges, static_cast<std::size_t>(k));
        tables.push_back(std::move(tab));
    }

    tel.phase = Phase::lucky;
    LuckySummary sum;
    LuckyData lucky = find_lucky(state, tables, c);
    sum.lucky_position = lucky.lucky;
    sum.h_prime = lucky.h_prime.size();
    tel.lucky = sum;
    ConflictStats stats;
    select_nonconflicting(index, state, lucky, c, &stats);
    sum.h_double = lucky.h_double.size();
    sum.conflict_edges = stats.edges;
    sum.bipartite = stats.bipartite;
    auto compatible = compatible_pairs(index, state, ledger, lucky, c);
    sum.popular = lucky.popular.size();
    tel.lucky = sum;
    if (compatible.empty())
        fail_late("compatible", "no compatible pair in H''", state, c);
    build_exclusion_set(state, ledger, lucky);
    sum.exclusion_size = lucky.exclusion.size();
    sum.exclusion_bound_x8 = 16 * (ic - static_cast<std::int64_t>(t)) + 3 * c;
    tel.lucky = sum;
    tel.invariant_checks += 2;
    if (8 * static_cast<std::int64_t>(lucky.exclusion.size()) > sum.exclusion_bound_x8)
        throw InternalLogicError("exclusion", "|Y| = " + std::to_string(lucky.exclusion.size()) + " above bound",
                                 state.digest());
    auto free_pair = find_free_pair(index, state, lucky);
    if (!free_pair)
        fail_late("free-pair", "no free pair outside Y", state, c);

    tel.phase = Phase::final_win;
    return final_win(index, state, ledger, lucky, compatible, *free_pair, c);
}

bool hypothesis_holds(const InstanceIndex &index, std::span<const std::size_t> active, const ExtendOptions &opt)
{
    if (active.size() < opt.n_min)
        return false;
    std::int64_t need = linear_kernel_bound(active.size()) + opt.c;
    for (std::size_t r : active)
        if (static_cast<std::int64_t>(index.kernel_size(r)) < need)
            return false;
    return true;
}

ExtendStatus from_verdict(ExactVerdict v)
{
    switch (v) {
    case ExactVerdict::matched: return ExtendStatus::matched;
    case ExactVerdict::proven_none: return ExtendStatus::proven_none;
    case ExactVerdict::budget_exhausted: break;
    }
    return ExtendStatus::budget_exhausted;
}

void fallback(const InstanceIndex &index, std::span<const std::size_t> active, const ExtendOptions &opt,
              const std::string &reason, ExtendResult &out)
{
    auto r = exact_solve(index, active, opt.exact_budget);
    out.status = from_verdict(r.verdict);
    out.matching = std::move(r.matching);
    out.telemetry.phase = Phase::exact_fallback;
    out.telemetry.fallback_reason = reason;
    out.telemetry.exact_nodes = r.nodes;
}

bool pairs_valid(const InstanceIndex &index, const PartialMatching &m)
{
    std::vector<char> seen(index.ground_size(), 0);
    for (std::size_t r = 0; r < m.size(); ++r) {
        if (!m[r])
            continue;
        auto [x, y] = *m[r];
        if (x >= seen.size() || y >= seen.size() || x == y || seen[x] || seen[y] || !index.equivalent(r, x, y))
            return false;
        seen[x] = seen[y] = 1;
    }
    return true;
}

} // namespace

ExtendResult extend_matching(const InstanceIndex &index, const Instance &inst, const PartialMatching &sub,
                             std::size_t new_rel, const ExtendOptions &options)
{
    if (sub.size() != inst.size() || new_rel >= inst.size() || sub[new_rel])
        throw std::invalid_argument("extend_matching: sub-matching does not fit the instance");
    if (!pairs_valid(index, sub))
        throw std::invalid_argument("extend_matching: sub-matching is not a valid partial rainbow matching");

    std::vector<std::size_t> order{new_rel};
    std::vector<Pair> pairs;
    for (std::size_t r = 0; r < sub.size(); ++r)
        if (sub[r]) {
            order.push_back(r);
            pairs.push_back(*sub[r]);
        }
    std::vector<std::size_t> active(order);
    std::sort(active.begin(), active.end());

    ExtendResult out;
    out.telemetry.relations = order.size();
    out.telemetry.constant = options.c;
    out.telemetry.proven_regime = constant_is_proven(options.c);

    if (!hypothesis_holds(index, active, options)) {
        std::string why = active.size() < options.n_min ? "fewer than n_min relations" : "kernel below hypothesis";
        if (options.strict)
            throw HypothesisViolation(why);
        fallback(index, active, options, why, out);
        return out;
    }

    TrackState state(index.ground_size(), order, pairs);
    std::optional<Win> win;
    try {
        win = run_pipeline(index, state, options.c, out.telemetry);
    } catch (const RegimeUnsupported &e) {
        fallback(index, active, options, e.what(), out);
        return out;
    }
    if (!win)
        throw InternalLogicError("pipeline", "no phase produced a matching", state.digest());

    out.telemetry.branch = win->branch;
    out.matching.assign(inst.size(), std::nullopt);
    for (std::size_t pos = 1; pos <= state.size(); ++pos)
        out.matching[state.relation_at(pos)] = win->by_position[pos];
    if (!pairs_valid(index, out.matching))
        throw InternalLogicError("verify", "completed matching fails verification", state.digest());
    out.status = ExtendStatus::matched;
    return out;
}

ExtendResult extend_matching(const Instance &inst, const PartialMatching &sub, std::size_t new_rel,
                             const ExtendOptions &options)
{
    return extend_matching(InstanceIndex(inst), inst, sub, new_rel, options);
}

SolveResult solve_constructive(const Instance &inst, const ExtendOptions &options)
{
    SolveResult out;
    const std::size_t n = inst.size();
    if (n == 0) {
        out.matching = Matching{};
        return out;
    }
    InstanceIndex index(inst);
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i)
        all[i] = i;

    auto finish_exact = [&](const PartialExactResult &r) {
        out.status = from_verdict(r.verdict);
        out.exact_nodes += r.nodes;
        if (out.status == ExtendStatus::matched) {
            Matching m;
            for (const auto &p : r.matching)
                m.pairs.push_back(*p);
            out.matching = std::move(m);
        }
    };

    if (!hypothesis_holds(index, all, options)) {
        std::string why = n < options.n_min ? "fewer than n_min relations" : "kernel below hypothesis";
        if (options.strict)
            throw HypothesisViolation(why);
        auto r = exact_solve(index, all, options.exact_budget);
        StepTelemetry tel;
        tel.relations = n;
        tel.constant = options.c;
        tel.proven_regime = constant_is_proven(options.c);
        tel.phase = Phase::exact_fallback;
        tel.fallback_reason = why;
        tel.exact_nodes = r.nodes;
        out.steps.push_back(tel);
        out.deepest = Phase::exact_fallback;
        finish_exact(r);
        return out;
    }

    const std::size_t base_from = n - std::max<std::size_t>(options.n_min, 1) + 1;
    std::vector<std::size_t> base(all.begin() + static_cast<std::ptrdiff_t>(base_from), all.end());
    auto br = exact_solve(index, base, options.exact_budget);
    out.exact_nodes += br.nodes;
    if (br.verdict != ExactVerdict::matched) {
        out.status = from_verdict(br.verdict);
        return out;
    }
    PartialMatching sub = std::move(br.matching);
    for (std::size_t i = base_from; i-- > 0;) {
        auto step = extend_matching(index, inst, sub, i, options);
        out.exact_nodes += step.telemetry.exact_nodes;
        out.deepest = std::max(out.deepest, step.telemetry.phase);
        out.steps.push_back(std::move(step.telemetry));
        if (step.status != ExtendStatus::matched) {
            out.status = step.status;
            return out;
        }
        sub = std::move(step.matching);
    }
    Matching m;
    for (const auto &p : sub)
        m.pairs.push_back(*p);
    out.matching = std::move(m);
    return out;
}

} // namespace rainbow
