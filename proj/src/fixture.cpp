#include <rainbow/fixture.hpp>

#include <numeric>

namespace rainbow {

namespace {

class Merger
{
public:
    explicit Merger(std::size_t ground) : parent_(ground) { std::iota(parent_.begin(), parent_.end(), Element{0}); }

    void join(Element x, Element y)
    {
        if (x >= parent_.size() || y >= parent_.size())
            throw InfeasibleFixture("fixture element out of range");
        parent_[root(x)] = root(y);
    }

    Partition partition()
    {
        std::map<Element, ElementSet> groups;
        for (Element x = 0; x < parent_.size(); ++x)
            groups[root(x)].push_back(x);
        std::vector<ElementSet> classes;
        for (auto &[r, g] : groups)
            if (g.size() >= 2)
                classes.push_back(std::move(g));
        return Partition(std::move(classes));
    }

private:
    Element root(Element x)
    {
        while (parent_[x] != x)
            x = parent_[x] = parent_[parent_[x]];
        return x;
    }

    std::vector<Element> parent_;
};

void request(Merger &rel, const FixtureNames &nm, std::size_t p, int amount, bool left_track,
             std::size_t &next_outsider)
{
    auto fresh = [&] { return nm.o(next_outsider++); };
    if (left_track) {
        switch (amount) {
        case 0: return;
        case 2: rel.join(nm.a(p), nm.b(p)); return;
        case 4:
            rel.join(nm.a(p), nm.b(p));
            rel.join(nm.c(p), nm.d(p));
            return;
        default: throw InfeasibleFixture("unsupported track-side request " + std::to_string(amount));
        }
    }
    switch (amount) {
    case 0: return;
    case 2: rel.join(nm.a(p), nm.b(p)); return;
    case 3:
        rel.join(nm.a(p), nm.b(p));
        rel.join(nm.a(p), fresh());
        return;
    case 4:
        rel.join(nm.a(p), fresh());
        rel.join(nm.b(p), fresh());
        return;
    default: throw InfeasibleFixture("charge request " + std::to_string(amount) + " is not 0, 2, 3 or 4");
    }
}

std::size_t outsiders_needed(const FixtureSpec &spec)
{
    std::size_t k = spec.outsiders;
    for (const auto *m : {&spec.sigma, &spec.tau})
        for (auto [p, amount] : *m)
            k += amount == 4 ? 2 : amount == 3 ? 1 : 0;
    return k;
}

} // namespace

Fixture gen_fixture_ledger(const FixtureSpec &spec)
{
    if (spec.n < 10)
        throw InfeasibleFixture("fixtures need n >= 10");
    const FixtureNames nm{spec.n};
    const std::size_t n = spec.n;
    const std::size_t t = nm.t();
    const std::size_t ground = 4 * (n - 1) + outsiders_needed(spec);

    std::vector<Merger> rels(n, Merger(ground));
    for (std::size_t p = 2; p <= n; ++p)
        rels[p - 1].join(nm.a(p), nm.b(p));
    for (std::size_t p = 2; p <= t; ++p) {
        rels[p - 2].join(nm.a(p), nm.c(p));
        rels[p - 2].join(nm.b(p), nm.d(p));
    }
    std::size_t next_outsider = spec.outsiders;
    for (auto [p, amount] : spec.sigma)
        request(rels[0], nm, p, amount, false, next_outsider);
    for (auto [p, amount] : spec.tau)
        request(rels[t - 1], nm, p, amount, p <= t, next_outsider);
    for (auto [pos, x, y] : spec.edges) {
        if (pos < 1 || pos > n)
            throw InfeasibleFixture("edge position out of range");
        rels[pos - 1].join(x, y);
    }

    std::vector<Partition> parts;
    for (auto &r : rels)
        parts.push_back(r.partition());
    Instance inst(ground, std::move(parts));
    InstanceIndex index(inst);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<Pair> pairs;
    for (std::size_t p = 2; p <= n; ++p)
        pairs.push_back(Pair{nm.a(p), nm.b(p)});
    TrackState state(ground, order, pairs);
    for (std::size_t p = 2; p <= t; ++p)
        state.promote(p, nm.c(p), nm.d(p));

    if (spec.require_no_wins) {
        if (try_direct_pair(index, state))
            throw InfeasibleFixture("relation 1 has a direct pair");
        if (try_unless_win(index, state, t))
            throw InfeasibleFixture("relation t has a shortcut pair");
    }

    ChargeLedger ledger;
    if (!spec.charge)
        return Fixture{nm, std::move(inst), std::move(index), std::move(state), std::move(ledger)};
    try {
        ledger = charge_scheme_2(index, state);
    } catch (const InternalLogicError &e) {
        throw InfeasibleFixture(std::string("charging failed: ") + e.what());
    }
    auto broken = ledger_violations(ledger, state);
    if (!broken.empty())
        throw InfeasibleFixture("ledger invariant broken: " + broken.front());
    for (auto [p, amount] : spec.sigma)
        if (ledger.sigma[p] != amount)
            throw InfeasibleFixture("sigma at position " + std::to_string(p) + " came out as "
                                    + std::to_string(ledger.sigma[p]));
    for (auto [p, amount] : spec.tau)
        if (ledger.tau[p] != amount)
            throw InfeasibleFixture("tau at position " + std::to_string(p) + " came out as "
                                    + std::to_string(ledger.tau[p]));

    return Fixture{nm, std::move(inst), std::move(index), std::move(state), std::move(ledger)};
}

} // namespace rainbow
