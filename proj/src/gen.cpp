#include <rainbow/gen.hpp>

#include <rainbow/rng.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rainbow {

Instance gen_lower_bound_family(std::size_t n)
{
    if (n < 2)
        throw std::invalid_argument("lower-bound family needs n >= 2");
    std::vector<ElementSet> triples;
    for (Element j = 0; j + 1 < n; ++j)
        triples.push_back({3 * j, 3 * j + 1, 3 * j + 2});
    return Instance(3 * (n - 1), std::vector<Partition>(n, Partition(triples)));
}

std::size_t random_ground_size(std::size_t n, std::int64_t c, std::int64_t slack)
{
    std::int64_t target = linear_kernel_bound(n) + c + slack;
    if (target < 2)
        target = 2;
    return static_cast<std::size_t>((3 * target + 1) / 2);
}

Instance gen_random_hypothesis(std::size_t n, std::int64_t c, std::uint64_t seed, std::int64_t slack)
{
    if (slack < 0)
        throw std::invalid_argument("slack must be non-negative");
    const std::size_t ground = random_ground_size(n, c, slack);
    const auto target = static_cast<std::size_t>(std::max<std::int64_t>(linear_kernel_bound(n) + c + slack, 2));
    Rng rng(seed);
    std::vector<Element> perm(ground);
    std::vector<Partition> rels;
    for (std::size_t r = 0; r < n; ++r) {
        std::iota(perm.begin(), perm.end(), Element{0});
        rng.shuffle(std::span(perm));
        std::vector<ElementSet> classes;
        std::size_t used = 0;
        while (used < target) {
            std::size_t size = rng.coin() ? 3 : 2;
            if (used + size > ground)
                size = ground - used;
            if (size < 2)
                break;
            classes.emplace_back(perm.begin() + static_cast<std::ptrdiff_t>(used),
                                 perm.begin() + static_cast<std::ptrdiff_t>(used + size));
            used += size;
        }
        rels.emplace_back(std::move(classes));
    }
    return Instance(ground, std::move(rels));
}

namespace {

struct Layout
{
    std::size_t n;
    Element a(std::size_t j) const { return static_cast<Element>(4 * (j - 2)); }
    Element b(std::size_t j) const { return a(j) + 1; }
    Element f(std::size_t j) const { return a(j) + 2; }
    Element g(std::size_t j) const { return a(j) + 3; }
    std::size_t ground() const { return 4 * (n - 1); }
};

std::int64_t effective_constant(const Instance &inst, std::int64_t c)
{
    std::int64_t room = static_cast<std::int64_t>(min_kernel(inst)) - linear_kernel_bound(inst.size());
    return std::min(c, room);
}

PartialMatching identity_sub(const Layout &l)
{
    PartialMatching sub(l.n);
    for (std::size_t j = 2; j <= l.n; ++j)
        sub[j - 1] = Pair{l.a(j), l.b(j)};
    return sub;
}

// Relation r of the chain: components up to r hold {a,b},{f,g}, the rest
// {a,f},{b,g}. Relation 1 is the case r = 1.
std::vector<ElementSet> chain_relation(const Layout &l, std::size_t r)
{
    std::vector<ElementSet> out;
    for (std::size_t j = 2; j <= l.n; ++j) {
        if (j <= r) {
            out.push_back({l.a(j), l.b(j)});
            out.push_back({l.f(j), l.g(j)});
        } else {
            out.push_back({l.a(j), l.f(j)});
            out.push_back({l.b(j), l.g(j)});
        }
    }
    return out;
}

} // namespace

PlantedInstance gen_planted_concentrated(std::size_t n, std::int64_t c, std::uint64_t seed)
{
    if (n < 30)
        throw std::invalid_argument("planted instances need n >= 30");
    Layout l{n};
    std::vector<Partition> rels;
    for (std::size_t r = 1; r <= n; ++r)
        rels.emplace_back(chain_relation(l, r));

    std::vector<Element> label(l.ground());
    std::iota(label.begin(), label.end(), Element{0});
    Rng rng(seed);
    rng.shuffle(std::span(label));

    std::vector<Partition> relabelled;
    for (const auto &rel : rels) {
        std::vector<ElementSet> classes;
        for (const auto &cls : rel.classes()) {
            ElementSet out;
            for (Element e : cls)
                out.push_back(label[e]);
            classes.push_back(std::move(out));
        }
        relabelled.emplace_back(std::move(classes));
    }
    PlantedInstance out;
    out.instance = Instance(l.ground(), std::move(relabelled));
    out.sub = identity_sub(l);
    for (auto &p : out.sub)
        if (p)
            p = Pair{label[p->first], label[p->second]};
    out.c_eff = effective_constant(out.instance, c);
    return out;
}

std::string to_string(DeepVariant v)
{
    switch (v) {
    case DeepVariant::same_component: return "same";
    case DeepVariant::outside: return "outside";
    case DeepVariant::split: return "split";
    case DeepVariant::split_blocked: return "split-blocked";
    case DeepVariant::conflicts: return "conflicts";
    }
    return "unknown";
}

DeepVariant parse_deep_variant(const std::string &s)
{
    for (auto v : {DeepVariant::same_component, DeepVariant::outside, DeepVariant::split, DeepVariant::split_blocked,
                   DeepVariant::conflicts})
        if (to_string(v) == s)
            return v;
    throw std::invalid_argument("unknown deep variant '" + s + "'");
}

PlantedInstance gen_planted_deep(std::size_t n, DeepVariant variant, std::int64_t c)
{
    if (n < 100)
        throw std::invalid_argument("deep planted instances need n >= 100");
    Layout l{n};
    const std::size_t t = n / 5;
    const std::size_t lucky = t + 1;
    Element fresh = static_cast<Element>(l.ground());

    std::vector<std::vector<ElementSet>> rels(n);
    for (std::size_t r = 1; r < t; ++r)
        rels[r - 1] = chain_relation(l, r);

    auto &track = rels[t - 1];
    for (std::size_t j = 2; j <= t; ++j)
        track.push_back({l.a(j), l.b(j)});
    for (std::size_t k = t + 1; k <= n; ++k) {
        Element first_partner = l.f(k);
        if (variant == DeepVariant::outside && k == lucky)
            first_partner = l.g(2);
        if (variant == DeepVariant::split_blocked && k == t + 2)
            first_partner = l.g(2);
        if (variant == DeepVariant::split_blocked && k == t + 3)
            first_partner = l.g(3);
        track.push_back({l.a(k), first_partner});
        track.push_back({l.b(k), l.g(k)});
    }

    for (std::size_t i = t + 1; i <= n; ++i) {
        auto &rel = rels[i - 1];
        const bool lucky_rel = i == lucky;
        if (lucky_rel && (variant == DeepVariant::split || variant == DeepVariant::split_blocked)) {
            std::size_t j = 2;
            for (; j + 1 <= t; j += 2) {
                rel.push_back({l.a(j), l.a(j + 1)});
                rel.push_back({l.b(j), l.b(j + 1)});
            }
            if (j == t) {
                rel.push_back({l.a(j), l.f(j)});
                rel.push_back({l.b(j), l.g(j)});
            }
        } else {
            for (std::size_t j = 2; j <= t; ++j) {
                if (lucky_rel && variant == DeepVariant::outside && j == 2)
                    rel.push_back({l.a(j), fresh++});
                else
                    rel.push_back({l.a(j), l.f(j)});
                rel.push_back({l.b(j), l.g(j)});
            }
        }
        const bool crossed = variant == DeepVariant::conflicts && i > lucky && (i - (t + 2)) % 2 == 1;
        for (std::size_t k = t + 1; k <= n; ++k) {
            if (k == i) {
                rel.push_back({l.a(k), l.b(k)});
            } else if (crossed && k == lucky) {
                rel.push_back({l.a(k), l.g(k)});
                rel.push_back({l.b(k), l.f(k)});
            } else {
                rel.push_back({l.a(k), l.f(k)});
                rel.push_back({l.b(k), l.g(k)});
            }
        }
    }

    std::vector<Partition> parts;
    for (auto &r : rels)
        parts.emplace_back(std::move(r));
    PlantedInstance out;
    out.instance = Instance(fresh, std::move(parts));
    out.sub = identity_sub(l);
    out.c_eff = effective_constant(out.instance, c);
    return out;
}

} // namespace rainbow
