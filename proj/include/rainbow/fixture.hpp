#pragma once

// Hand-built track states with a prescribed charge ledger, for exercising
// the heavy-component steps in isolation.
//
// Layout for m = n relations: position p (2..n) owns a_p = 4(p-2), b_p, c_p,
// d_p at consecutive labels; outsiders start at 4(n-1). Positions
// 2..floor(n/5) are on the track, with c_p, d_p as their cross pair.

#include <rainbow/construct.hpp>

#include <map>
#include <stdexcept>
#include <tuple>

namespace rainbow {

class InfeasibleFixture : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

struct FixtureNames
{
    std::size_t n;

    Element a(std::size_t p) const { return static_cast<Element>(4 * (p - 2)); }
    Element b(std::size_t p) const { return a(p) + 1; }
    Element c(std::size_t p) const { return a(p) + 2; }
    Element d(std::size_t p) const { return a(p) + 3; }
    Element o(std::size_t k) const { return static_cast<Element>(4 * (n - 1) + k); }
    std::size_t t() const { return n / 5; }
};

struct FixtureSpec
{
    std::size_t n = 30;
    /// Outsiders o(0) .. o(outsiders - 1) reserved for explicit edges.
    std::size_t outsiders = 0;
    /// Requested charge per position, one of 0, 2, 3, 4. On the track,
    /// relation-t requests are limited to 0, 2, 4.
    std::map<std::size_t, int> sigma;
    std::map<std::size_t, int> tau;
    /// Extra equivalences (position, x, y), merged transitively.
    std::vector<std::tuple<std::size_t, Element, Element>> edges;
    /// Reject fixtures where the direct pair or the relation-t shortcut fires.
    bool require_no_wins = true;
    /// Run Scheme 2 and check the requests; off leaves the ledger empty.
    bool charge = true;
};

struct Fixture
{
    FixtureNames names;
    Instance instance;
    InstanceIndex index;
    TrackState state;
    ChargeLedger ledger;
};

/// Throws InfeasibleFixture when the requests break the per-component caps,
/// produce a different ledger, or open a shortcut win.
Fixture gen_fixture_ledger(const FixtureSpec &spec);

} // namespace rainbow
