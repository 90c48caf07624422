#include <doctest.h>

#include <rainbow/construct.hpp>
#include <rainbow/fixture.hpp>

#include "support.hpp"

using namespace rainbow;

TEST_CASE("five heavy track components, crossed pair under the track relation")
{
    auto f = gen_fixture_ledger(five_heavy_left());
    const auto &nm = f.names;
    CHECK(heavy_indices(f.state, f.ledger).left.size() == 5);
    auto win = try_five_heavy_left_win(f.index, f.state, f.ledger);
    REQUIRE(win);
    CHECK(win->branch == "heavy-left-1");
    CHECK(win->by_position[6] == Pair{nm.c(3), nm.d(3)});
    CHECK(win->by_position[1].first == nm.a(4));
    CHECK(valid(f, *win));
}

TEST_CASE("five heavy track components, a' tied to d'")
{
    auto spec = five_heavy_left();
    FixtureNames nm{spec.n};
    spec.tau.erase(3);
    spec.edges = {{6, nm.a(3), nm.d(3)}, {6, nm.b(3), nm.c(3)}};
    auto f = gen_fixture_ledger(spec);
    CHECK(f.ledger.tau[3] == 4);
    auto win = try_five_heavy_left_win(f.index, f.state, f.ledger);
    REQUIRE(win);
    CHECK(win->branch == "heavy-left-2a");
    CHECK(win->by_position[6] == Pair{nm.a(3), nm.d(3)});
    CHECK(win->by_position[1].first == nm.b(3));
    CHECK(valid(f, *win));
}

TEST_CASE("five heavy track components, b' tied to d' under the first relation")
{
    auto spec = five_heavy_left();
    FixtureNames nm{spec.n};
    spec.tau.erase(3);
    spec.sigma.erase(3);
    spec.outsiders = 1;
    spec.edges = {{6, nm.a(3), nm.d(3)}, {6, nm.b(3), nm.c(3)}, {1, nm.b(3), nm.d(3)}, {1, nm.a(3), nm.o(0)}};
    auto f = gen_fixture_ledger(spec);
    CHECK(f.ledger.sigma[3] == 4);
    auto win = try_five_heavy_left_win(f.index, f.state, f.ledger);
    REQUIRE(win);
    CHECK(win->branch == "heavy-left-2b");
    CHECK(win->by_position[2] == Pair{nm.a(3), nm.c(3)});
    CHECK(win->by_position[1] == Pair{nm.b(3), nm.d(3)});
    CHECK(valid(f, *win));
}

TEST_CASE("four heavy track components are not enough")
{
    auto spec = five_heavy_left();
    spec.tau.erase(6);
    auto f = gen_fixture_ledger(spec);
    CHECK(heavy_indices(f.state, f.ledger).left.size() == 4);
    CHECK_FALSE(try_five_heavy_left_win(f.index, f.state, f.ledger));
}

TEST_CASE("heavy pair elements, disjoint case")
{
    FixtureSpec spec;
    spec.outsiders = 2;
    FixtureNames nm{spec.n};
    spec.edges = {{1, nm.a(10), nm.o(0)}, {6, nm.a(11), nm.o(1)}};
    auto f = gen_fixture_ledger(spec);
    CHECK(f.ledger.s_sets[10] == ElementSet{nm.o(0)});
    CHECK(f.ledger.t_sets[11] == ElementSet{nm.o(1)});
    auto ch = pick_heavy_pair_elements(f.index, f.state, f.ledger, 10, 11);
    CHECK(ch.v1 == nm.a(10));
    CHECK(ch.w1 == nm.o(0));
    CHECK(ch.v2 == nm.a(11));
    CHECK(ch.w2 == nm.o(1));
}

TEST_CASE("heavy pair elements, crossed component")
{
    FixtureSpec spec;
    spec.outsiders = 3;
    FixtureNames nm{spec.n};
    const Element x = nm.o(0), y = nm.o(1), z = nm.o(2);
    spec.edges = {{1, nm.a(10), x}, {1, nm.b(10), y}, {6, nm.a(10), y}, {6, nm.b(10), x}};
    SUBCASE("one component alone has no choice")
    {
        auto f = gen_fixture_ledger(spec);
        CHECK(all_heavy_pair_choices(f.index, f.state, f.ledger, 10, 11).empty());
        CHECK_THROWS_AS(pick_heavy_pair_elements(f.index, f.state, f.ledger, 10, 11), InternalLogicError);
    }
    SUBCASE("the second component supplies the escape")
    {
        spec.edges.push_back({1, nm.a(11), z});
        auto f = gen_fixture_ledger(spec);
        auto all = all_heavy_pair_choices(f.index, f.state, f.ledger, 10, 11);
        REQUIRE_FALSE(all.empty());
        for (const auto &ch : all)
            CHECK((ch.v1 == nm.a(11) && ch.w1 == z));
        auto ch = pick_heavy_pair_elements(f.index, f.state, f.ledger, 10, 11, std::pair{x, y});
        CHECK(ch.w1 == z);
        CHECK((ch.w2 == x || ch.w2 == y));
    }
}

TEST_CASE("scheme 3 table")
{
    FixtureSpec spec;
    spec.outsiders = 3;
    spec.sigma[10] = 4;
    spec.tau[10] = 4;
    FixtureNames nm{spec.n};
    spec.edges = {{10, nm.o(3), nm.o(0)}, {10, nm.a(12), nm.o(1)}, {10, nm.b(12), nm.o(2)}};
    auto f = gen_fixture_ledger(spec);
    CHECK(f.ledger.s_sets[10] == ElementSet{nm.o(3), nm.o(4)});
    CHECK(heavy_indices(f.state, f.ledger).right == std::vector<std::size_t>{10});
    CHECK_NOTHROW(check_heavy_sets(f.state, f.ledger, heavy_indices(f.state, f.ledger)));
    auto r = charge_scheme_3(f.index, f.state, f.ledger, 10);
    REQUIRE(std::holds_alternative<Scheme3Table>(r));
    const auto &tab = std::get<Scheme3Table>(r);
    CHECK(tab.uncharged == 1);
    CHECK(tab.charges[10] == 2);
    CHECK(tab.charges[12] == 4);
    REQUIRE(tab.full_right.count(12));
    CHECK(tab.full_right.at(12) == std::array<Element, 2>{nm.o(1), nm.o(2)});
    CHECK(tab.full_right.size() == 1);
}

TEST_CASE("scheme 3 win with a pair outside B and S")
{
    FixtureSpec spec;
    spec.outsiders = 2;
    spec.sigma[10] = 4;
    spec.tau[10] = 4;
    FixtureNames nm{spec.n};
    spec.edges = {{10, nm.o(0), nm.o(1)}};
    auto f = gen_fixture_ledger(spec);
    auto r = charge_scheme_3(f.index, f.state, f.ledger, 10);
    REQUIRE(std::holds_alternative<Win>(r));
    const auto &win = std::get<Win>(r);
    CHECK(win.branch == "right-charge-a");
    CHECK(win.by_position[10] == Pair{nm.o(0), nm.o(1)});
    CHECK(win.by_position[1] == Pair{nm.o(2), nm.a(10)});
    CHECK(valid(f, win));
}

TEST_CASE("scheme 3 win through an untainted track component")
{
    FixtureSpec spec;
    spec.outsiders = 1;
    spec.sigma[10] = 4;
    spec.tau[10] = 4;
    FixtureNames nm{spec.n};
    spec.edges = {{10, nm.a(2), nm.o(0)}};
    auto f = gen_fixture_ledger(spec);
    auto r = charge_scheme_3(f.index, f.state, f.ledger, 10);
    REQUIRE(std::holds_alternative<Win>(r));
    const auto &win = std::get<Win>(r);
    CHECK(win.branch == "right-charge-b");
    CHECK(win.by_position[10] == Pair{nm.a(2), nm.o(0)});
    const auto &tset = f.ledger.t_sets[10];
    CHECK(std::find(tset.begin(), tset.end(), win.by_position[6].first) != tset.end());
    CHECK(valid(f, win));
}

namespace {

Scheme3Table table_for(std::size_t heavy, std::vector<std::size_t> full)
{
    Scheme3Table t;
    t.heavy_position = heavy;
    t.charges.assign(31, 0);
    for (std::size_t p : full) {
        t.charges[p] = 4;
        t.full_right[p] = {static_cast<Element>(1000 + 2 * heavy), static_cast<Element>(1001 + 2 * heavy)};
    }
    return t;
}

} // namespace

TEST_CASE("lucky component")
{
    auto f = gen_fixture_ledger(FixtureSpec{});
    std::vector<Scheme3Table> tables{table_for(7, {20, 21}), table_for(8, {20}), table_for(9, {20, 21}),
                                     table_for(10, {20}), table_for(11, {21, 20})};
    auto lucky = find_lucky(f.state, tables, 22);
    CHECK(lucky.lucky == 20);
    CHECK(lucky.h_prime == std::vector<std::size_t>{7, 8, 9});
    CHECK(lucky.witnesses.size() == 3);
    CHECK(lucky.witnesses.at(8) == std::array<Element, 2>{1016, 1017});
    for (const auto &[k, w] : lucky.witnesses)
        for (Element e : w)
            CHECK_FALSE(f.state.in_b_prime(e));
    CHECK_THROWS_AS(find_lucky(f.state, tables, 50), RegimeUnsupported);
    CHECK_THROWS_AS(find_lucky(f.state, tables, 5000), InternalLogicError);
}

namespace {

struct LuckyFixture
{
    Fixture f;
    LuckyData lucky;
};

LuckyFixture lucky_fixture(std::vector<std::tuple<std::size_t, Element, Element>> edges,
                           std::map<std::size_t, std::array<Element, 2>> witnesses)
{
    FixtureSpec spec;
    spec.outsiders = 8;
    spec.edges = std::move(edges);
    LuckyFixture out{gen_fixture_ledger(spec), {}};
    out.lucky.lucky = 20;
    out.lucky.witnesses = std::move(witnesses);
    for (const auto &[k, w] : out.lucky.witnesses)
        out.lucky.h_prime.push_back(k);
    return out;
}

} // namespace

TEST_CASE("conflicting indices")
{
    FixtureNames nm{30};
    const Element a = nm.a(20), b = nm.b(20);
    auto o = [&](std::size_t k) { return nm.o(k); };
    SUBCASE("crossed witnesses form an edge")
    {
        auto lf = lucky_fixture({{7, a, o(0)}, {7, b, o(1)}, {8, a, o(1)}, {8, b, o(0)}, {9, a, o(2)}, {9, b, o(3)}},
                                {{7, {o(0), o(1)}}, {8, {o(0), o(1)}}, {9, {o(2), o(3)}}});
        CHECK(conflicting(lf.f.index, lf.f.state, lf.lucky, 7, 8));
        CHECK_FALSE(conflicting(lf.f.index, lf.f.state, lf.lucky, 7, 9));
        CHECK_FALSE(conflicting(lf.f.index, lf.f.state, lf.lucky, 8, 9));
        ConflictStats stats;
        select_nonconflicting(lf.f.index, lf.f.state, lf.lucky, 32, &stats);
        CHECK(stats.edges == 1);
        CHECK(stats.bipartite);
        CHECK(lf.lucky.h_double == std::vector<std::size_t>{7, 9});
    }
    SUBCASE("a single crossing is not an edge")
    {
        auto lf = lucky_fixture({{7, a, o(0)}, {7, b, o(1)}, {8, a, o(1)}, {8, b, o(4)}},
                                {{7, {o(0), o(1)}}, {8, {o(1), o(4)}}});
        CHECK_FALSE(conflicting(lf.f.index, lf.f.state, lf.lucky, 7, 8));
    }
    SUBCASE("no conflicts keeps the lowest indices")
    {
        auto lf = lucky_fixture({{7, a, o(0)}, {7, b, o(1)}, {8, a, o(2)}, {8, b, o(3)}, {9, a, o(4)}, {9, b, o(5)}},
                                {{7, {o(0), o(1)}}, {8, {o(2), o(3)}}, {9, {o(4), o(5)}}});
        ConflictStats stats;
        select_nonconflicting(lf.f.index, lf.f.state, lf.lucky, 32, &stats);
        CHECK(stats.edges == 0);
        CHECK(lf.lucky.h_double == std::vector<std::size_t>{7, 8});
        auto pair = find_compatible_pair(lf.f.index, lf.f.state, lf.f.ledger, lf.lucky, 32);
        CHECK(pair == std::pair<std::size_t, std::size_t>{7, 8});
    }
    SUBCASE("unlinked witnesses make an odd cycle")
    {
        auto lf = lucky_fixture({{7, a, o(0)}, {7, b, o(1)}, {8, a, o(1)}, {8, b, o(0)}},
                                {{7, {o(0), o(1)}}, {8, {o(0), o(1)}}, {9, {o(2), o(3)}}});
        ConflictStats stats;
        CHECK_THROWS_AS(select_nonconflicting(lf.f.index, lf.f.state, lf.lucky, 32, &stats), InternalLogicError);
        CHECK_FALSE(stats.bipartite);
        CHECK(stats.edges == 3);
    }
}

TEST_CASE("compatible pairs skip popular elements")
{
    FixtureNames nm{30};
    const Element a = nm.a(20), b = nm.b(20);
    auto o = [&](std::size_t k) { return nm.o(k); };
    auto lf = lucky_fixture({{1, nm.a(7), o(0)},
                             {7, a, o(1)},
                             {7, b, o(0)},
                             {8, a, o(0)},
                             {8, b, o(2)},
                             {9, a, o(3)},
                             {9, b, o(4)}},
                            {{7, {o(0), o(1)}}, {8, {o(0), o(2)}}, {9, {o(3), o(4)}}});
    CHECK(lf.f.ledger.s_sets[7] == ElementSet{o(0)});
    lf.lucky.h_double = {7, 8, 9};
    auto all = compatible_pairs(lf.f.index, lf.f.state, lf.f.ledger, lf.lucky, 4);
    CHECK(lf.lucky.popular == ElementSet{o(0)});
    REQUIRE_FALSE(all.empty());
    CHECK(all.front() == std::pair<std::size_t, std::size_t>{8, 9});
    for (auto [k1, k2] : all)
        CHECK(k1 != 7);
}

TEST_CASE("exclusion set and free pair")
{
    FixtureNames nm{30};
    const Element a = nm.a(20), b = nm.b(20);
    auto o = [&](std::size_t k) { return nm.o(k); };
    auto lf = lucky_fixture({{7, a, o(0)}, {7, b, o(1)}, {8, a, o(2)}, {8, b, o(3)}, {20, o(6), o(7)},
                             {20, o(0), o(5)}},
                            {{7, {o(0), o(1)}}, {8, {o(2), o(3)}}});
    lf.lucky.h_double = {7, 8};
    build_exclusion_set(lf.f.state, lf.f.ledger, lf.lucky);
    CHECK(lf.lucky.exclusion.size() == 2 * 24 + 4);
    CHECK(std::is_sorted(lf.lucky.exclusion.begin(), lf.lucky.exclusion.end()));
    CHECK(find_free_pair(lf.f.index, lf.f.state, lf.lucky) == Pair{o(6), o(7)});
}
