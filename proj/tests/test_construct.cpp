#include <doctest.h>

#include <rainbow/construct.hpp>
#include <rainbow/fixture.hpp>

#include "support.hpp"

using namespace rainbow;

TEST_CASE("constants")
{
    CHECK(constant_is_proven(5000));
    CHECK_FALSE(constant_is_proven(58));
    CHECK_FALSE(constant_is_proven(0));
    CHECK(ceil_sqrt(5000) == 71);
    CHECK(ceil_sqrt(5041) == 71);
    CHECK(ceil_sqrt(5042) == 72);
    CHECK(ceil_sqrt(0) == 0);
    CHECK(ceil_sqrt(1) == 1);
    CHECK(ceil_sqrt(2) == 2);
}

TEST_CASE("fixture layout")
{
    FixtureSpec spec;
    auto f = gen_fixture_ledger(spec);
    const auto &nm = f.names;
    CHECK(f.state.left_end() == 6);
    CHECK(f.state.track_length() == 6);
    CHECK(f.state.component(4).c == nm.c(4));
    CHECK(f.state.is_left(6));
    CHECK(f.state.is_right(7));
    CHECK(f.index.equivalent(2, nm.a(4), nm.c(4)));
    CHECK(f.index.equivalent(2, nm.b(4), nm.d(4)));
    CHECK(f.ledger.sigma[2] == 4);
}

TEST_CASE("fixture requests")
{
    FixtureSpec spec;
    spec.sigma[10] = 5;
    CHECK_THROWS_AS(gen_fixture_ledger(spec), InfeasibleFixture);
    spec.sigma = {{10, 3}};
    spec.tau = {{4, 3}};
    CHECK_THROWS_AS(gen_fixture_ledger(spec), InfeasibleFixture);
    spec.tau = {{4, 4}, {11, 3}};
    auto f = gen_fixture_ledger(spec);
    CHECK(f.ledger.sigma[10] == 3);
    CHECK(f.ledger.s_sets[10].size() == 1);
    CHECK(f.ledger.tau[4] == 4);
    CHECK(f.ledger.tau[11] == 3);
    SUBCASE("a request on top of the built-in cross pairs overflows")
    {
        spec.sigma = {{2, 4}};
        CHECK_THROWS_AS(gen_fixture_ledger(spec), InfeasibleFixture);
    }
    SUBCASE("outsiders tied across the track open a shortcut")
    {
        FixtureSpec s;
        s.outsiders = 2;
        FixtureNames nm{s.n};
        s.edges = {{6, nm.o(0), nm.o(1)}};
        CHECK_THROWS_AS(gen_fixture_ledger(s), InfeasibleFixture);
        s.require_no_wins = false;
        s.charge = false;
        CHECK_NOTHROW(gen_fixture_ledger(s));
    }
}

TEST_CASE("completion without overrides")
{
    FixtureSpec spec;
    spec.charge = false;
    auto f = gen_fixture_ledger(spec);
    CHECK_FALSE(try_complete_assignment(f.index, f.state, Overrides{}));
    CHECK_THROWS_AS(complete_assignment(f.index, f.state, Overrides{}), CompletionImpossible);
}

TEST_CASE("completion shifts the track to cross pairs")
{
    FixtureSpec spec;
    spec.outsiders = 1;
    spec.tau[2] = 4;
    FixtureNames nm{spec.n};
    spec.edges = {{1, nm.a(4), nm.o(0)}};
    auto f = gen_fixture_ledger(spec);
    Overrides ov;
    ov.assign(1, {nm.a(4), nm.o(0)});
    ov.assign(6, {nm.c(2), nm.d(2)});
    auto by_pos = complete_assignment(f.index, f.state, ov);
    CHECK(by_pos[2] == Pair{nm.a(2), nm.b(2)});
    CHECK(by_pos[3] == Pair{nm.a(3), nm.b(3)});
    CHECK(by_pos[4] == Pair{nm.a(5), nm.c(5)});
    CHECK(by_pos[5] == Pair{nm.a(6), nm.c(6)});
    CHECK(by_pos[7] == Pair{nm.a(7), nm.b(7)});
    CHECK(verify_matching(f.instance, as_matching(f, by_pos)).valid);
}

TEST_CASE("completion takes the bottom cross pair when c is used")
{
    FixtureSpec spec;
    spec.tau[2] = 4;
    FixtureNames nm{spec.n};
    spec.edges = {{1, nm.a(4), nm.c(5)}};
    auto f = gen_fixture_ledger(spec);
    Overrides ov;
    ov.assign(1, {nm.a(4), nm.c(5)});
    ov.assign(6, {nm.c(2), nm.d(2)});
    auto by_pos = complete_assignment(f.index, f.state, ov);
    CHECK(by_pos[4] == Pair{nm.b(5), nm.d(5)});
    CHECK(verify_matching(f.instance, as_matching(f, by_pos)).valid);
}

TEST_CASE("overrides reject reuse")
{
    Overrides ov;
    ov.assign(1, {3, 4});
    CHECK_THROWS_AS(ov.assign(1, {5, 6}), std::invalid_argument);
    CHECK_FALSE(ov.try_assign(2, {4, 7}));
    CHECK(ov.try_assign(2, {5, 7}));
    CHECK(ov.consumed() == ElementSet{3, 4, 5, 7});
}

TEST_CASE("direct pair")
{
    FixtureSpec spec;
    spec.outsiders = 4;
    spec.require_no_wins = false;
    spec.charge = false;
    FixtureNames nm{spec.n};
    SUBCASE("kernel away from B")
    {
        spec.edges = {{1, nm.o(2), nm.o(3)}, {1, nm.o(0), nm.o(1)}};
        auto f = gen_fixture_ledger(spec);
        CHECK(try_direct_pair(f.index, f.state) == Pair{nm.o(0), nm.o(1)});
    }
    SUBCASE("every class meets B")
    {
        auto f = gen_fixture_ledger(spec);
        CHECK_FALSE(try_direct_pair(f.index, f.state));
    }
    SUBCASE("one class with two elements outside B")
    {
        spec.edges = {{1, nm.o(0), nm.o(1)}, {1, nm.o(1), nm.a(9)}, {1, nm.a(10), nm.o(2)}};
        auto f = gen_fixture_ledger(spec);
        CHECK(try_direct_pair(f.index, f.state) == Pair{nm.o(0), nm.o(1)});
    }
}

TEST_CASE("shortcut pair under the track relation")
{
    FixtureSpec spec;
    spec.require_no_wins = false;
    spec.charge = false;
    FixtureNames nm{spec.n};
    spec.edges = {{6, nm.a(3), nm.c(4)}};
    auto f = gen_fixture_ledger(spec);
    auto win = try_unless_win(f.index, f.state, 6);
    REQUIRE(win);
    CHECK(win->branch == "unless");
    CHECK(win->by_position[6] == Pair{nm.a(3), nm.c(4)});
    CHECK(valid(f, *win));
}

TEST_CASE("scheme 2 charges")
{
    FixtureSpec spec;
    spec.sigma = {{9, 4}, {10, 2}};
    spec.tau = {{4, 4}, {9, 4}};
    auto f = gen_fixture_ledger(spec);
    const auto &nm = f.names;
    const auto &led = f.ledger;
    CHECK(led.sigma[10] == 2);
    CHECK(led.s_sets[10].empty());
    CHECK(led.sigma[9] == 4);
    CHECK(led.s_sets[9].size() == 2);
    CHECK(led.tau[4] == 4);
    CHECK(led.t_sets[4] == ElementSet{nm.c(4), nm.d(4)});
    CHECK(led.total(9) == 8);
    CHECK(led.u_set(9).size() == 4);
    int sigma_sum = 0, tau_sum = 0;
    for (std::size_t p = 2; p <= f.state.size(); ++p) {
        sigma_sum += led.sigma[p];
        tau_sum += led.tau[p];
    }
    CHECK(sigma_sum == static_cast<int>(f.index.kernel_size(0)));
    CHECK(tau_sum == static_cast<int>(f.index.kernel_size(5)));
    CHECK(ledger_violations(led, f.state).empty());
}

TEST_CASE("ledger violations are reported")
{
    auto f = gen_fixture_ledger(FixtureSpec{});
    auto led = f.ledger;
    led.sigma[12] = 5;
    led.s_sets[12] = {900, 901, 902};
    led.t_sets[13] = {900};
    led.t_sets[14] = {900};
    auto bad = ledger_violations(led, f.state);
    auto has = [&](const std::string &s) {
        return std::any_of(bad.begin(), bad.end(), [&](const std::string &b) { return b.find(s) != b.npos; });
    };
    CHECK(has("sigma > 4"));
    CHECK(has("|S| > 2"));
    CHECK(has("sigma total"));
    CHECK(has("T sets overlap"));
    CHECK(has("three U sets"));
}

TEST_CASE("heavy indices")
{
    auto f = gen_fixture_ledger(FixtureSpec{});
    auto led = f.ledger;
    std::fill(led.sigma.begin(), led.sigma.end(), 0);
    std::fill(led.tau.begin(), led.tau.end(), 0);
    led.sigma[7] = 4, led.tau[7] = 3;
    led.sigma[8] = 3, led.tau[8] = 3;
    led.sigma[9] = 4, led.tau[9] = 4;
    led.sigma[3] = 4, led.tau[3] = 4;
    auto h = heavy_indices(f.state, led);
    CHECK(h.all == std::vector<std::size_t>{3, 7, 9});
    CHECK(h.left == std::vector<std::size_t>{3});
    CHECK(h.right == std::vector<std::size_t>{7, 9});

    for (std::size_t p = 2; p <= f.state.size(); ++p)
        led.sigma[p] = led.tau[p] = 4;
    CHECK(heavy_indices(f.state, led).all.size() == f.state.size() - 1);
}
