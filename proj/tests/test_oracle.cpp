#include <doctest.h>

#include "oracle.hpp"

#include <rainbow/exact.hpp>
#include <rainbow/gen.hpp>
#include <rainbow/search.hpp>

using namespace rainbow;

TEST_CASE("lower-bound family has no rainbow matching")
{
    for (std::size_t n = 2; n <= 5; ++n) {
        CAPTURE(n);
        auto inst = gen_lower_bound_family(n);
        CHECK(min_kernel(inst) == 3 * n - 3);
        auto r = exact_solve(inst);
        CHECK(r.verdict == ExactVerdict::proven_none);
        CHECK_FALSE(r.matching);
    }
}

TEST_CASE("small exact cases")
{
    Instance inst(4, {Partition({{0, 1}}), Partition({{2, 3}})});
    auto r = exact_solve(inst);
    REQUIRE(r.verdict == ExactVerdict::matched);
    CHECK(r.matching->pairs == std::vector<Pair>{{0, 1}, {2, 3}});

    Instance empty_rel(4, {Partition({{0, 1}}), Partition{}});
    CHECK(exact_solve(empty_rel).verdict == ExactVerdict::proven_none);
    CHECK(exact_solve(Instance{}).verdict == ExactVerdict::matched);
}

TEST_CASE("budget stops the search")
{
    auto r = exact_solve(gen_lower_bound_family(6), 5);
    CHECK(r.verdict == ExactVerdict::budget_exhausted);
    CHECK(r.nodes <= 6);
}

TEST_CASE("subset solve leaves other relations empty")
{
    Instance inst(6, {Partition({{0, 1}}), Partition({{0, 1}}), Partition({{2, 3}})});
    std::vector<std::size_t> rels{0, 2};
    auto r = exact_solve(inst, rels);
    REQUIRE(r.verdict == ExactVerdict::matched);
    CHECK(r.matching[0]);
    CHECK_FALSE(r.matching[1]);
    CHECK(r.matching[2]);
    CHECK(verify_partial(inst, r.matching).valid);
}

TEST_CASE("exact search agrees with plain enumeration")
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        std::size_t n = 1 + seed % 6;
        std::size_t ground = 4 + seed % 12;
        auto inst = oracle::random_small(n, ground, seed);
        auto r = exact_solve(inst);
        CAPTURE(seed);
        CHECK((r.verdict == ExactVerdict::matched) == oracle::has_rainbow_matching(inst));
        if (r.matching)
            CHECK(verify_matching(inst, *r.matching).valid);
    }
}

TEST_CASE("two relations on one triple")
{
    SearchOptions opt;
    opt.n = 2;
    opt.kernel_target = 3;
    opt.max_ground = 3;
    opt.budget = 100000;
    auto r = search_unmatchable(opt);
    REQUIRE(r.witness);
    CHECK(r.witness->ground_size() == 3);
    for (const auto &rel : r.witness->relations())
        CHECK(rel.classes() == std::vector<ElementSet>{{0, 1, 2}});
}

TEST_CASE("search witnesses are unmatchable and meet the target")
{
    SearchOptions opt;
    opt.n = 3;
    opt.kernel_target = 8;
    opt.max_ground = 12;
    opt.seed = 5;
    auto r = search_unmatchable(opt);
    REQUIRE(r.witness);
    CHECK(min_kernel(*r.witness) >= 8);
    CHECK_FALSE(oracle::has_rainbow_matching(*r.witness));
}

TEST_CASE("search is reproducible")
{
    SearchOptions opt;
    opt.n = 3;
    opt.kernel_target = 7;
    opt.max_ground = 10;
    opt.seed = 11;
    auto a = search_unmatchable(opt);
    auto b = search_unmatchable(opt);
    REQUIRE(a.witness);
    CHECK(*a.witness == *b.witness);
    CHECK(a.nodes == b.nodes);
}

TEST_CASE("exhausted small space reports none")
{
    SearchOptions opt;
    opt.n = 2;
    opt.kernel_target = 5;
    opt.max_ground = 6;
    opt.budget = 10'000'000;
    opt.restart_nodes = 10'000'000;
    auto r = search_unmatchable(opt);
    CHECK_FALSE(r.witness);
    CHECK(r.exhaustive);
}

TEST_CASE("two crossed pairings block each other")
{
    Instance inst(4, {Partition({{0, 1}, {2, 3}}), Partition({{0, 2}, {1, 3}})});
    CHECK(min_kernel(inst) == 4);
    CHECK_FALSE(oracle::has_rainbow_matching(inst));
    CHECK(exact_solve(inst).verdict == ExactVerdict::proven_none);
}

TEST_CASE("minimal unmatchable kernel at n = 2")
{
    auto r = min_unmatchable_kernel(2, 6, 20'000'000, 1);
    CHECK(r.kernel == 4);
    CHECK(r.exhaustive);
    REQUIRE(r.witness);
    CHECK(min_kernel(*r.witness) >= 4);
    CHECK_FALSE(oracle::has_rainbow_matching(*r.witness));
}
