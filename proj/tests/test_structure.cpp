#include <apfree/constructions.hpp>
#include <apfree/structure.hpp>

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace apfree;

namespace {

auto random_set(std::mt19937_64 & gen, std::size_t min_size, std::size_t max_size, Int universe) -> IntSet
{
    std::uniform_int_distribution<std::size_t> size_dist(min_size, max_size);
    std::uniform_int_distribution<Int> elem(-universe, universe);
    std::vector<Int> raw(size_dist(gen));
    for (auto & x : raw)
        x = elem(gen);
    return IntSet::normalize(raw);
}

} // namespace

TEST_CASE("AP graph examples")
{
    auto g = build_ap_graph(IntSet{1, 2, 3});
    CHECK(g.edge_count() == 2);
    CHECK(g.edges() == std::vector<std::pair<Int, Int>>{{1, 3}, {3, 1}});
    CHECK(g.density() == Rational(2, 9));
    CHECK_FALSE(g.adjacent(0, 0));
    CHECK(partial_sumset(g) == IntSet{4});

    auto five = build_ap_graph(IntSet::interval(1, 5));
    CHECK(five.edge_count() == 8);
    CHECK(partial_sumset(five) == IntSet{4, 6, 8});

    auto empty = build_ap_graph(IntSet{});
    CHECK(empty.edge_count() == 0);
    CHECK(empty.density() == 0);
    CHECK_THROWS_AS(g.index_of(7), std::invalid_argument);
}

TEST_CASE("AP graph properties on random sets")
{
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 200; ++trial) {
        auto set = random_set(gen, 0, 60, 80);
        auto g = build_ap_graph(set);
        CHECK(g.edge_count() == 2 * oracle::count_aps(set.to_vector(), 3));
        auto sums = partial_sumset(g);
        CHECK(sums.size() <= set.size());
        for (auto x : sums)
            CHECK(set.contains(x / 2));
        for (auto [a, b] : g.edges()) {
            CHECK(a != b);
            CHECK(set.contains((a + b) / 2));
            CHECK((a + b) % 2 == 0);
        }
    }
}

TEST_CASE("four-step walks agree with edge-list enumeration")
{
    auto g = build_ap_graph(IntSet{1, 2, 3});
    CHECK(count_paths4(g, 1, 1) == 1);
    CHECK(count_paths4(g, 1, 2) == 0);

    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto set = random_set(gen, 2, 18, 15);
        auto g2 = build_ap_graph(set);
        auto edges = g2.edges();
        for (auto a : set)
            for (auto b : set)
                CHECK(count_paths4(g2, a, b) == oracle::walks4(edges, a, b));
    }
}

TEST_CASE("rich subset trivial and degenerate inputs")
{
    auto free = rich_subset(build_ap_graph(IntSet{1, 2, 4, 5}));
    CHECK(free.trivial);
    CHECK(free.Aprime == IntSet{1, 2, 4, 5});

    auto single = rich_subset(build_ap_graph(IntSet{7}));
    CHECK(single.trivial);
    CHECK_FALSE(single.min_pair_paths);

    // p = 0.47 is well below 30/sqrt(32), so the default gate returns everything.
    auto gated = rich_subset(build_ap_graph(IntSet::interval(1, 32)));
    CHECK(gated.trivial);
}

TEST_CASE("rich subset on an interval with the gate lowered")
{
    auto graph = build_ap_graph(IntSet::interval(1, 64));
    RichSubsetOptions options;
    options.hypothesis_constant = 1.0;
    auto report = rich_subset(graph, options);
    REQUIRE(report.succeeded);
    CHECK_FALSE(report.trivial);
    CHECK(report.Aprime.is_subset_of(report.U));
    CHECK(report.Aprime.size() == (report.U.size() + 1) / 2);
    REQUIRE(report.min_pair_paths);
    CHECK(Rational(*report.min_pair_paths) >= report.guaranteed_paths);

    auto again = rich_subset(graph, options);
    CHECK(again.Aprime == report.Aprime);
}

TEST_CASE("verify_bsg on intervals")
{
    BsgOptions options;
    options.rich.hypothesis_constant = 1.0;
    for (Int n : {32, 64}) {
        CAPTURE(n);
        auto report = verify_bsg(IntSet::interval(1, n), options);
        CHECK(report.passed());
        CHECK(report.size_clause);
        CHECK(report.difference_clause);
        CHECK(report.representation_applicable);
        CHECK(report.representation_clause);
        CHECK_FALSE(report.representations.empty());
        for (const auto & rep : report.representations)
            CHECK(rep.ok());
        CHECK(report.edges == 2 * oracle::count_aps(IntSet::interval(1, n).to_vector(), 3));
    }
}

TEST_CASE("verify_bsg on 3-AP-free and constructed sets")
{
    auto free = verify_bsg(IntSet{1, 2, 4, 5, 10, 11, 13, 14});
    CHECK(free.edges == 0);
    CHECK(free.rich.trivial);
    CHECK_FALSE(free.representation_applicable);
    CHECK(free.passed());

    BlockParams p{4, 3, 4, IntSet{1, 2, 4}, {1, 5, 3}};
    auto block = block_random_construct(p);
    BsgOptions options;
    options.rich.hypothesis_constant = 1.0;
    auto report = verify_bsg(block, options);
    CHECK(report.edges == 2 * count_s_aps(block, 3));
    if (report.rich.succeeded)
        CHECK(report.passed());
}

TEST_CASE("Freiman isomorphism examples")
{
    auto affine = affine_map(IntSet{0, 1, 2}, 2, 5, 2);
    CHECK(affine.target() == IntSet{5, 7, 9});
    CHECK(freiman_iso_check(affine));
    CHECK(freiman_iso_check(affine_map(IntSet{0, 1, 2}, -3, 1, 3)));

    auto bent = order_preserving_map(IntSet{0, 1, 2}, IntSet{0, 1, 3}, 2);
    auto result = freiman_iso_check(bent);
    CHECK_FALSE(result.isomorphic);
    REQUIRE(result.violation);
    CHECK(result.violation->lhs == std::vector<Int>{0, 2});
    CHECK(result.violation->rhs == std::vector<Int>{1, 1});
    CHECK(result.violation->source_equal);

    CHECK(freiman_iso_check(order_preserving_map(IntSet{4}, IntSet{-9}, 5)));
    CHECK_THROWS_AS(freiman_iso_check(order_preserving_map(IntSet{1, 2}, IntSet{3, 4}, 1)), std::invalid_argument);
    CHECK_THROWS_AS(order_preserving_map(IntSet{1, 2}, IntSet{3}, 2), std::invalid_argument);

    // {0,1,3} has distinct pairwise sums, but 0+0+3 = 1+1+1 while 0+0+4 != 1+1+1.
    auto sidon = order_preserving_map(IntSet{0, 1, 3}, IntSet{0, 1, 4}, 2);
    CHECK(freiman_iso_check(sidon));
    sidon.order = 3;
    CHECK_FALSE(freiman_iso_check(sidon));
}

TEST_CASE("Freiman maps compose and preserve progressions")
{
    auto first = affine_map(IntSet{1, 2, 3, 4}, 3, -1, 2);
    auto second = affine_map(first.target(), -2, 7, 2);
    auto both = compose(first, second);
    CHECK(both.source() == IntSet{1, 2, 3, 4});
    CHECK(both.apply(2) == -2 * (3 * 2 - 1) + 7);
    CHECK(freiman_iso_check(both));

    std::mt19937_64 gen(17);
    std::uniform_int_distribution<Int> coef(-6, 6);
    for (int trial = 0; trial < 100; ++trial) {
        auto set = random_set(gen, 3, 15, 40);
        Int a = coef(gen);
        if (a == 0)
            a = 1;
        auto map = affine_map(set, a, coef(gen), 2 + trial % 3);
        REQUIRE(freiman_iso_check(map));
        // Order >= 2 isomorphisms carry 3-APs onto 3-APs.
        CHECK(count_s_aps(map.target(), 3) == count_s_aps(set, 3));
    }
}

TEST_CASE("Plunnecke examples")
{
    auto report = plunnecke_check(IntSet::interval(0, 9), IntSet::interval(0, 9), 1, 1);
    CHECK(report.alpha == Rational(19, 10));
    CHECK(report.actual == 19);
    CHECK(report.passed);

    auto single = plunnecke_check(IntSet{0, 10, 20}, IntSet{5}, 3, 2);
    CHECK(single.actual == 1);
    CHECK(single.passed);
    CHECK_THROWS_AS(plunnecke_check(IntSet{1}, IntSet{1}, 1, 0), std::invalid_argument);

    auto ap = plunnecke_check(IntSet::interval(0, 9), IntSet::interval(0, 9), 2, 2);
    CHECK(ap.alpha == Rational(19, 10));
    CHECK(ap.actual == 37);
    CHECK(ap.passed);
    CHECK(ap.bound == Rational(19 * 19 * 19 * 19, 1000));
}

TEST_CASE("Plunnecke bound holds on random instances")
{
    std::mt19937_64 gen(2718);
    for (int trial = 0; trial < 1000; ++trial) {
        auto s = random_set(gen, 1, 30, 50);
        auto t = random_set(gen, 1, 30, 50);
        int r = 1 + static_cast<int>(gen() % 2);
        int r_neg = 1 + static_cast<int>(gen() % 2);
        auto report = plunnecke_check(s, t, r, r_neg);
        CAPTURE(to_string(s));
        CAPTURE(to_string(t));
        CHECK(report.passed);
        CHECK(report.actual == iterated_sumset(r, r_neg, t).size());
        CHECK(Rational(report.actual) <= report.bound);
    }
}
