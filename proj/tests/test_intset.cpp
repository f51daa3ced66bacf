#include <apfree/intset.hpp>

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace apfree;

namespace {

auto random_set(std::mt19937_64 & gen, std::size_t max_size, Int universe) -> IntSet
{
    std::uniform_int_distribution<std::size_t> size_dist(0, max_size);
    std::uniform_int_distribution<Int> elem(1, universe);
    std::vector<Int> raw(size_dist(gen));
    for (auto & x : raw)
        x = elem(gen);
    return IntSet::normalize(raw);
}

} // namespace

TEST_CASE("normalize sorts and deduplicates")
{
    CHECK(IntSet::normalize(std::vector<Int>{}).empty());
    std::vector<Int> raw{3, 1, 3, 2};
    CHECK(IntSet::normalize(raw).to_vector() == std::vector<Int>{1, 2, 3});
    std::vector<Int> neg{5, -5, 0};
    CHECK(IntSet::normalize(neg).to_vector() == std::vector<Int>{-5, 0, 5});
    CHECK_THROWS_AS(IntSet::from_sorted({2, 1}), std::invalid_argument);
}

TEST_CASE("count_s_aps examples")
{
    CHECK(count_s_aps(IntSet{}, 3) == 0);
    CHECK(count_s_aps(IntSet{1, 2, 3, 4, 5}, 3) == 4);
    CHECK(count_s_aps(IntSet{0, 1, 3, 4}, 3) == 0);
    CHECK(count_s_aps(IntSet{3, 4, 5, 6}, 4) == 1);
    CHECK_THROWS_AS(count_s_aps(IntSet{1, 2}, 2), std::invalid_argument);
}

TEST_CASE("count_s_aps handles sparse sets with large spans")
{
    IntSet sparse{-4'000'000'000'000, 0, 4'000'000'000'000, 7};
    CHECK(count_s_aps(sparse, 3) == 1);
    CHECK(count_s_aps(sparse, 3) == oracle::count_aps(sparse.to_vector(), 3));
}

TEST_CASE("is_k_ap_free examples")
{
    auto r = is_k_ap_free(IntSet{1, 2, 3}, 3);
    CHECK_FALSE(r.free);
    REQUIRE(r.witness);
    CHECK(*r.witness == Progression{1, 1, 3});
    CHECK(is_k_ap_free(IntSet{1, 2, 3}, 4).free);
    CHECK(is_k_ap_free(IntSet{1, 2, 4, 8, 9}, 3).free);
    CHECK(oracle::is_free({1, 2, 4, 8, 9}, 3));
}

TEST_CASE("window counts")
{
    CHECK(window_ap_count_exact(1, 3) == 1);
    CHECK(window_ap_count_exact(2, 3) == 2);
    // D = 0 gives 5, D = +-1 gives 3 each, D = +-2 gives 1 each.
    CHECK(oracle::window_count(5, 3) == 13);
    CHECK(window_ap_count_exact(5, 3) == 13);
    CHECK(window_ap_count_closed_form(5, 3) == 9);

    for (Int n = 1; n <= 60; ++n)
        for (int s = 3; s <= 6; ++s) {
            CAPTURE(n);
            CAPTURE(s);
            auto exact = window_ap_count_exact(n, s);
            CHECK(exact == oracle::window_count(n, s));
            auto closed = window_ap_count_closed_form(n, s);
            if (s == 3)
                CHECK(exact >= closed);
            // closed >= (1/s) * n(n-1)/2 and exact likewise
            CHECK(2 * static_cast<std::uint64_t>(s) * closed >= static_cast<std::uint64_t>(n * (n - 1)));
            CHECK(2 * static_cast<std::uint64_t>(s) * exact >= static_cast<std::uint64_t>(n * (n - 1)));
        }
}

TEST_CASE("sumsets")
{
    CHECK(sumset(IntSet{0}, IntSet{0, 1}) == IntSet{0, 1});
    CHECK(iterated_sumset(1, 1, IntSet{0, 1, 3}) == IntSet{-3, -2, -1, 0, 1, 2, 3});
    CHECK(iterated_sumset(2, 0, IntSet{0, 1}) == IntSet{0, 1, 2});
    CHECK(iterated_sumset(0, 1, IntSet{1, 5}) == IntSet{-5, -1});
    CHECK_THROWS_AS(iterated_sumset(0, 0, IntSet{1}), std::invalid_argument);

    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto x = random_set(gen, 20, 100);
        auto y = random_set(gen, 20, 100);
        CHECK(sumset(x, y).size() <= x.size() * y.size());
        CHECK(sumset(x, y) == sumset(y, x));
    }
}

TEST_CASE("count_s_aps agrees with the oracle on random sets")
{
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 300; ++trial) {
        auto set = random_set(gen, 120, 1000);
        for (int s = 3; s <= 5; ++s) {
            CAPTURE(to_string(set));
            CHECK(count_s_aps(set, s) == oracle::count_aps(set.to_vector(), s));
            auto free = is_k_ap_free(set, s);
            CHECK(free.free == (oracle::count_aps(set.to_vector(), s) == 0));
            if (! free.free)
                for (auto t : free.witness->terms())
                    CHECK(set.contains(t));
        }
    }
}

TEST_CASE("affine invariance, monotonicity, nesting")
{
    std::mt19937_64 gen(99);
    std::uniform_int_distribution<Int> coef(-9, 9);
    for (int trial = 0; trial < 200; ++trial) {
        auto set = random_set(gen, 60, 300);
        Int a = coef(gen);
        if (a == 0)
            a = 3;
        Int b = coef(gen) * 100;
        std::vector<Int> image;
        for (auto x : set)
            image.push_back(a * x + b);
        auto mapped = IntSet::normalize(image);

        auto extra = random_set(gen, 40, 300);
        std::vector<Int> merged(set.begin(), set.end());
        merged.insert(merged.end(), extra.begin(), extra.end());
        auto bigger = IntSet::normalize(merged);

        for (int s = 3; s <= 5; ++s) {
            CHECK(count_s_aps(mapped, s) == count_s_aps(set, s));
            CHECK(count_s_aps(set, s) <= count_s_aps(bigger, s));
            if (count_s_aps(set, s + 1) > 0)
                CHECK(count_s_aps(set, s) > 0);
        }
    }
}
