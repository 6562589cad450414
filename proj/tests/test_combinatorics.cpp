#include "binstretch/combinatorics.hpp"
#include "checks.hpp"

#include <doctest.h>

using namespace binstretch;

TEST_CASE("count_packings")
{
    for (int n = 1; n <= 6; ++n) {
        CHECK(count_packings(1, n) == 1);
        CHECK(count_packings(0, n) == 0);
    }
    for (int k = 0; k <= 20; ++k)
        CHECK(count_packings(k, 1) == static_cast<std::uint64_t>(k));
    CHECK(count_packings(2, 2) == 3);
    CHECK(count_packings(15, 8) == 319'770);
    CHECK_THROWS_AS(count_packings(-1, 2), std::invalid_argument);
    CHECK_THROWS_AS(count_packings(1000, 20), SizingError);
}

TEST_CASE("binomial")
{
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(3, -1) == 0);
    CHECK(binomial(60, 30) == 118'264'581'564'861'424ull);
    CHECK_THROWS_AS(binomial(200, 100), SizingError);
}

TEST_CASE("table construction fails loudly past 64 bits")
{
    CHECK_THROWS_AS(CountTable(GameParams::make(10, 1000, 1001)), SizingError);
}

TEST_CASE("count table entries agree with closed form and recursion")
{
    for (auto p : {GameParams{2, 6, 8}, GameParams{3, 14, 19}, GameParams{6, 11, 15}, GameParams{8, 11, 15},
                   GameParams{10, 200, 300}})
        CHECK(checks::counts_consistent(p) == "");
}

TEST_CASE("pack_rank")
{
    const CountTable t2(GameParams::make(2, 6, 8));
    CHECK(pack_rank(t2, Packing({0, 0})) == 0);
    CHECK(pack_rank(t2, Packing({1, 1})) == 2);
    CHECK(t2.rank_space() == binomial(9, 7));
    const std::vector<Load> single{5};
    CHECK(t2.pack_rank(single) == 5);
    CHECK_THROWS_AS(pack_rank(t2, Packing({8, 0})), std::invalid_argument);
    CHECK_THROWS_AS(pack_rank(t2, Packing({1, 0, 0})), std::invalid_argument);
}

TEST_CASE("pack_rank is a lexicographically increasing bijection")
{
    CHECK(checks::pack_rank_bijective(12, 5) == "");
}

TEST_CASE("count_sum_packings")
{
    const CountTable t(GameParams::make(4, 8, 9));
    for (int k = 0; k <= 8; ++k)
        for (int n = 1; n <= 4; ++n)
            CHECK(count_sum_packings(t, 0, k, n) == 1);
    for (int s = 0; s <= 8; ++s)
        for (int k = 0; k <= 8; ++k)
            CHECK(count_sum_packings(t, s, k, 1) == (k >= s ? 1u : 0u));
    CHECK(count_sum_packings(t, 2, 2, 2) == 2);
    CHECK(count_sum_packings(t, 32, 8, 4) == 1);
    CHECK_THROWS_AS(count_sum_packings(t, 33, 8, 4), std::out_of_range);
}

TEST_CASE("sum_rank")
{
    const CountTable t2(GameParams::make(2, 2, 3));
    CHECK(sum_rank(t2, Packing({0, 0}), 0) == 0);
    CHECK(sum_rank(t2, Packing({1, 1}), 2) == 0);
    CHECK(sum_rank(t2, Packing({2, 0}), 2) == 1);
    CHECK_THROWS_AS(sum_rank(t2, Packing({2, 0}), 3), std::invalid_argument);
    CHECK_THROWS_AS(sum_rank(t2, Packing({3, 0}), 3), std::invalid_argument);
    for (int m = 2; m <= 4; ++m)
        for (int g = 1; g <= 6; ++g) {
            const CountTable t(GameParams::make(m, g, g + 1));
            std::vector<Load> top(static_cast<std::size_t>(m), 0);
            top[0] = g;
            CHECK(sum_rank(t, Packing(top), g) == t.sum_packings(g, g, m) - 1);
        }
}

TEST_CASE("sum_rank is a lexicographically increasing bijection")
{
    CHECK(checks::sum_rank_bijective(8, 4) == "");
}

TEST_CASE("largest front bound")
{
    const CountTable t(GameParams::make(2, 6, 8));
    std::uint64_t best = 0;
    for (int s = 0; s <= 12; ++s)
        best = std::max(best, t.sum_packings(s, 6, 2));
    CHECK(t.max_front_size() == best);
    CHECK(best == 4);
}
