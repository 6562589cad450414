#include "binstretch/pruning.hpp"
#include "checks.hpp"

#include <doctest.h>

using namespace binstretch;

namespace {

int v(const VTable &vt, std::vector<Load> b) { return vt.value(Packing(std::move(b))); }

// The defining recursion evaluated directly against the finished table.
int recursion(const VTable &vt, std::span<const Load> b)
{
    const auto &p = vt.params();
    Load total = 0;
    for (Load l : b)
        total += l;
    const Load s_max = std::min<Load>(p.g, p.m * p.g - total);
    int best = p.g + 1;
    std::vector<Load> c(b.begin(), b.end());
    for (Load s = 1; s <= s_max; ++s) {
        int worst = s;
        for (std::size_t i = 0; i < b.size(); ++i) {
            std::copy(b.begin(), b.end(), c.begin());
            place_sorted(c, static_cast<int>(i), s);
            worst = std::max(worst, vt.value(c));
        }
        best = std::min(best, worst);
    }
    return best;
}

} // namespace

TEST_CASE("base criterion")
{
    const auto p = GameParams::make(2, 6, 8);
    CHECK(is_base_alg_winning(Packing({5, 5}), p));
    CHECK(is_base_alg_winning(Packing({6, 5}), p));
    CHECK_FALSE(is_base_alg_winning(Packing({4, 4}), p));
    CHECK(is_base_alg_winning(Packing({7, 0}), p));
    CHECK_FALSE(is_base_alg_winning(Packing({3, 3}), p));
    // (3-1) * 2 = 4 > 3*4 - 9 = 3, while b_{m-1} >= ceil(3/2) + 1 = 3 would reject it.
    CHECK(is_base_alg_winning(Packing({2, 2, 0}), GameParams::make(3, 4, 9)));
}

TEST_CASE("worked v-table values")
{
    const auto vt = compute_v_table(GameParams::make(2, 6, 8));
    CHECK(v(vt, {4, 4}) == 4);
    CHECK(v(vt, {4, 3}) == 5);
    CHECK(v(vt, {4, 2}) == 6);
    CHECK(v(vt, {3, 2}) == 6);
    CHECK(v(vt, {4, 1}) == 7);
    CHECK(v(vt, {5, 5}) == 7);
    CHECK(v(vt, {6, 5}) == 7);
    CHECK(v(vt, {8, 0}) == 0);
    CHECK(vt.size() == 36);
    CHECK(vt.stats().entries == 36);
    CHECK(vt.stats().algorithm_winning + vt.stats().intermediate == 36);
}

TEST_CASE("prune query")
{
    const auto p = GameParams::make(2, 6, 8);
    const auto vt = compute_v_table(p);
    for (Load y = 0; y <= 6; ++y)
        CHECK(prune_wins_for_algorithm(vt, Packing({4, 1}), y));
    CHECK(prune_wins_for_algorithm(vt, Packing({3, 2}), 5));
    CHECK_FALSE(prune_wins_for_algorithm(vt, Packing({3, 2}), 6));

    const CountTable t(p);
    const Load y_max = front_of(Instance({4, 4}), t).largest_extension();
    CHECK(y_max == 2);
    CHECK(prune_wins_for_algorithm(vt, Packing({4, 4}), y_max));
    CHECK_FALSE(prune_wins_for_algorithm(vt, Packing({4, 4}), 4));
}

TEST_CASE("table invariants")
{
    for (auto p : {GameParams::make(2, 6, 8), GameParams::make(3, 7, 10), GameParams::make(4, 5, 7),
                   GameParams::make(3, 14, 19), GameParams::make(2, 300, 400)}) {
        CAPTURE(p.m);
        CAPTURE(p.g);
        CAPTURE(p.t);
        const auto vt = compute_v_table(p);
        std::uint64_t entries = 0;
        oracle::packings(p.m, p.t - 1, [&](const oracle::Loads &b) {
            ++entries;
            Load total = 0;
            for (Load l : b)
                total += l;
            const int value = vt.value(b);
            REQUIRE(value >= 1);
            REQUIRE(value <= p.g + 1);
            if (total >= p.m * p.g || is_base_alg_winning(b, p))
                REQUIRE(value == p.g + 1);
            else
                REQUIRE(value == recursion(vt, b));
        });
        CHECK(entries == vt.size());
        CHECK(vt.stats().zero == 0);
    }
}

TEST_CASE("wide tables")
{
    const auto vt = compute_v_table(GameParams::make(2, 300, 400));
    CHECK(vt.value(Packing({0, 0})) <= 300);
    CHECK(vt.value(Packing({300, 300})) == 301);
}

TEST_CASE("pruned configurations are algorithm wins")
{
    std::size_t n = 0;
    CHECK(checks::prune_is_sound(2, 4, &n) == "");
    CHECK(n > 0);
}
