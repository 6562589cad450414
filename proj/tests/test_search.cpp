#include "binstretch/certificate.hpp"
#include "binstretch/search.hpp"
#include "checks.hpp"

#include <doctest.h>

using namespace binstretch;

TEST_CASE("small games")
{
    CHECK(solve(GameParams::make(2, 3, 4)).proven());
    CHECK_FALSE(solve(GameParams::make(2, 3, 5)).proven());
    CHECK(solve(GameParams::make(2, 3, 5)).outcome == Outcome::not_proven);
}

TEST_CASE("adversary and algorithm moves")
{
    Solver s(GameParams::make(2, 6, 8));
    CHECK_FALSE(s.adversary_to_play({Instance({4, 4}), Packing({4, 4})}));
    CHECK_THROWS_AS(s.adversary_to_play({Instance({4, 4}), Packing({8, 0})}), std::invalid_argument);
    CHECK_THROWS_AS(s.adversary_to_play({Instance({4, 4, 4}), Packing({4, 4})}), std::invalid_argument);

    Solver k(GameParams::make(2, 3, 4));
    CHECK(k.algorithm_to_play({Instance({1, 1}), Packing({1, 1})}, 3));
    CHECK(k.algorithm_to_play(Configuration::initial(2), 1));
    // every placement of 3 onto (2,1) reaches 4
    CHECK(k.algorithm_to_play({Instance({2, 1}), Packing({2, 1})}, 3));
    CHECK_THROWS_AS(k.algorithm_to_play({Instance({2, 2}), Packing({2, 2})}, 2), std::invalid_argument);
}

TEST_CASE("agreement with plain minimax")
{
    CHECK(checks::verdicts_match_minimax(2, 5) == "");
}

TEST_CASE("the memo never changes a verdict")
{
    SearchOptions off;
    off.use_memo = false;
    for (int g = 2; g <= 8; ++g)
        for (int t = g + 1; t < 2 * g; ++t) {
            if (g >= 7 && t != g + 2 && t != (4 * g) / 3 + 1)
                continue;
            const auto p = GameParams::make(3, g, t);
            CAPTURE(g);
            CAPTURE(t);
            CHECK(solve(p).proven() == solve(p, off).proven());
        }
}

TEST_CASE("selective memoization keeps verdicts and proofs")
{
    SearchOptions sparse;
    sparse.memo_min_subtree = 8;
    sparse.record_proof = true;
    for (int m = 2; m <= 4; ++m)
        for (int g = 3; g <= 9; ++g)
            for (int t = g + 1; t < 2 * g; ++t) {
                const auto p = GameParams::make(m, g, t);
                const auto full = solve(p);
                const auto v = solve(p, sparse);
                CAPTURE(m);
                CAPTURE(g);
                CAPTURE(t);
                CHECK(v.proven() == full.proven());
                CHECK(v.stats.memo_entries <= full.stats.memo_entries);
                if (v.proven()) {
                    REQUIRE(v.proof);
                    CHECK(verify(*v.proof).passed());
                }
            }
    const auto big = solve(GameParams::make(4, 14, 19), sparse);
    REQUIRE(big.proven());
    CHECK(verify(*big.proof).passed());
}

TEST_CASE("verdicts are monotone in t")
{
    for (int m = 2; m <= 4; ++m)
        for (int g = 2; g <= 10; ++g) {
            bool proven_above = false;
            for (int t = 2 * g; t > g; --t) {
                const bool proven = solve(GameParams::make(m, g, t)).proven();
                CAPTURE(m);
                CAPTURE(g);
                CAPTURE(t);
                CHECK((!proven_above || proven));
                proven_above = proven_above || proven;
            }
        }
}

TEST_CASE("runs are deterministic")
{
    SearchOptions rec;
    rec.record_proof = true;
    const auto p = GameParams::make(3, 14, 19);
    const auto a = solve(p, rec);
    const auto b = solve(p, rec);
    REQUIRE(a.proven());
    CHECK(a.outcome == b.outcome);
    CHECK(a.stats.nodes == b.stats.nodes);
    CHECK(a.stats.pruned == b.stats.pruned);
    CHECK(a.stats.memo_hits == b.stats.memo_hits);
    CHECK(a.stats.front_extensions == b.stats.front_extensions);
    REQUIRE(a.proof);
    REQUIRE(b.proof);
    CHECK(*a.proof == *b.proof);
}

TEST_CASE("recorded proofs verify")
{
    SearchOptions rec;
    rec.record_proof = true;
    int proven = 0;
    for (int m = 2; m <= 4; ++m)
        for (int g = 2; g <= 9; ++g)
            for (int t = g + 1; t < 2 * g; ++t) {
                const auto v = solve(GameParams::make(m, g, t), rec);
                CHECK(v.proof.has_value() == v.proven());
                if (!v.proven())
                    continue;
                ++proven;
                const auto report = verify(*v.proof);
                CAPTURE(m);
                CAPTURE(g);
                CAPTURE(t);
                CAPTURE(report.message);
                CHECK(report.passed());
                CHECK(tree_stats(*v.proof).value >= t);
            }
    CHECK(proven > 10);
}

TEST_CASE("the (2,3,4) proof")
{
    SearchOptions rec;
    rec.record_proof = true;
    const auto v = solve(GameParams::make(2, 3, 4), rec);
    REQUIRE(v.proof);
    CHECK(v.proof->root.loads == std::vector<Load>{0, 0});
    CHECK(v.proof->root.item == 1);
    CHECK(tree_stats(*v.proof).value == 4);
}

TEST_CASE("resource limits give inconclusive verdicts")
{
    SearchOptions capped;
    capped.memo_cap_bytes = 4096;
    const auto v = solve(GameParams::make(3, 14, 19), capped);
    CHECK(v.outcome == Outcome::inconclusive);
    CHECK_FALSE(v.proof);

    SearchOptions timed;
    timed.time_limit = std::chrono::milliseconds(0);
    CHECK(solve(GameParams::make(4, 14, 19), timed).outcome == Outcome::inconclusive);
}

TEST_CASE("pruning agrees with unpruned search on three bins")
{
    SearchOptions plain;
    plain.use_pruning = false;
    for (int g = 3; g <= 7; ++g)
        for (int t = g + 1; t < 2 * g; ++t) {
            const auto p = GameParams::make(3, g, t);
            const auto with = solve(p);
            const auto without = solve(p, plain);
            CHECK(with.proven() == without.proven());
        }
}
