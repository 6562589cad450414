#include "binstretch/certificate.hpp"
#include "binstretch/search.hpp"
#include "checks.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

using namespace binstretch;

namespace {

ProofTree proof_of(int m, int g, int t)
{
    SearchOptions rec;
    rec.record_proof = true;
    auto v = solve(GameParams::make(m, g, t), rec);
    REQUIRE(v.proof);
    return *v.proof;
}

ProofNode *first_leaf(ProofNode &n)
{
    if (n.is_leaf())
        return &n;
    for (auto &c : n.children)
        if (auto *l = first_leaf(c))
            return l;
    return nullptr;
}

} // namespace

TEST_CASE("the (2,3,4) proof passes")
{
    const auto tree = proof_of(2, 3, 4);
    CHECK(verify(tree).passed());
    const auto st = tree_stats(tree);
    CHECK(st.value == 4);
    CHECK(st.leaves > 0);
}

TEST_CASE("a leaf edited below the target")
{
    auto tree = proof_of(2, 3, 4);
    ProofNode *leaf = first_leaf(tree.root);
    REQUIRE(leaf);
    leaf->loads = {3, leaf->loads[1] > 3 ? 3 : leaf->loads[1]};
    const auto r = verify(tree);
    CHECK(r.code == VerifyCode::leaf_below_target);
    CHECK(r.path.rfind("/root/children/", 0) == 0);
}

TEST_CASE("a removed child")
{
    auto tree = proof_of(2, 3, 4);
    tree.root.children.pop_back();
    CHECK(verify(tree).code == VerifyCode::missing_placement);
}

TEST_CASE("diagnostic codes")
{
    const auto good = proof_of(2, 3, 4);

    auto wrong_root = good;
    wrong_root.root = ProofNode{{4, 0}, 0, {}};
    CHECK(verify(wrong_root).code == VerifyCode::bad_root);

    auto short_loads = good;
    short_loads.root.children[0].loads.pop_back();
    CHECK(verify(short_loads).code == VerifyCode::malformed_node);

    auto unsorted = good;
    std::reverse(unsorted.root.children[0].loads.begin(), unsorted.root.children[0].loads.end());
    CHECK(verify(unsorted).code == VerifyCode::malformed_node);

    CHECK(verify(good, GameParams{2, 3, 3}).code == VerifyCode::bad_params);
    CHECK(verify(good, GameParams{1, 3, 4}).code == VerifyCode::bad_params);
    CHECK(verify(good, GameParams{2, 3, 5}).code == VerifyCode::leaf_below_target);

    // Consistent loads, but 3 is not a legal first item followed by 3 again.
    ProofTree greedy{GameParams::make(2, 3, 4), ProofNode{{0, 0}, 3, {ProofNode{{3, 0}, 3, {}}}}};
    greedy.root.children[0].children = {ProofNode{{6, 0}, 0, {}}, ProofNode{{3, 3}, 2, {}}};
    greedy.root.children[0].children[1].children = {ProofNode{{5, 3}, 0, {}}};
    CHECK(verify(greedy).code == VerifyCode::invalid_extension);
}

TEST_CASE("unmerged symmetric children are accepted")
{
    auto tree = proof_of(2, 3, 4);
    auto twin = tree.root.children[0];
    tree.root.children.push_back(twin);
    CHECK(verify(tree).passed());
}

TEST_CASE("round trip")
{
    const auto tree = proof_of(2, 3, 4);
    CHECK(deserialize(serialize(tree)) == tree);

    const auto big = proof_of(3, 14, 19);
    const auto path = std::filesystem::temp_directory_path() / "binstretch_roundtrip.json";
    write_certificate(big, path);
    const auto back = read_certificate(path);
    std::filesystem::remove(path);
    CHECK(back == big);
    CHECK(verify(back).passed());
}

TEST_CASE("parse errors")
{
    CHECK_THROWS_AS(deserialize(""), ParseError);
    const auto text = serialize(proof_of(2, 3, 4));
    CHECK_THROWS_AS(deserialize(text.substr(0, text.size() / 2)), ParseError);
    CHECK_THROWS_AS(deserialize("[]"), ParseError);
    CHECK_THROWS_AS(deserialize(R"({"m":2,"g":3,"t":4,"format_version":2,"root":{"loads":[0,0]}})"), ParseError);
    CHECK_THROWS_AS(deserialize(R"({"m":2,"g":3,"t":4,"format_version":1})"), ParseError);
    try {
        deserialize(R"({"m":2,"g":3,"t":4,"format_version":1,"root":{"loads":[0,0],"item":1,"children":[{"loads":[1,"x"]}]}})");
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.path() == "/root/children/0/loads/1");
    }
    try {
        deserialize(R"({"m":2,"g":3,"t":4,"format_version":1,"root":{"loads":[0,0],"extra":1}})");
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.path() == "/root/extra");
    }
    CHECK_THROWS_AS(deserialize(R"({"m":2,"g":3,"t":4,"format_version":1,"root":{"loads":[0,0],"children":[]}})"),
                    ParseError);
    CHECK_THROWS_AS(read_certificate("/nonexistent/certificate.json"), std::runtime_error);
}

TEST_CASE("mutation fuzz")
{
    checks::FuzzCounts counts;
    CHECK(checks::fuzz_certificate(proof_of(3, 14, 19), 1000, 17, &counts) == "");
    CHECK(counts.breaking == 1000);
    CHECK(counts.harmless > 0);
    CHECK(counts.by_code.size() >= 4);
}

TEST_CASE("streamed certificates equal the recorded proof")
{
    const auto path = std::filesystem::temp_directory_path() / "binstretch_stream.json";
    for (auto p : {GameParams::make(2, 3, 4), GameParams::make(3, 14, 19), GameParams::make(4, 14, 19)}) {
        CAPTURE(p.m);
        CAPTURE(p.g);
        SearchOptions rec;
        rec.record_proof = true;
        const auto in_memory = solve(p, rec);
        REQUIRE(in_memory.proof);
        const auto streamed = solve(p, {}, path);
        REQUIRE(streamed.proven());
        CHECK_FALSE(streamed.proof);

        std::ifstream in(path, std::ios::binary);
        std::ostringstream text;
        text << in.rdbuf();
        CHECK(text.str() == serialize(*in_memory.proof) + "\n");

        const auto want = tree_stats(*in_memory.proof);
        for (const auto &st : {*streamed.proof_stats, check_certificate(path).stats}) {
            CHECK(st.nodes == want.nodes);
            CHECK(st.leaves == want.leaves);
            CHECK(st.depth == want.depth);
            CHECK(st.distinct_items == want.distinct_items);
            CHECK(st.value == want.value);
        }
        CHECK(check_certificate(path).report.passed());
    }
    std::filesystem::remove(path);

    const auto unproven = std::filesystem::temp_directory_path() / "binstretch_unproven.json";
    std::filesystem::remove(unproven);
    CHECK_FALSE(solve(GameParams::make(2, 3, 5), {}, unproven).proven());
    CHECK_FALSE(std::filesystem::exists(unproven));
}

TEST_CASE("checking a file agrees with checking the tree")
{
    const auto base = proof_of(3, 14, 19);
    const auto path = std::filesystem::temp_directory_path() / "binstretch_mutant.json";
    std::mt19937 rng(5);
    std::vector<ProofNode *> nodes;
    int failing = 0;
    for (int trial = 0; trial < 200; ++trial) {
        auto copy = base;
        nodes.clear();
        std::function<void(ProofNode &)> collect = [&](ProofNode &n) {
            nodes.push_back(&n);
            for (auto &c : n.children)
                collect(c);
        };
        collect(copy.root);
        ProofNode *n = nodes[std::uniform_int_distribution<std::size_t>(0, nodes.size() - 1)(rng)];
        switch (trial % 4) {
        case 0:
            n->loads.back() += 1;
            break;
        case 1:
            n->item += 1;
            break;
        case 2:
            if (!n->children.empty())
                n->children.pop_back();
            break;
        default:
            n->loads.push_back(0);
            break;
        }
        write_certificate(copy, path);
        const auto in_memory = verify(copy);
        const auto from_file = check_certificate(path).report;
        CHECK(from_file.code == in_memory.code);
        CHECK(from_file.path == in_memory.path);
        CHECK(from_file.message == in_memory.message);
        failing += in_memory.passed() ? 0 : 1;
    }
    std::filesystem::remove(path);
    CHECK(failing > 100);
}

TEST_CASE("failure paths name the exact node")
{
    auto tree = proof_of(3, 14, 19);
    ProofNode *n = &tree.root;
    std::string want = "/root";
    while (!n->children.empty()) {
        const std::size_t k = n->children.size() - 1;
        if (n->children[k].is_leaf())
            break;
        n = &n->children[k];
        want += "/children/" + std::to_string(k);
    }
    REQUIRE(want != "/root");
    n->item += 1;
    const auto r = verify(tree);
    CHECK(r.code == VerifyCode::inconsistent_child);
    CHECK(r.path.rfind(want + "/children/", 0) == 0);

    auto unsorted = proof_of(3, 14, 19);
    ProofNode *fork = &unsorted.root;
    std::string fork_path = "/root";
    while (fork->children.size() < 2) {
        fork = &fork->children[0];
        fork_path += "/children/0";
    }
    std::reverse(fork->children[1].loads.begin(), fork->children[1].loads.end());
    CHECK(verify(unsorted).path == fork_path + "/children/1");
}

TEST_CASE("out of range values")
{
    auto tree = proof_of(2, 3, 4);
    tree.root.children[0].loads[0] = 70000;
    auto r = verify(tree);
    CHECK(r.code == VerifyCode::malformed_node);
    CHECK(r.path == "/root/children/0");

    tree = proof_of(2, 3, 4);
    tree.root.children[0].loads[1] = -1;
    CHECK(verify(tree).code == VerifyCode::malformed_node);

    tree = proof_of(2, 3, 4);
    tree.root.item = -1;
    CHECK(verify(tree).code == VerifyCode::malformed_node);

    try {
        deserialize(R"({"m":2,"g":3,"t":4,"format_version":1,"root":{"loads":[0,-1]}})");
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.path() == "/root/loads/1");
    }
    CHECK_THROWS_AS(deserialize(R"({"m":2,"g":3,"t":4,"format_version":1,"root":{"loads":[70000,0]}})"), ParseError);
    CHECK_THROWS_AS(deserialize(R"({"m":2,"g":3,"t":4,"format_version":1,"root":{"loads":[0,0],"item":-1}})"),
                    ParseError);
    CHECK_THROWS_AS(
        deserialize(R"({"m":2,"g":3,"t":4,"format_version":1,"root":{"loads":[0,0],"loads":[0,0]}})"), ParseError);
    CHECK_THROWS_AS(
        deserialize(R"({"m":2,"g":3,"t":4,"format_version":1,"root":{"loads":[0,0]},"root":{"loads":[0,0]}})"),
        ParseError);
}

TEST_CASE("fields may come in any order")
{
    const auto tree = deserialize(R"({"root":{"children":[{"loads":[4,0]},{"children":[{"loads":[5,1]},)"
                                  R"({"loads":[4,2]}],"loads":[2,1],"item":3}],"item":2,"loads":[1,0]},)"
                                  R"("note":[1,{"x":[]}],"t":4,"format_version":1,"g":3,"m":2})");
    CHECK(tree.params == GameParams{2, 3, 4});
    CHECK(tree.root.loads == std::vector<Load>{1, 0});
    CHECK(tree.root.item == 2);
    REQUIRE(tree.root.children.size() == 2);
    CHECK(tree.root.children[0].is_leaf());
    CHECK(tree.root.children[1].item == 3);
    CHECK(tree.root.children[1].children[1].loads == std::vector<Load>{4, 2});
}

TEST_CASE("large trees survive the compact form")
{
    // 400k children of three loads each cross several storage chunks.
    ProofTree tree{GameParams::make(3, 100, 101), ProofNode{{0, 0, 0}, 1, {}}};
    for (int i = 0; i < 400'000; ++i)
        tree.root.children.push_back(ProofNode{{i % 65'000 + 101, i % 7 + 1, i % 2}, 0, {}});
    const auto text = serialize(tree);
    CHECK(deserialize(text) == tree);
    const auto r = verify(tree);
    CHECK(r.code == VerifyCode::inconsistent_child);
    CHECK(r.path == "/root/children/0");
}
