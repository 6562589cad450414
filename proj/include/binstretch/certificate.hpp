#pragma once

#include "binstretch/core.hpp"

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace binstretch {

/// A node of a tree proof. Internal nodes carry the next item (> 0) and one child per
/// distinct placement outcome; leaves have item == 0 and no children.
struct ProofNode
{
    std::vector<Load> loads;
    Load item = 0;
    std::vector<ProofNode> children;

    bool is_leaf() const { return item == 0 && children.empty(); }

    friend bool operator==(const ProofNode &, const ProofNode &) = default;
};

struct ProofTree
{
    GameParams params;
    ProofNode root;

    friend bool operator==(const ProofTree &, const ProofTree &) = default;
};

struct TreeStats
{
    std::uint64_t nodes = 0;
    std::uint64_t leaves = 0;
    int depth = 0;
    int distinct_items = 0;
    Load value = 0; // min over leaves of the largest load
};

TreeStats tree_stats(const ProofTree &tree);

enum class VerifyCode
{
    ok,
    bad_params,         // header does not describe a valid game
    malformed_node,     // wrong load count, unsorted loads, negative values, leaf/item mismatch
    bad_root,           // root loads are not all zero
    inconsistent_child, // child is not parent + item in exactly one bin
    missing_placement,  // some bin's placement has no child
    invalid_extension,  // item is not a legal extension of the path's instance
    leaf_below_target,  // a leaf's largest load is below t
};

std::string_view to_string(VerifyCode code);

struct VerifyReport
{
    VerifyCode code = VerifyCode::ok;
    std::string path;    // node path from the root, e.g. "/root/children/1"
    std::string message;

    bool passed() const { return code == VerifyCode::ok; }
};

/// Checks that `tree` is a tree proof of value >= params.t. Independent of the search:
/// item legality is re-derived with a fresh feasibility walk down every path.
/// Loads and items above 65535 are reported as malformed.
VerifyReport verify(const ProofTree &tree, const GameParams &params);
inline VerifyReport verify(const ProofTree &tree) { return verify(tree, tree.params); }

/// Schema violation or malformed JSON; `path` locates the offending element.
class ParseError : public std::runtime_error
{
public:
    ParseError(std::string path, const std::string &what)
        : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path))
    {
    }
    const std::string &path() const { return path_; }

private:
    std::string path_;
};

inline constexpr int certificate_format_version = 1;

/// {"m","g","t","format_version":1,"root":node}; nodes are {"loads":[...],"item":y,"children":[...]}
/// or {"loads":[...]} for leaves. Loads and items must lie in [0, 65535]; fields may come in any order.
std::string serialize(const ProofTree &tree);
ProofTree deserialize(std::string_view text);

void write_certificate(const ProofTree &tree, const std::filesystem::path &path);
ProofTree read_certificate(const std::filesystem::path &path);

/// Writes a certificate node by node in pre-order, so a proof never has to exist as a ProofTree.
/// Call begin_node or leaf for the root, nest children between begin_node and end_node, then finish.
class CertificateWriter
{
public:
    CertificateWriter(std::ostream &out, const GameParams &params);

    void begin_node(std::span<const Load> loads, Load item);
    void end_node();
    void leaf(std::span<const Load> loads);
    /// Throws std::runtime_error if the stream failed.
    void finish();

    /// Statistics of everything written so far.
    TreeStats stats() const;

private:
    void separate();
    void put(std::string_view s);
    void put(long long v);
    void put_loads(std::span<const Load> loads);

    std::ostream &out_;
    std::vector<bool> empty_; // per open node: no child written yet
    TreeStats stats_;
    std::vector<bool> items_;
};

struct CertificateCheck
{
    GameParams params;
    TreeStats stats;
    VerifyReport report;
};

/// Parses and verifies a certificate file without building a ProofTree. Nodes are held in
/// flat arrays of about 2m + 12 bytes each. Throws like read_certificate.
CertificateCheck check_certificate(const std::filesystem::path &path);

} // namespace binstretch
