#pragma once

#include "binstretch/certificate.hpp"
#include "binstretch/combinatorics.hpp"
#include "binstretch/core.hpp"
#include "binstretch/feasibility.hpp"
#include "binstretch/memo.hpp"
#include "binstretch/pruning.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace binstretch {

struct SearchOptions
{
    bool use_memo = true;
    bool use_pruning = true;
    bool record_proof = false;
    /// Memo byte cap; 0 = unbounded. Hitting it ends the search as inconclusive.
    std::size_t memo_cap_bytes = 0;
    /// Only memoize configurations whose search visited at least this many other adversary
    /// nodes; 0 stores everything. Cheap configurations are recomputed instead of stored.
    std::uint64_t memo_min_subtree = 0;
    /// Wall-clock budget for the search; hitting it ends the search as inconclusive.
    std::optional<std::chrono::milliseconds> time_limit;
};

struct SearchStats
{
    std::uint64_t nodes = 0;     // adversary nodes entered
    std::uint64_t pruned = 0;    // configurations cut by y_max < v(b)
    std::uint64_t memo_hits = 0;
    std::uint64_t memo_entries = 0;
    std::uint64_t memo_bytes = 0;
    std::uint64_t front_extensions = 0;
    std::uint64_t front_members = 0;        // summed sizes of all computed fronts
    std::uint64_t extension_cache_hits = 0; // y_max answered without running the DP
    std::uint64_t extension_cache_misses = 0;
};

enum class Outcome
{
    proven,
    not_proven,
    inconclusive,
};

std::string_view to_string(Outcome o);

struct Verdict
{
    GameParams params;
    Outcome outcome = Outcome::not_proven;
    std::optional<ProofTree> proof;
    std::optional<TreeStats> proof_stats; // set whenever a proof was recorded or streamed
    SearchStats stats;
    std::chrono::milliseconds wall{0};
    std::chrono::milliseconds table_time{0};

    bool proven() const { return outcome == Outcome::proven; }
};

/// Adversary/algorithm game search for one (m, g, t). Owns the count tables, the v-table,
/// the memo and a per-depth stack of loads and feasible fronts.
/// Single-threaded; one Solver per thread.
class Solver
{
public:
    explicit Solver(const GameParams &params, SearchOptions options = {});

    const GameParams &params() const { return params_; }
    const CountTable &counts() const { return *counts_; }
    /// Null when pruning is disabled.
    const VTable *vtable() const { return vtable_ ? &*vtable_ : nullptr; }
    const SearchStats &stats() const;

    /// True iff the adversary can force a load >= t from `c`. Requires c.packing.largest() < t.
    /// Throws std::invalid_argument for configurations whose items do not fit m bins of capacity g.
    bool adversary_to_play(const Configuration &c);

    /// True iff every placement of `y` into `c` either reaches t or leads to an adversary win.
    /// Requires y to be a legal extension of c.instance.
    bool algorithm_to_play(const Configuration &c, Load y);

    /// Tree proof rooted at `c` (normally the initial configuration). Requires
    /// adversary_to_play(c) to be true.
    ProofNode extract_proof(const Configuration &c);

    /// Same tree as extract_proof, streamed to `out` node by node.
    void write_proof(const Configuration &c, CertificateWriter &out);

    /// True once a resource limit cut the search short; verdicts since then are meaningless.
    bool exhausted() const { return exhausted_; }

    void clear_memo();

private:
    void load_configuration(const Configuration &c);
    bool adversary(int d, bool probe_memo);
    bool algorithm(int d, Load y);
    template <class Sink>
    void emit(int d, Sink &sink);
    void materialize(int d);
    Load child_largest_extension(int d, Load y);

    std::span<Load> loads_at(int d)
    {
        return std::span<Load>(loads_).subspan(static_cast<std::size_t>(d) * m_, m_);
    }
    void ensure_depth(int d);
    void push_item(Load y);
    void pop_item(Load y);
    std::span<const std::uint16_t> make_key(std::span<const Load> loads);
    std::span<const std::uint16_t> make_item_key();
    bool remember(std::span<const std::uint16_t> key, std::uint64_t hash, Load value);
    bool out_of_time();

    GameParams params_;
    SearchOptions options_;
    std::size_t m_;
    std::shared_ptr<const CountTable> counts_;
    std::optional<VTable> vtable_;
    FrontExtender extender_;
    MemoTable memo_;
    MemoTable extension_cache_; // item multiset -> largest extension
    bool narrow_keys_;          // loads and items fit a byte each

    // Per depth d along the current path: the front (valid only if front_valid_[d]),
    // its largest extension, the loads, and the item sent from d to d+1.
    std::vector<FeasibleFront> fronts_;
    std::vector<char> front_valid_;
    std::vector<Load> y_max_;
    std::vector<Load> sent_;
    std::vector<Load> loads_;
    std::vector<Load> items_; // sorted non-increasing multiset
    std::vector<std::uint16_t> key_;
    struct Child
    {
        int bin;
        int v;
        bool settled; // known adversary win from the memo
    };
    std::vector<std::vector<Child>> children_;

    mutable SearchStats stats_;
    bool exhausted_ = false;
    std::chrono::steady_clock::time_point deadline_;
    bool has_deadline_ = false;
};

/// Builds the tables, searches from the empty configuration and, when asked, records the proof.
Verdict solve(const GameParams &params, const SearchOptions &options = {});

/// Like solve(), but a proven game's certificate is streamed to `certificate` instead of being
/// kept in memory; record_proof is ignored. The file is only created when the game is proven.
Verdict solve(const GameParams &params, const SearchOptions &options, const std::filesystem::path &certificate);

} // namespace binstretch
