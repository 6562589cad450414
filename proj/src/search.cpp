#include "binstretch/search.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <string>

namespace binstretch {

std::string_view to_string(Outcome o)
{
    switch (o) {
    case Outcome::proven:
        return "proven";
    case Outcome::not_proven:
        return "not_proven";
    case Outcome::inconclusive:
        return "inconclusive";
    }
    return "unknown";
}

Solver::Solver(const GameParams &params, SearchOptions options)
    : params_(GameParams::make(params.m, params.g, params.t)),
      options_(options),
      m_(static_cast<std::size_t>(params.m)),
      counts_(std::make_shared<const CountTable>(params_)),
      extender_(*counts_),
      memo_(options.memo_cap_bytes),
      extension_cache_(options.memo_cap_bytes),
      narrow_keys_(params_.t <= 256 && params_.g <= 255)
{
    if (options_.use_pruning)
        vtable_.emplace(compute_v_table(counts_));
    // Every item is at least 1, so a path holds at most m*g items.
    const auto levels = static_cast<std::size_t>(params_.capacity_total()) + 2;
    fronts_.resize(levels);
    front_valid_.assign(levels, 0);
    y_max_.assign(levels, 0);
    sent_.assign(levels, 0);
    loads_.assign(levels * m_, 0);
    children_.resize(levels);
    for (auto &kids : children_)
        kids.reserve(m_);
    if (options_.time_limit) {
        has_deadline_ = true;
        deadline_ = std::chrono::steady_clock::now() + *options_.time_limit;
    }
}

const SearchStats &Solver::stats() const
{
    stats_.memo_entries = memo_.size();
    stats_.memo_bytes = memo_.bytes() + extension_cache_.bytes();
    return stats_;
}

void Solver::clear_memo()
{
    memo_.clear();
    extension_cache_.clear();
}

void Solver::load_configuration(const Configuration &c)
{
    if (c.packing.size() != params_.m)
        throw std::invalid_argument("configuration has " + std::to_string(c.packing.size()) + " bins, expected " +
                                    std::to_string(params_.m));
    if (c.packing.total() != c.instance.total())
        throw std::invalid_argument("configuration loads and items have different totals");
    fronts_[0] = front_of(c.instance, *counts_);
    front_valid_[0] = 1;
    y_max_[0] = fronts_[0].largest_extension();
    std::copy(c.packing.loads().begin(), c.packing.loads().end(), loads_at(0).begin());
    items_.assign(c.instance.items().begin(), c.instance.items().end());
}

void Solver::push_item(Load y)
{
    auto pos = std::upper_bound(items_.begin(), items_.end(), y, std::greater<>{});
    items_.insert(pos, y);
}

void Solver::pop_item(Load y)
{
    auto pos = std::lower_bound(items_.begin(), items_.end(), y, std::greater<>{});
    items_.erase(pos);
}

namespace {

// Values below 256 go two to a word; a trailing odd byte is padded with 0, which no item can be.
void append_words(std::vector<std::uint16_t> &key, std::span<const Load> a, std::span<const Load> b, bool narrow)
{
    if (!narrow) {
        for (Load v : a)
            key.push_back(static_cast<std::uint16_t>(v));
        for (Load v : b)
            key.push_back(static_cast<std::uint16_t>(v));
        return;
    }
    std::uint16_t word = 0;
    bool half = false;
    auto put = [&](Load v) {
        if (half) {
            key.push_back(static_cast<std::uint16_t>(word | (static_cast<std::uint16_t>(v) << 8)));
        } else {
            word = static_cast<std::uint16_t>(v);
        }
        half = !half;
    };
    for (Load v : a)
        put(v);
    for (Load v : b)
        put(v);
    if (half)
        key.push_back(word);
}

} // namespace

std::span<const std::uint16_t> Solver::make_key(std::span<const Load> loads)
{
    key_.clear();
    append_words(key_, loads, items_, narrow_keys_);
    return key_;
}

std::span<const std::uint16_t> Solver::make_item_key()
{
    key_.clear();
    append_words(key_, {}, items_, narrow_keys_);
    return key_;
}

bool Solver::remember(std::span<const std::uint16_t> key, std::uint64_t hash, Load value)
{
    if (!memo_.insert(key, hash, static_cast<std::uint16_t>(value))) {
        exhausted_ = true;
        return false;
    }
    return true;
}

bool Solver::out_of_time()
{
    return has_deadline_ && std::chrono::steady_clock::now() >= deadline_;
}

bool Solver::adversary(int d, bool probe_memo)
{
    ++stats_.nodes;
    if ((stats_.nodes & 0xFFF) == 0 && out_of_time())
        exhausted_ = true;
    if (exhausted_)
        return false;

    auto b = loads_at(d);
    const Load y_max = y_max_[static_cast<std::size_t>(d)];
    if (y_max == 0)
        return false;
    if (vtable_ && prune_wins_for_algorithm(*vtable_, b, y_max)) {
        ++stats_.pruned;
        return false;
    }

    if (options_.use_memo && probe_memo) {
        auto key = make_key(b);
        if (auto hit = memo_.find(key, hash_words(key))) {
            ++stats_.memo_hits;
            return *hit != 0;
        }
    }

    const std::uint64_t before = stats_.nodes;
    Load winner = 0;
    for (Load y = y_max; y >= 1; --y) {
        if (algorithm(d, y)) {
            winner = y;
            break;
        }
        if (exhausted_)
            return false;
    }
    if (options_.use_memo && stats_.nodes - before >= options_.memo_min_subtree) {
        auto key = make_key(b);
        remember(key, hash_words(key), winner);
    }
    return winner != 0;
}

void Solver::materialize(int d)
{
    const auto du = static_cast<std::size_t>(d);
    if (front_valid_[du])
        return;
    materialize(d - 1);
    ++stats_.front_extensions;
    extender_.extend(fronts_[du - 1], sent_[du - 1], fronts_[du]);
    stats_.front_members += fronts_[du].size();
    front_valid_[du] = 1;
}

// y_max of the instance items_ (which already holds y), looked up by item multiset and
// computed from the depth-d front only on a miss.
Load Solver::child_largest_extension(int d, Load y)
{
    const auto du = static_cast<std::size_t>(d);
    sent_[du] = y;
    front_valid_[du + 1] = 0;
    std::span<const std::uint16_t> key;
    std::uint64_t hash = 0;
    if (options_.use_memo) {
        key = make_item_key();
        hash = hash_words(key);
        if (auto hit = extension_cache_.find(key, hash)) {
            ++stats_.extension_cache_hits;
            return static_cast<Load>(*hit);
        }
    }
    materialize(d);
    const Load y_max = largest_extension_after(fronts_[du], y);
    if (options_.use_memo) {
        extension_cache_.insert(make_item_key(), hash, static_cast<std::uint16_t>(y_max));
        ++stats_.extension_cache_misses;
    }
    return y_max;
}

bool Solver::algorithm(int d, Load y)
{
    const auto du = static_cast<std::size_t>(d);
    auto b = loads_at(d);
    auto child = loads_at(d + 1);
    auto &kids = children_[du];
    kids.clear();

    Load prev = -1;
    for (std::size_t i = 0; i < m_; ++i) {
        if (b[i] == prev)
            continue;
        prev = b[i];
        // Placements reaching t end the game in the adversary's favour.
        if (b[i] + y < params_.t)
            kids.push_back({static_cast<int>(i), 0, false});
    }
    if (kids.empty())
        return true;

    // The child's largest extension can only be smaller than the parent's, so a child
    // whose v exceeds the parent's y_max is already an algorithm win.
    int worst_v = 0;
    if (vtable_) {
        for (auto &k : kids) {
            std::copy(b.begin(), b.end(), child.begin());
            place_sorted(child, k.bin, y);
            k.v = vtable_->value(child);
            worst_v = std::max(worst_v, k.v);
        }
        if (worst_v > y_max_[du]) {
            ++stats_.pruned;
            return false;
        }
    }

    push_item(y);
    bool all = true;
    std::size_t open = kids.size();
    if (options_.use_memo) {
        for (auto &k : kids) {
            std::copy(b.begin(), b.end(), child.begin());
            place_sorted(child, k.bin, y);
            auto key = make_key(child);
            if (auto hit = memo_.find(key, hash_words(key))) {
                ++stats_.memo_hits;
                if (*hit == 0) {
                    all = false;
                    break;
                }
                k.settled = true;
                --open;
            }
        }
    }

    if (all && open > 0) {
        const Load child_y_max = child_largest_extension(d, y);
        y_max_[du + 1] = child_y_max;
        if (worst_v > child_y_max) {
            ++stats_.pruned;
            all = false;
        }
        // Children closest to algorithm-winning first: a single win refutes y.
        std::stable_sort(kids.begin(), kids.end(), [](const Child &a, const Child &c) { return a.v > c.v; });
        for (std::size_t k = 0; all && k < kids.size(); ++k) {
            if (kids[k].settled)
                continue;
            std::copy(b.begin(), b.end(), child.begin());
            place_sorted(child, kids[k].bin, y);
            all = adversary(d + 1, false);
        }
    }
    pop_item(y);
    return all;
}

bool Solver::adversary_to_play(const Configuration &c)
{
    if (c.packing.size() > 0 && c.packing.largest() >= params_.t)
        throw std::invalid_argument("adversary_to_play: the target is already reached");
    load_configuration(c);
    return adversary(0, true);
}

bool Solver::algorithm_to_play(const Configuration &c, Load y)
{
    load_configuration(c);
    if (y < 1 || y > fronts_[0].largest_extension())
        throw std::invalid_argument("algorithm_to_play: item " + std::to_string(y) + " is not a legal extension");
    return algorithm(0, y);
}

template <class Sink>
void Solver::emit(int d, Sink &sink)
{
    const auto du = static_cast<std::size_t>(d);
    auto b = loads_at(d);

    Load y = 0;
    if (options_.use_memo) {
        auto key = make_key(b);
        if (auto hit = memo_.find(key, hash_words(key)))
            y = static_cast<Load>(*hit);
    }
    if (y == 0) {
        for (Load cand = y_max_[du]; cand >= 1; --cand) {
            if (algorithm(d, cand)) {
                y = cand;
                break;
            }
        }
    }
    if (y == 0)
        throw std::logic_error("extract_proof: configuration is not an adversary win");
    sink.begin_node(b, y);

    push_item(y);
    y_max_[du + 1] = child_largest_extension(d, y);
    auto child = loads_at(d + 1);
    Load prev = -1;
    for (std::size_t i = 0; i < m_; ++i) {
        if (b[i] == prev)
            continue;
        prev = b[i];
        std::copy(b.begin(), b.end(), child.begin());
        place_sorted(child, static_cast<int>(i), y);
        if (child[0] >= params_.t)
            sink.leaf(child);
        else
            emit(d + 1, sink);
    }
    pop_item(y);
    sink.end_node();
}

namespace {

// Collects emitted nodes into a ProofNode.
class TreeBuilder
{
public:
    void begin_node(std::span<const Load> loads, Load item)
    {
        open_.push_back(ProofNode{{loads.begin(), loads.end()}, item, {}});
    }
    void leaf(std::span<const Load> loads) { open_.back().children.push_back(ProofNode{{loads.begin(), loads.end()}, 0, {}}); }
    void end_node()
    {
        ProofNode done = std::move(open_.back());
        open_.pop_back();
        if (open_.empty())
            root_ = std::move(done);
        else
            open_.back().children.push_back(std::move(done));
    }
    ProofNode take() { return std::move(root_); }

private:
    std::vector<ProofNode> open_;
    ProofNode root_;
};

} // namespace

ProofNode Solver::extract_proof(const Configuration &c)
{
    load_configuration(c);
    TreeBuilder builder;
    emit(0, builder);
    return builder.take();
}

void Solver::write_proof(const Configuration &c, CertificateWriter &out)
{
    load_configuration(c);
    emit(0, out);
}

namespace {

template <class OnProven>
Verdict run_solve(const GameParams &params, const SearchOptions &options, OnProven on_proven)
{
    const auto start = std::chrono::steady_clock::now();
    Solver solver(params, options);
    const auto tables_done = std::chrono::steady_clock::now();

    Verdict v;
    v.params = solver.params();
    const bool won = solver.adversary_to_play(Configuration::initial(params.m));
    if (solver.exhausted())
        v.outcome = Outcome::inconclusive;
    else
        v.outcome = won ? Outcome::proven : Outcome::not_proven;
    if (v.proven())
        on_proven(solver, v);
    v.stats = solver.stats();
    const auto end = std::chrono::steady_clock::now();
    v.wall = std::chrono::duration_cast<std::chrono::milliseconds>(end - start);
    v.table_time = std::chrono::duration_cast<std::chrono::milliseconds>(tables_done - start);
    return v;
}

} // namespace

Verdict solve(const GameParams &params, const SearchOptions &options)
{
    return run_solve(params, options, [&](Solver &solver, Verdict &v) {
        if (options.record_proof) {
            v.proof = ProofTree{solver.params(), solver.extract_proof(Configuration::initial(params.m))};
            v.proof_stats = tree_stats(*v.proof);
        }
    });
}

Verdict solve(const GameParams &params, const SearchOptions &options, const std::filesystem::path &certificate)
{
    return run_solve(params, options, [&](Solver &solver, Verdict &v) {
        std::ofstream out(certificate, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot open " + certificate.string() + " for writing");
        CertificateWriter writer(out, solver.params());
        solver.write_proof(Configuration::initial(params.m), writer);
        writer.finish();
        v.proof_stats = writer.stats();
    });
}

} // namespace binstretch
