#pragma once

#include "binstretch/combinatorics.hpp"
#include "binstretch/core.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace binstretch {

struct VTableStats
{
    std::uint64_t entries = 0;
    std::uint64_t algorithm_winning = 0; // value g+1
    std::uint64_t zero = 0;              // never stored; kept for the report
    std::uint64_t intermediate = 0;      // value in [1, g]
    std::vector<std::uint64_t> histogram; // histogram[v] for v in [0, g+1]
};

/// Minimum biggest extension v(b) for every packing with all loads < t, indexed by pack_rank.
/// If the adversary cannot send an item of size v(b) from a configuration with loads b,
/// the algorithm wins from there.
class VTable
{
public:
    const GameParams &params() const { return params_; }
    const CountTable &counts() const { return *counts_; }
    std::size_t size() const { return wide_ ? values16_.size() : values8_.size(); }

    int at_rank(std::uint64_t r) const
    {
        return wide_ ? values16_[static_cast<std::size_t>(r)] : values8_[static_cast<std::size_t>(r)];
    }
    /// v(b), with the terminal reading v(b) = 0 when b_1 >= t.
    int value(std::span<const Load> loads) const
    {
        if (loads.front() >= params_.t)
            return 0;
        return at_rank(counts_->pack_rank(loads));
    }
    int value(const Packing &b) const { return value(b.loads()); }

    const VTableStats &stats() const { return stats_; }
    /// Digest of the stored values in rank order.
    std::uint64_t checksum() const;

private:
    friend VTable compute_v_table(std::shared_ptr<const CountTable> counts);

    void set(std::uint64_t r, int v)
    {
        if (wide_)
            values16_[static_cast<std::size_t>(r)] = static_cast<std::uint16_t>(v);
        else
            values8_[static_cast<std::size_t>(r)] = static_cast<std::uint8_t>(v);
    }

    GameParams params_;
    std::shared_ptr<const CountTable> counts_;
    bool wide_ = false;
    std::vector<std::uint8_t> values8_;
    std::vector<std::uint16_t> values16_;
    VTableStats stats_;
};

/// (m-1) * b_{m-1} > m*g - t: the bound can no longer be reached even by stacking
/// everything that is left onto the smallest bin.
bool is_base_alg_winning(std::span<const Load> loads, const GameParams &params);
inline bool is_base_alg_winning(const Packing &b, const GameParams &params)
{
    return is_base_alg_winning(b.loads(), params);
}

/// Backward induction over ||b||_1 from m*g down to 0.
VTable compute_v_table(std::shared_ptr<const CountTable> counts);
inline VTable compute_v_table(const GameParams &params)
{
    return compute_v_table(std::make_shared<const CountTable>(params));
}

/// True iff y_max < v(b): the configuration is won by the algorithm.
inline bool prune_wins_for_algorithm(const VTable &vt, std::span<const Load> loads, Load y_max)
{
    return y_max < vt.value(loads);
}
inline bool prune_wins_for_algorithm(const VTable &vt, const Packing &b, Load y_max)
{
    return prune_wins_for_algorithm(vt, b.loads(), y_max);
}

/// Visits every non-increasing vector of `n` loads, each in [0, cap], summing to `total`,
/// in lexicographic order.
void for_each_packing_with_sum(int n, Load cap, Load total, const std::function<void(std::span<const Load>)> &fn);

} // namespace binstretch
