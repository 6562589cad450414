#pragma once

#include "binstretch/core.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace binstretch {

/// Thrown when a counting table does not fit 64-bit unsigned arithmetic.
class SizingError : public std::overflow_error
{
public:
    using std::overflow_error::overflow_error;
};

/// Checked binomial coefficient C(n, k); C(n, k) = 0 for k < 0 or k > n.
std::uint64_t binomial(long long n, long long k);

/// |P_{k,n}|: non-increasing n-vectors with every coordinate < k. Closed form C(k+n-1, k-1).
std::uint64_t count_packings(int k, int n);

/// Precomputed counts for one (m, g, t):
///   packings(k, n)        = N_{k,n}   for k in [0, t],     n in [1, m]
///   sum_packings(S, k, n) = N_{S,k,n} for S in [0, m*g],   k in [0, g], n in [1, m]
/// Built once, immutable afterwards.
class CountTable
{
public:
    explicit CountTable(const GameParams &params);

    const GameParams &params() const { return params_; }

    std::uint64_t packings(int k, int n) const
    {
        return n_kn_[static_cast<std::size_t>(k) * stride_n_ + static_cast<std::size_t>(n)];
    }
    std::uint64_t sum_packings(int s, int k, int n) const
    {
        return n_skn_[(static_cast<std::size_t>(s) * stride_k_ + static_cast<std::size_t>(k)) * stride_n_ +
                      static_cast<std::size_t>(n)];
    }

    /// Size of the rank space of pack_rank, N_{t,m}.
    std::uint64_t rank_space() const { return packings(params_.t, params_.m); }
    /// max over S of N_{S,g,m}; the largest feasible front that can occur.
    std::uint64_t max_front_size() const { return max_front_; }

    /// ind_m(b) = sum_i N_{b_i, m-i+1}. Every load must be < t.
    std::uint64_t pack_rank(std::span<const Load> loads) const
    {
        const int m = static_cast<int>(loads.size());
        std::uint64_t r = 0;
        for (int i = 0; i < m; ++i)
            r += packings(loads[static_cast<std::size_t>(i)], m - i);
        return r;
    }

    /// f(b): lexicographic rank of b inside P_{S,g,m} where S = sum(b).
    std::uint64_t sum_rank(std::span<const Load> loads, int total) const
    {
        const int m = static_cast<int>(loads.size());
        std::uint64_t r = 0;
        int rest = total;
        for (int i = 0; i < m; ++i) {
            const Load b = loads[static_cast<std::size_t>(i)];
            if (b == 0)
                break;
            r += sum_packings(rest, b - 1, m - i);
            rest -= b;
        }
        return r;
    }

    /// Raw N_{S,k,n} storage, laid out [S][k][n] with the strides below.
    const std::uint64_t *sum_table() const { return n_skn_.data(); }
    std::size_t stride_k() const { return stride_k_; }
    std::size_t stride_n() const { return stride_n_; }

    /// Order-sensitive digest of both tables, for debugging dumps.
    std::uint64_t checksum() const;

private:
    GameParams params_;
    std::size_t stride_n_ = 0;
    std::size_t stride_k_ = 0;
    std::vector<std::uint64_t> n_kn_;
    std::vector<std::uint64_t> n_skn_;
    std::uint64_t max_front_ = 0;
};

/// Free-function forms with contract checks, for callers that do not sit on a hot path.
std::uint64_t pack_rank(const CountTable &table, const Packing &b);
std::uint64_t count_sum_packings(const CountTable &table, int s, int k, int n);
std::uint64_t sum_rank(const CountTable &table, const Packing &b, int total);

} // namespace binstretch
