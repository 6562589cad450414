#include "binstretch/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace binstretch {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw SizingError("packing count exceeds 64 bits");
    return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw SizingError("packing count exceeds 64 bits");
    return r;
}

} // namespace

std::uint64_t binomial(long long n, long long k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (long long i = 1; i <= k; ++i) {
        // r * (n-k+i) / i stays integral at every step; split through gcd to delay overflow.
        std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
        std::uint64_t den = static_cast<std::uint64_t>(i);
        std::uint64_t g1 = std::gcd(r, den);
        r /= g1;
        den /= g1;
        num /= den;
        r = checked_mul(r, num);
    }
    return r;
}

std::uint64_t count_packings(int k, int n)
{
    if (k < 0 || n < 1)
        throw std::invalid_argument("count_packings needs k >= 0 and n >= 1");
    return binomial(static_cast<long long>(k) + n - 1, k - 1);
}

CountTable::CountTable(const GameParams &params) : params_(params)
{
    const int m = params.m, g = params.g, t = params.t;
    const int max_s = m * g;
    stride_n_ = static_cast<std::size_t>(m) + 1;
    stride_k_ = static_cast<std::size_t>(g) + 1;

    // N_{k,1} = k and N_{k,n} = sum_{i<k} N_{i+1,n-1}; N_{0,n} = 0.
    n_kn_.assign(static_cast<std::size_t>(t + 1) * stride_n_, 0);
    auto nk = [&](int k, int n) -> std::uint64_t & {
        return n_kn_[static_cast<std::size_t>(k) * stride_n_ + static_cast<std::size_t>(n)];
    };
    for (int k = 0; k <= t; ++k)
        nk(k, 1) = static_cast<std::uint64_t>(k);
    for (int n = 2; n <= m; ++n) {
        std::uint64_t acc = 0;
        for (int k = 1; k <= t; ++k) {
            acc = checked_add(acc, nk(k, n - 1));
            nk(k, n) = acc;
        }
    }

    n_skn_.assign(static_cast<std::size_t>(max_s + 1) * stride_k_ * stride_n_, 0);
    auto nsk = [&](int s, int k, int n) -> std::uint64_t & {
        return n_skn_[(static_cast<std::size_t>(s) * stride_k_ + static_cast<std::size_t>(k)) * stride_n_ +
                      static_cast<std::size_t>(n)];
    };
    for (int s = 0; s <= max_s; ++s)
        for (int k = 0; k <= g; ++k)
            nsk(s, k, 1) = k >= s ? 1 : 0;
    for (int n = 2; n <= m; ++n) {
        for (int k = 0; k <= g; ++k)
            nsk(0, k, n) = 1;
        for (int s = 1; s <= max_s; ++s) {
            for (int k = 0; k <= g; ++k) {
                std::uint64_t acc = 0;
                for (int i = 1; i <= std::min(k, s); ++i)
                    acc = checked_add(acc, nsk(s - i, i, n - 1));
                nsk(s, k, n) = acc;
            }
        }
    }
    for (int s = 0; s <= max_s; ++s)
        max_front_ = std::max(max_front_, nsk(s, g, m));
}

std::uint64_t CountTable::checksum() const
{
    std::uint64_t h = 1469598103934665603ull;
    auto fold = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    for (auto v : n_kn_)
        fold(v);
    for (auto v : n_skn_)
        fold(v);
    return h;
}

std::uint64_t pack_rank(const CountTable &table, const Packing &b)
{
    if (b.size() != table.params().m)
        throw std::invalid_argument("pack_rank: packing has the wrong bin count");
    if (b.size() > 0 && b.largest() >= table.params().t)
        throw std::invalid_argument("pack_rank: load " + std::to_string(b.largest()) + " is not below the target");
    return table.pack_rank(b.loads());
}

std::uint64_t count_sum_packings(const CountTable &table, int s, int k, int n)
{
    const auto &p = table.params();
    if (s < 0 || k < 0 || n < 1 || s > p.m * p.g || k > p.g || n > p.m)
        throw std::out_of_range("count_sum_packings: arguments outside the precomputed table");
    return table.sum_packings(s, k, n);
}

std::uint64_t sum_rank(const CountTable &table, const Packing &b, int total)
{
    const auto &p = table.params();
    if (b.size() != p.m)
        throw std::invalid_argument("sum_rank: packing has the wrong bin count");
    if (b.total() != total)
        throw std::invalid_argument("sum_rank: loads do not sum to the given total");
    if (b.size() > 0 && b.largest() > p.g)
        throw std::invalid_argument("sum_rank: load exceeds the bin capacity");
    return table.sum_rank(b.loads(), total);
}

} // namespace binstretch
