#include "binstretch/feasibility.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace binstretch {

std::vector<Packing> FeasibleFront::packings() const
{
    std::vector<Packing> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
        auto b = member(i);
        out.emplace_back(std::vector<Load>(b.begin(), b.end()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

FeasibleFront empty_front(const GameParams &params)
{
    FeasibleFront f;
    f.reset(params.m, params.g, 0);
    f.loads_.assign(static_cast<std::size_t>(params.m), 0);
    f.largest_extension_ = params.g;
    return f;
}

namespace {

// Calls emit(candidate) for every distinct b + y * e_j with b_j + y <= g, across all members.
template <typename Emit>
void for_each_placement(const FeasibleFront &in, Load y, std::vector<Load> &tmp, Emit &&emit)
{
    const int m = in.bins();
    const Load g = in.capacity();
    tmp.resize(static_cast<std::size_t>(m));
    for (std::size_t k = 0; k < in.size(); ++k) {
        auto b = in.member(k);
        Load prev = -1;
        for (int j = 0; j < m; ++j) {
            const Load bj = b[static_cast<std::size_t>(j)];
            if (bj == prev)
                continue;
            prev = bj;
            if (bj + y > g)
                continue;
            std::copy(b.begin(), b.end(), tmp.begin());
            place_sorted(tmp, j, y);
            emit(std::span<const Load>(tmp));
        }
    }
}

} // namespace

FrontExtender::FrontExtender(const CountTable &table)
    : table_(&table), stamp_(static_cast<std::size_t>(table.max_front_size()), 0)
{
}

namespace {

// Same step as for_each_placement + sum_rank with the bin count fixed at compile time.
template <int M>
Load extend_fixed(const CountTable &table, const Load *src, std::size_t n, Load y, Load g, Load total,
                  std::uint32_t generation, std::uint32_t *stamp, std::vector<Load> &dst)
{
    const std::uint64_t *nsk = table.sum_table();
    const std::size_t sk = table.stride_k(), sn = table.stride_n();
    dst.resize(n * M * M);
    Load *out = dst.data();
    Load largest = 0;
    for (std::size_t k = 0; k < n; ++k, src += M) {
        Load prev = -1;
        for (int j = 0; j < M; ++j) {
            const Load bj = src[j];
            if (bj == prev)
                continue;
            prev = bj;
            if (bj + y > g)
                continue;
            Load c[M];
            const Load v = bj + y;
            int p = j;
            while (p > 0 && src[p - 1] < v)
                --p;
            for (int i = 0; i < p; ++i)
                c[i] = src[i];
            c[p] = v;
            for (int i = p + 1; i <= j; ++i)
                c[i] = src[i - 1];
            for (int i = j + 1; i < M; ++i)
                c[i] = src[i];

            std::uint64_t r = 0;
            Load rest = total;
            for (int i = 0; i < M && c[i] != 0; ++i) {
                r += nsk[(static_cast<std::size_t>(rest) * sk + static_cast<std::size_t>(c[i] - 1)) * sn +
                         static_cast<std::size_t>(M - i)];
                rest -= c[i];
            }
            if (stamp[r] == generation)
                continue;
            stamp[r] = generation;
            std::copy(c, c + M, out);
            out += M;
            largest = std::max(largest, g - c[M - 1]);
        }
    }
    dst.resize(static_cast<std::size_t>(out - dst.data()));
    return largest;
}

} // namespace

void FrontExtender::extend(const FeasibleFront &in, Load y, FeasibleFront &out)
{
    if (++generation_ == 0) {
        std::fill(stamp_.begin(), stamp_.end(), 0);
        generation_ = 1;
    }
    const Load total = in.total() + y;
    const Load g = in.capacity();
    out.reset(in.bins(), g, total);

    auto fixed = [&]<int M>() {
        out.largest_extension_ = extend_fixed<M>(*table_, in.loads_.data(), in.size(), y, g, total, generation_,
                                                 stamp_.data(), out.loads_);
    };
    switch (in.bins()) {
    case 2: fixed.template operator()<2>(); return;
    case 3: fixed.template operator()<3>(); return;
    case 4: fixed.template operator()<4>(); return;
    case 5: fixed.template operator()<5>(); return;
    case 6: fixed.template operator()<6>(); return;
    case 7: fixed.template operator()<7>(); return;
    case 8: fixed.template operator()<8>(); return;
    default: break;
    }
    for_each_placement(in, y, tmp_, [&](std::span<const Load> c) {
        auto r = static_cast<std::size_t>(table_->sum_rank(c, total));
        if (stamp_[r] == generation_)
            return;
        stamp_[r] = generation_;
        out.loads_.insert(out.loads_.end(), c.begin(), c.end());
        out.largest_extension_ = std::max(out.largest_extension_, g - c.back());
    });
}

Load largest_extension_after(const FeasibleFront &front, Load y)
{
    if (y < 1 || y > front.largest_extension())
        throw std::invalid_argument("largest_extension_after: item " + std::to_string(y) + " does not fit");
    const std::size_t m = static_cast<std::size_t>(front.bins());
    const Load g = front.capacity();
    const Load cap = std::min<Load>(g, static_cast<Load>(m) * g - front.total() - y);
    Load best = 0;
    for (std::size_t k = 0; k < front.size() && best < cap; ++k) {
        auto b = front.member(k);
        const Load last = b[m - 1], second = b[m - 2];
        if (second + y <= g)
            best = std::max(best, g - last);
        else if (last + y <= g)
            best = std::max(best, g - std::min(last + y, second));
    }
    return best;
}

FeasibleFront extend_front(const FeasibleFront &front, Load y, const CountTable &table)
{
    if (y < 1 || y > front.largest_extension())
        throw std::invalid_argument("extend_front: item " + std::to_string(y) + " is not a legal extension (largest is " +
                                    std::to_string(front.largest_extension()) + ")");
    const Load total = front.total() + y;
    std::vector<bool> seen(static_cast<std::size_t>(table.sum_packings(total, front.capacity(), front.bins())), false);
    FeasibleFront out;
    out.reset(front.bins(), front.capacity(), total);
    std::vector<Load> tmp;
    for_each_placement(front, y, tmp, [&](std::span<const Load> c) {
        auto r = static_cast<std::size_t>(table.sum_rank(c, total));
        if (seen[r])
            return;
        seen[r] = true;
        out.loads_.insert(out.loads_.end(), c.begin(), c.end());
        out.largest_extension_ = std::max(out.largest_extension_, front.capacity() - c.back());
    });
    if (out.empty())
        throw std::logic_error("extend_front: empty result for a legal extension");
    return out;
}

FeasibleFront front_of(const Instance &instance, const CountTable &table)
{
    FeasibleFront f = empty_front(table.params());
    for (auto it = instance.items().rbegin(); it != instance.items().rend(); ++it) {
        if (*it > f.largest_extension())
            throw std::invalid_argument("instance does not fit " + std::to_string(table.params().m) +
                                        " bins of capacity " + std::to_string(table.params().g));
        f = extend_front(f, *it, table);
    }
    return f;
}

} // namespace binstretch
