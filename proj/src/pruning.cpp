#include "binstretch/pruning.hpp"

#include <algorithm>
#include <limits>

namespace binstretch {

bool is_base_alg_winning(std::span<const Load> loads, const GameParams &params)
{
    const auto m = static_cast<long long>(params.m);
    const long long second_smallest = loads[loads.size() - 2];
    return (m - 1) * second_smallest > m * params.g - params.t;
}

namespace {

void packings_rec(std::vector<Load> &buf, std::size_t pos, Load cap, Load rest,
                  const std::function<void(std::span<const Load>)> &fn)
{
    const std::size_t n = buf.size();
    if (pos + 1 == n) {
        if (rest <= cap) {
            buf[pos] = rest;
            fn(buf);
        }
        return;
    }
    const auto slots = static_cast<long long>(n - pos);
    // Smallest feasible head: the rest has to fit in `slots` coordinates no larger than the head.
    const Load lo = static_cast<Load>((rest + slots - 1) / slots);
    for (Load v = lo; v <= std::min(cap, rest); ++v) {
        buf[pos] = v;
        packings_rec(buf, pos + 1, v, rest - v, fn);
    }
}

} // namespace

void for_each_packing_with_sum(int n, Load cap, Load total, const std::function<void(std::span<const Load>)> &fn)
{
    if (n < 1 || total < 0 || cap < 0)
        return;
    std::vector<Load> buf(static_cast<std::size_t>(n), 0);
    packings_rec(buf, 0, cap, total, fn);
}

VTable compute_v_table(std::shared_ptr<const CountTable> counts)
{
    const GameParams p = counts->params();
    const int m = p.m, g = p.g, t = p.t;
    const int alg_wins = g + 1;

    VTable vt;
    vt.params_ = p;
    vt.counts_ = counts;
    vt.wide_ = alg_wins >= 256;
    const auto n = static_cast<std::size_t>(counts->rank_space());
    // Unreachable packings (sum above m*g) keep the fail-safe value g+1.
    if (vt.wide_)
        vt.values16_.assign(n, static_cast<std::uint16_t>(alg_wins));
    else
        vt.values8_.assign(n, static_cast<std::uint8_t>(alg_wins));

    const Load top = std::min(m * g, m * (t - 1));
    std::vector<Load> child(static_cast<std::size_t>(m));
    for (Load level = top; level >= 0; --level) {
        for_each_packing_with_sum(m, t - 1, level, [&](std::span<const Load> b) {
            const auto r = counts->pack_rank(b);
            if (level == m * g || is_base_alg_winning(b, p)) {
                vt.set(r, alg_wins);
                return;
            }
            const int s_max = std::min(g, m * g - level);
            int best = std::numeric_limits<int>::max();
            for (int s = 1; s <= s_max && s < best; ++s) {
                int worst = s;
                Load prev = -1;
                for (int i = 0; i < m && worst < best; ++i) {
                    if (b[static_cast<std::size_t>(i)] == prev)
                        continue;
                    prev = b[static_cast<std::size_t>(i)];
                    std::copy(b.begin(), b.end(), child.begin());
                    place_sorted(child, i, s);
                    worst = std::max(worst, vt.value(child));
                }
                best = std::min(best, worst);
            }
            vt.set(r, best);
        });
    }

    auto &st = vt.stats_;
    st.entries = n;
    st.histogram.assign(static_cast<std::size_t>(alg_wins) + 1, 0);
    for (std::size_t r = 0; r < n; ++r) {
        const int v = vt.at_rank(r);
        ++st.histogram[static_cast<std::size_t>(v)];
        if (v == alg_wins)
            ++st.algorithm_winning;
        else if (v == 0)
            ++st.zero;
        else
            ++st.intermediate;
    }
    return vt;
}

std::uint64_t VTable::checksum() const
{
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t r = 0; r < size(); ++r) {
        h ^= static_cast<std::uint64_t>(at_rank(r));
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace binstretch
