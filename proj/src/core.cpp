#include "binstretch/core.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace binstretch {

GameParams GameParams::make(int m, int g, int t)
{
    if (m < 2)
        throw std::invalid_argument("bin count must be at least 2, got " + std::to_string(m));
    if (g < 1)
        throw std::invalid_argument("granularity must be at least 1, got " + std::to_string(g));
    if (t <= g)
        throw std::invalid_argument("target " + std::to_string(t) + " must exceed granularity " +
                                    std::to_string(g));
    if (static_cast<long long>(m) * g > max_envelope)
        throw std::invalid_argument("m * g exceeds the supported envelope of " + std::to_string(max_envelope));
    return GameParams{m, g, t};
}

Packing::Packing(std::vector<Load> loads) : loads_(std::move(loads))
{
    if (std::any_of(loads_.begin(), loads_.end(), [](Load l) { return l < 0; }))
        throw std::invalid_argument("packing loads must be non-negative");
    std::sort(loads_.begin(), loads_.end(), std::greater<>{});
}

Load Packing::total() const
{
    return std::accumulate(loads_.begin(), loads_.end(), Load{0});
}

void place_sorted(std::span<Load> loads, int bin_index, Load y)
{
    auto i = static_cast<std::size_t>(bin_index);
    Load v = loads[i] + y;
    // Equal loads to the left stay put; the new load slides past strictly smaller ones.
    while (i > 0 && loads[i - 1] < v) {
        loads[i] = loads[i - 1];
        --i;
    }
    loads[i] = v;
}

Packing place(const Packing &p, int bin_index, Load y)
{
    std::vector<Load> loads(p.loads().begin(), p.loads().end());
    place_sorted(loads, bin_index, y);
    return Packing(std::move(loads));
}

Instance::Instance(std::vector<Load> items) : items_(std::move(items))
{
    if (std::any_of(items_.begin(), items_.end(), [](Load x) { return x < 1; }))
        throw std::invalid_argument("items must be strictly positive");
    std::sort(items_.begin(), items_.end(), std::greater<>{});
    total_ = std::accumulate(items_.begin(), items_.end(), Load{0});
}

Instance Instance::extended(Load y) const
{
    if (y < 1)
        throw std::invalid_argument("items must be strictly positive");
    Instance next;
    next.items_.reserve(items_.size() + 1);
    auto pos = std::upper_bound(items_.begin(), items_.end(), y, std::greater<>{});
    next.items_.insert(next.items_.end(), items_.begin(), pos);
    next.items_.push_back(y);
    next.items_.insert(next.items_.end(), pos, items_.end());
    next.total_ = total_ + y;
    return next;
}

namespace {

std::uint16_t narrow_word(long long v)
{
    if (v < 0 || v > 0xFFFF)
        throw std::invalid_argument("value " + std::to_string(v) + " does not fit a configuration key");
    return static_cast<std::uint16_t>(v);
}

} // namespace

ConfigKey canonical_key(const Configuration &c)
{
    if (c.packing.total() != c.instance.total())
        throw std::invalid_argument("configuration loads and items have different totals");
    ConfigKey key;
    key.words.reserve(2 + static_cast<std::size_t>(c.packing.size() + c.instance.size()));
    key.words.push_back(narrow_word(c.packing.size()));
    key.words.push_back(narrow_word(c.instance.size()));
    for (Load l : c.packing.loads())
        key.words.push_back(narrow_word(l));
    for (Load x : c.instance.items())
        key.words.push_back(narrow_word(x));
    return key;
}

std::uint64_t hash_words(std::span<const std::uint16_t> words)
{
    // splitmix64 finalizer folded over the words.
    std::uint64_t h = 0x9E3779B97F4A7C15ull ^ words.size();
    for (std::uint16_t w : words) {
        h ^= w;
        h *= 0xBF58476D1CE4E5B9ull;
        h ^= h >> 31;
    }
    h ^= h >> 30;
    h *= 0x94D049BB133111EBull;
    h ^= h >> 31;
    return h;
}

} // namespace binstretch
