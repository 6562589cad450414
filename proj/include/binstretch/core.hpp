#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace binstretch {

using Load = std::int32_t;

/// Largest m * g the solver accepts; keeps every load, item and total inside 16 bits.
inline constexpr int max_envelope = 10'000;

/// One game: m bins of capacity g, adversary tries to force a load of t.
/// A win proves the lower bound t/g on the optimal stretching factor.
struct GameParams
{
    int m = 0;
    int g = 0;
    int t = 0;

    /// Validates m >= 2, g >= 1, t > g and m * g <= max_envelope.
    /// Throws std::invalid_argument on violation.
    static GameParams make(int m, int g, int t);

    int capacity_total() const { return m * g; }
    std::string bound() const { return std::to_string(t) + "/" + std::to_string(g); }

    friend bool operator==(const GameParams &, const GameParams &) = default;
};

/// Bin loads, always sorted non-increasing.
class Packing
{
public:
    Packing() = default;
    /// Sorts `loads` non-increasing. Negative loads throw std::invalid_argument.
    explicit Packing(std::vector<Load> loads);

    static Packing zero(int m) { return Packing(std::vector<Load>(static_cast<std::size_t>(m), 0)); }

    std::span<const Load> loads() const { return loads_; }
    int size() const { return static_cast<int>(loads_.size()); }
    Load operator[](int i) const { return loads_[static_cast<std::size_t>(i)]; }
    Load largest() const { return loads_.front(); }
    Load smallest() const { return loads_.back(); }
    Load total() const;

    friend bool operator==(const Packing &, const Packing &) = default;
    friend auto operator<=>(const Packing &, const Packing &) = default;

private:
    std::vector<Load> loads_;
};

/// Returns `p` with item `y` added to bin `bin_index`, re-sorted.
Packing place(const Packing &p, int bin_index, Load y);

/// In-place variant on a raw sorted load vector: adds `y` to position `bin_index`
/// and bubbles it left so the vector stays non-increasing.
void place_sorted(std::span<Load> loads, int bin_index, Load y);

/// Multiset of items sent so far, kept sorted non-increasing.
class Instance
{
public:
    Instance() = default;
    explicit Instance(std::vector<Load> items);

    std::span<const Load> items() const { return items_; }
    int size() const { return static_cast<int>(items_.size()); }
    bool empty() const { return items_.empty(); }
    Load total() const { return total_; }

    /// I (+) y.
    Instance extended(Load y) const;

    friend bool operator==(const Instance &, const Instance &) = default;

private:
    std::vector<Load> items_;
    Load total_ = 0;
};

struct Configuration
{
    Instance instance;
    Packing packing;

    /// Empty instance and all-zero loads.
    static Configuration initial(int m) { return {Instance{}, Packing::zero(m)}; }

    friend bool operator==(const Configuration &, const Configuration &) = default;
};

/// Exact identity of a configuration: bin count, sorted loads and sorted items.
struct ConfigKey
{
    std::vector<std::uint16_t> words;

    friend bool operator==(const ConfigKey &, const ConfigKey &) = default;
};

/// Throws std::invalid_argument if packing and instance totals disagree or a value
/// does not fit the key encoding.
ConfigKey canonical_key(const Configuration &c);

/// 64-bit mixing hash over key words, shared by ConfigKey and the search memo.
std::uint64_t hash_words(std::span<const std::uint16_t> words);

} // namespace binstretch

template <>
struct std::hash<binstretch::ConfigKey>
{
    std::size_t operator()(const binstretch::ConfigKey &k) const noexcept
    {
        return static_cast<std::size_t>(binstretch::hash_words(k.words));
    }
};
