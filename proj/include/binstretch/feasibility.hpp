#pragma once

#include "binstretch/combinatorics.hpp"
#include "binstretch/core.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace binstretch {

/// B_I: every sorted packing of the items sent so far into m bins of capacity g.
/// Members are stored densely, m loads per member.
class FeasibleFront
{
public:
    FeasibleFront() = default;

    int bins() const { return m_; }
    int capacity() const { return g_; }
    Load total() const { return total_; }
    std::size_t size() const { return m_ == 0 ? 0 : loads_.size() / static_cast<std::size_t>(m_); }
    bool empty() const { return loads_.empty(); }

    std::span<const Load> member(std::size_t i) const
    {
        return std::span<const Load>(loads_).subspan(i * static_cast<std::size_t>(m_), static_cast<std::size_t>(m_));
    }
    /// Members as packings, sorted lexicographically.
    std::vector<Packing> packings() const;

    /// max over members of g - b_m; 0 once every bin is full.
    Load largest_extension() const { return largest_extension_; }

private:
    friend FeasibleFront empty_front(const GameParams &params);
    friend class FrontExtender;
    friend FeasibleFront extend_front(const FeasibleFront &front, Load y, const CountTable &table);

    void reset(int m, int g, Load total)
    {
        m_ = m;
        g_ = g;
        total_ = total;
        loads_.clear();
        largest_extension_ = 0;
    }

    int m_ = 0;
    int g_ = 0;
    Load total_ = 0;
    Load largest_extension_ = 0;
    std::vector<Load> loads_;
};

/// {(0, ..., 0)}.
FeasibleFront empty_front(const GameParams &params);

/// Largest item that may legally follow the instance behind `front`.
inline Load largest_extension(const FeasibleFront &front) { return front.largest_extension(); }

/// One dynamic-programming step, reusing a single dedup table across calls.
/// Duplicates are detected through sum_rank against a generation-stamped table
/// sized for the largest N_{S,g,m}, so nothing is cleared between calls.
class FrontExtender
{
public:
    explicit FrontExtender(const CountTable &table);

    /// out = B_{I (+) y}. `out` may not alias `in`.
    void extend(const FeasibleFront &in, Load y, FeasibleFront &out);

private:
    const CountTable *table_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t generation_ = 0;
    std::vector<Load> tmp_;
};

/// Pure form: B_{I (+) y} from B_I, deduplicated against a fresh table of size N_{total+y,g,m}.
/// Throws std::invalid_argument unless 1 <= y <= largest_extension(front).
FeasibleFront extend_front(const FeasibleFront &front, Load y, const CountTable &table);

/// largest_extension(extend_front(front, y, table)) without building the front.
/// Throws std::invalid_argument unless 1 <= y <= largest_extension(front).
Load largest_extension_after(const FeasibleFront &front, Load y);

/// Builds B_I by feeding the items of `instance` one by one from the empty front.
/// Throws std::invalid_argument if the items do not fit m bins of capacity g.
FeasibleFront front_of(const Instance &instance, const CountTable &table);

} // namespace binstretch
