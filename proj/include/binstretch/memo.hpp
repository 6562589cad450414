#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace binstretch {

/// Grow-only map from exact configuration keys (runs of 16-bit words) to a 16-bit value.
/// Open addressing over 12-byte slots at load factor <= 3/4; key words live in fixed-size
/// arena chunks, so an entry costs its slot share plus 2 bytes per key word and growth never
/// copies keys. Equality is exact, the hash only narrows the probe.
class MemoTable
{
public:
    /// `byte_cap` of 0 means unbounded. Every `hash` argument must be hash_words(key).
    explicit MemoTable(std::size_t byte_cap = 0);

    std::optional<std::uint16_t> find(std::span<const std::uint16_t> key, std::uint64_t hash) const;

    /// Inserts or overwrites. Returns false, without inserting, when the entry would push
    /// the table over its byte cap.
    bool insert(std::span<const std::uint16_t> key, std::uint64_t hash, std::uint16_t value);

    std::size_t size() const { return size_; }
    std::size_t bytes() const { return slots_.size() * sizeof(Slot) + chunks_.size() * chunk_words * sizeof(std::uint16_t); }
    void clear();

private:
    static constexpr std::size_t chunk_shift = 21;
    static constexpr std::size_t chunk_words = std::size_t{1} << chunk_shift;

    struct Slot
    {
        std::uint32_t tag = 0;    // high hash bits
        std::uint32_t offset = 0; // chunk index << chunk_shift | word position
        std::uint16_t length = 0; // 0 marks an empty slot
        std::uint16_t value = 0;
    };
    static_assert(sizeof(Slot) == 12);

    const std::uint16_t *words(const Slot &s) const
    {
        return chunks_[s.offset >> chunk_shift].get() + (s.offset & (chunk_words - 1));
    }

    std::size_t probe(std::span<const std::uint16_t> key, std::uint64_t hash) const;
    bool matches(const Slot &s, std::span<const std::uint16_t> key, std::uint64_t hash) const;
    bool grow();

    std::size_t cap_;
    std::size_t size_ = 0;
    std::vector<Slot> slots_;
    std::vector<std::unique_ptr<std::uint16_t[]>> chunks_;
    std::size_t used_ = chunk_words; // words used in the last chunk; full forces a new chunk
};

} // namespace binstretch
