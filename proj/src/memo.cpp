#include "binstretch/memo.hpp"

#include "binstretch/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace binstretch {

namespace {
constexpr std::size_t initial_slots = 1 << 12;

std::uint32_t tag_of(std::uint64_t hash) { return static_cast<std::uint32_t>(hash >> 32); }
} // namespace

MemoTable::MemoTable(std::size_t byte_cap) : cap_(byte_cap), slots_(initial_slots) {}

void MemoTable::clear()
{
    size_ = 0;
    slots_.assign(initial_slots, Slot{});
    slots_.shrink_to_fit();
    chunks_.clear();
    used_ = chunk_words;
}

bool MemoTable::matches(const Slot &s, std::span<const std::uint16_t> key, std::uint64_t hash) const
{
    return s.tag == tag_of(hash) && s.length == key.size() && std::equal(key.begin(), key.end(), words(s));
}

std::size_t MemoTable::probe(std::span<const std::uint16_t> key, std::uint64_t hash) const
{
    const std::size_t mask = slots_.size() - 1;
    std::size_t i = static_cast<std::size_t>(hash) & mask;
    while (slots_[i].length != 0 && !matches(slots_[i], key, hash))
        i = (i + 1) & mask;
    return i;
}

std::optional<std::uint16_t> MemoTable::find(std::span<const std::uint16_t> key, std::uint64_t hash) const
{
    const Slot &s = slots_[probe(key, hash)];
    if (s.length == 0)
        return std::nullopt;
    return s.value;
}

bool MemoTable::grow()
{
    const std::size_t next = slots_.size() * 2;
    if (cap_ != 0 && bytes() + slots_.size() * sizeof(Slot) > cap_)
        return false;
    std::vector<Slot> old(next);
    old.swap(slots_);
    const std::size_t mask = slots_.size() - 1;
    for (const Slot &s : old) {
        if (s.length == 0)
            continue;
        // Slots do not keep the low hash bits; rehash the stored key.
        std::size_t i = static_cast<std::size_t>(hash_words({words(s), s.length})) & mask;
        while (slots_[i].length != 0)
            i = (i + 1) & mask;
        slots_[i] = s;
    }
    return true;
}

bool MemoTable::insert(std::span<const std::uint16_t> key, std::uint64_t hash, std::uint16_t value)
{
    if (key.empty() || key.size() > 0xFFFF)
        throw std::invalid_argument("memo keys must hold 1..65535 words");
    std::size_t i = probe(key, hash);
    if (slots_[i].length != 0) {
        slots_[i].value = value;
        return true;
    }
    if (4 * (size_ + 1) > 3 * slots_.size()) {
        if (!grow())
            return false;
        i = probe(key, hash);
    }
    if (used_ + key.size() > chunk_words) {
        if (cap_ != 0 && bytes() + chunk_words * sizeof(std::uint16_t) > cap_)
            return false;
        if ((chunks_.size() + 1) << chunk_shift > 0xFFFFFFFFull)
            return false;
        chunks_.push_back(std::make_unique_for_overwrite<std::uint16_t[]>(chunk_words));
        used_ = 0;
    }
    Slot &s = slots_[i];
    s.tag = tag_of(hash);
    s.offset = static_cast<std::uint32_t>(((chunks_.size() - 1) << chunk_shift) | used_);
    s.length = static_cast<std::uint16_t>(key.size());
    s.value = value;
    std::copy(key.begin(), key.end(), chunks_.back().get() + used_);
    used_ += key.size();
    ++size_;
    return true;
}

} // namespace binstretch
