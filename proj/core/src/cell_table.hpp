#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

namespace gdchfif::detail {

using CellKey = std::array<std::int64_t, 3>;

// Open-addressing map from integer cell coordinates to dense ids 0, 1, ...
// in insertion order.
class CellTable {
 public:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  explicit CellTable(std::size_t expected = 16) { reset(expected); }

  void reset(std::size_t expected) {
    std::size_t cap = 16;
    while (cap < 2 * expected) cap <<= 1;
    slots_.assign(cap, kNone);
    keys_.clear();
    keys_.reserve(expected);
    mask_ = cap - 1;
  }

  std::size_t size() const noexcept { return keys_.size(); }

  // Id of `key`, inserting it when absent; `inserted` reports which.
  std::uint32_t insert(const CellKey& key, bool& inserted) {
    if (2 * (keys_.size() + 1) > slots_.size()) grow();
    std::size_t i = hash(key) & mask_;
    while (slots_[i] != kNone) {
      if (keys_[slots_[i]] == key) {
        inserted = false;
        return slots_[i];
      }
      i = (i + 1) & mask_;
    }
    const auto id = static_cast<std::uint32_t>(keys_.size());
    slots_[i] = id;
    keys_.push_back(key);
    inserted = true;
    return id;
  }

  std::uint32_t find(const CellKey& key) const noexcept {
    std::size_t i = hash(key) & mask_;
    while (slots_[i] != kNone) {
      if (keys_[slots_[i]] == key) return slots_[i];
      i = (i + 1) & mask_;
    }
    return kNone;
  }

 private:
  static std::size_t hash(const CellKey& k) noexcept {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (std::int64_t v : k) {
      h ^= static_cast<std::uint64_t>(v);
      h ^= h >> 31;
      h *= 0xBF58476D1CE4E5B9ULL;
      h ^= h >> 29;
      h *= 0x94D049BB133111EBULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 32));
  }

  void grow() {
    std::vector<CellKey> keys = std::move(keys_);
    reset(keys.size() * 2);
    keys_ = std::move(keys);
    for (std::uint32_t id = 0; id < keys_.size(); ++id) {
      std::size_t i = hash(keys_[id]) & mask_;
      while (slots_[i] != kNone) i = (i + 1) & mask_;
      slots_[i] = id;
    }
  }

  std::vector<std::uint32_t> slots_;
  std::vector<CellKey> keys_;
  std::size_t mask_ = 0;
};

}  // namespace gdchfif::detail
