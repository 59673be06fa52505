#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "convex1d/errors.hpp"

namespace convex1d {

/// Fixed-length binary word, used both as a codeword (a sensor matrix column)
/// and as a discrete interval (a row).
///
/// Position 0 is the first character of the string form, so "1100" has
/// positions 0 and 1 set. Words compare first by length and then
/// colexicographically: a word is read as the unsigned integer
/// sum(2^i for set positions i). This is the column label order used for
/// canonical orderings.
class BitVector {
 public:
  using Block = std::uint64_t;
  static constexpr std::size_t kBlockBits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t len) : len_(len), blocks_(block_count(len), 0) {}

  /// Parses a string of '0'/'1' characters.
  static BitVector from_string(std::string_view s) {
    BitVector v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        v.set(i);
      } else if (s[i] != '0') {
        throw PreconditionError("invalid bit character '" + std::string(1, s[i]) + "'");
      }
    }
    return v;
  }

  static BitVector ones(std::size_t len) {
    BitVector v(len);
    std::fill(v.blocks_.begin(), v.blocks_.end(), ~Block{0});
    v.trim();
    return v;
  }

  std::size_t size() const noexcept { return len_; }

  bool test(std::size_t i) const noexcept {
    return (blocks_[i / kBlockBits] >> (i % kBlockBits)) & 1U;
  }

  void set(std::size_t i, bool value = true) noexcept {
    const Block mask = Block{1} << (i % kBlockBits);
    if (value) {
      blocks_[i / kBlockBits] |= mask;
    } else {
      blocks_[i / kBlockBits] &= ~mask;
    }
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (Block b : blocks_) c += static_cast<std::size_t>(std::popcount(b));
    return c;
  }

  bool none() const noexcept {
    return std::all_of(blocks_.begin(), blocks_.end(), [](Block b) { return b == 0; });
  }

  bool all() const noexcept { return count() == len_; }

  /// Index of the first set position at or after `from`, or size() if none.
  std::size_t next_set(std::size_t from) const noexcept {
    if (from >= len_) return len_;
    std::size_t bi = from / kBlockBits;
    Block b = blocks_[bi] & (~Block{0} << (from % kBlockBits));
    while (true) {
      if (b != 0) {
        return bi * kBlockBits + static_cast<std::size_t>(std::countr_zero(b));
      }
      if (++bi == blocks_.size()) return len_;
      b = blocks_[bi];
    }
  }

  /// Positions of all set bits, ascending.
  std::vector<std::size_t> set_positions() const {
    std::vector<std::size_t> out;
    for (std::size_t i = next_set(0); i < len_; i = next_set(i + 1)) out.push_back(i);
    return out;
  }

  std::string to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
      if (test(i)) s[i] = '1';
    }
    return s;
  }

  BitVector operator&(const BitVector& o) const {
    require_same_length(o);
    BitVector r = *this;
    for (std::size_t i = 0; i < blocks_.size(); ++i) r.blocks_[i] &= o.blocks_[i];
    return r;
  }

  BitVector operator|(const BitVector& o) const {
    require_same_length(o);
    BitVector r = *this;
    for (std::size_t i = 0; i < blocks_.size(); ++i) r.blocks_[i] |= o.blocks_[i];
    return r;
  }

  BitVector operator^(const BitVector& o) const {
    require_same_length(o);
    BitVector r = *this;
    for (std::size_t i = 0; i < blocks_.size(); ++i) r.blocks_[i] ^= o.blocks_[i];
    return r;
  }

  BitVector operator~() const {
    BitVector r = *this;
    for (Block& b : r.blocks_) b = ~b;
    r.trim();
    return r;
  }

  /// Positionwise <=.
  bool is_subset_of(const BitVector& o) const {
    require_same_length(o);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if ((blocks_[i] & ~o.blocks_[i]) != 0) return false;
    }
    return true;
  }

  /// True iff some position has this=1 and o=0.
  bool has_bit_outside(const BitVector& o) const { return !is_subset_of(o); }

  std::span<const Block> blocks() const noexcept { return blocks_; }

  friend bool operator==(const BitVector& a, const BitVector& b) noexcept {
    return a.len_ == b.len_ && a.blocks_ == b.blocks_;
  }

  friend std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) noexcept {
    if (auto c = a.len_ <=> b.len_; c != 0) return c;
    for (std::size_t i = a.blocks_.size(); i-- > 0;) {
      if (auto c = a.blocks_[i] <=> b.blocks_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

  std::size_t hash() const noexcept {
    std::size_t h = std::hash<std::size_t>{}(len_);
    for (Block b : blocks_) h ^= std::hash<Block>{}(b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  static std::size_t block_count(std::size_t len) { return (len + kBlockBits - 1) / kBlockBits; }

  void trim() noexcept {
    if (len_ % kBlockBits != 0 && !blocks_.empty()) {
      blocks_.back() &= (Block{1} << (len_ % kBlockBits)) - 1;
    }
  }

  void require_same_length(const BitVector& o) const {
    if (len_ != o.len_) {
      throw LengthMismatch("bit vectors of length " + std::to_string(len_) + " and " +
                           std::to_string(o.len_));
    }
  }

  std::size_t len_ = 0;
  std::vector<Block> blocks_;
};

inline BitVector operator""_bv(const char* s, std::size_t n) {
  return BitVector::from_string(std::string_view(s, n));
}

}  // namespace convex1d

template <>
struct std::hash<convex1d::BitVector> {
  std::size_t operator()(const convex1d::BitVector& v) const noexcept { return v.hash(); }
};
