#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

namespace emt {

/// A subset of a frame of at most 64*Words states. Bit i is set iff state i is
/// a member. Bits at positions >= n (the frame size) are always zero.
template <std::size_t Words = 1>
class basic_subset {
  static_assert(Words >= 1);

 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t word_count = Words;
  static constexpr std::size_t capacity = 64 * Words;

  constexpr basic_subset() noexcept = default;

  static constexpr basic_subset from_word(word_type w) noexcept {
    basic_subset s;
    s.w_[0] = w;
    return s;
  }

  static constexpr basic_subset singleton(std::size_t i) noexcept {
    basic_subset s;
    s.set(i);
    return s;
  }

  /// The whole frame {0, ..., n-1}.
  static constexpr basic_subset full(std::size_t n) noexcept {
    basic_subset s;
    for (std::size_t k = 0; k < Words && n > 0; ++k) {
      if (n >= 64) {
        s.w_[k] = ~word_type{0};
        n -= 64;
      } else {
        s.w_[k] = (word_type{1} << n) - 1;
        n = 0;
      }
    }
    return s;
  }

  constexpr bool test(std::size_t i) const noexcept { return (w_[i / 64] >> (i % 64)) & 1U; }
  constexpr void set(std::size_t i) noexcept { w_[i / 64] |= word_type{1} << (i % 64); }
  constexpr void reset(std::size_t i) noexcept { w_[i / 64] &= ~(word_type{1} << (i % 64)); }

  constexpr std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  constexpr bool empty() const noexcept {
    for (auto w : w_)
      if (w != 0) return false;
    return true;
  }

  /// Index of the greatest member, or -1 for the empty set.
  constexpr int highest() const noexcept {
    for (std::size_t k = Words; k-- > 0;)
      if (w_[k] != 0) return static_cast<int>(64 * k + 63 - std::countl_zero(w_[k]));
    return -1;
  }

  /// Index of the smallest member, or -1 for the empty set.
  constexpr int lowest() const noexcept {
    for (std::size_t k = 0; k < Words; ++k)
      if (w_[k] != 0) return static_cast<int>(64 * k + std::countr_zero(w_[k]));
    return -1;
  }

  /// Tree depth: 1 + index of the greatest member; 0 for the empty set.
  constexpr std::size_t depth() const noexcept { return static_cast<std::size_t>(highest() + 1); }

  constexpr bool is_subset_of(const basic_subset& other) const noexcept {
    for (std::size_t k = 0; k < Words; ++k)
      if (w_[k] & ~other.w_[k]) return false;
    return true;
  }
  constexpr bool is_superset_of(const basic_subset& other) const noexcept {
    return other.is_subset_of(*this);
  }

  /// Members with index < d.
  constexpr basic_subset prefix(std::size_t d) const noexcept { return *this & full(d); }

  constexpr basic_subset& operator&=(const basic_subset& o) noexcept {
    for (std::size_t k = 0; k < Words; ++k) w_[k] &= o.w_[k];
    return *this;
  }
  constexpr basic_subset& operator|=(const basic_subset& o) noexcept {
    for (std::size_t k = 0; k < Words; ++k) w_[k] |= o.w_[k];
    return *this;
  }
  constexpr basic_subset& operator^=(const basic_subset& o) noexcept {
    for (std::size_t k = 0; k < Words; ++k) w_[k] ^= o.w_[k];
    return *this;
  }
  friend constexpr basic_subset operator&(basic_subset a, const basic_subset& b) noexcept { return a &= b; }
  friend constexpr basic_subset operator|(basic_subset a, const basic_subset& b) noexcept { return a |= b; }
  friend constexpr basic_subset operator^(basic_subset a, const basic_subset& b) noexcept { return a ^= b; }

  /// Complement within a frame of n states.
  constexpr basic_subset complement(std::size_t n) const noexcept { return *this ^ full(n); }

  friend constexpr bool operator==(const basic_subset&, const basic_subset&) noexcept = default;

  /// Numeric order of the bit word, most significant word first.
  friend constexpr std::strong_ordering operator<=>(const basic_subset& a, const basic_subset& b) noexcept {
    for (std::size_t k = Words; k-- > 0;)
      if (auto c = a.w_[k] <=> b.w_[k]; c != 0) return c;
    return std::strong_ordering::equal;
  }

  constexpr word_type word(std::size_t k) const noexcept { return w_[k]; }

  std::size_t hash() const noexcept {
    std::size_t h = 0;
    for (auto w : w_) h = h * 0x9E3779B97F4A7C15ULL ^ std::hash<word_type>{}(w);
    return h;
  }

  /// Binary string, member 0 first, length n.
  std::string to_bits(std::size_t n) const {
    std::string s(n, '0');
    for (std::size_t i = 0; i < n; ++i)
      if (test(i)) s[i] = '1';
    return s;
  }

  /// Calls f(i) for every member in ascending index order.
  template <class F>
  constexpr void for_each_member(F&& f) const {
    for (std::size_t k = 0; k < Words; ++k) {
      word_type w = w_[k];
      while (w != 0) {
        f(64 * k + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

 private:
  std::array<word_type, Words> w_{};
};

using subset = basic_subset<1>;

/// Cardinality first, then numeric value. The canonical order for output.
template <std::size_t W>
constexpr bool canonical_less(const basic_subset<W>& a, const basic_subset<W>& b) noexcept {
  const auto ca = a.count(), cb = b.count();
  return ca != cb ? ca < cb : a < b;
}

struct canonical_order {
  template <std::size_t W>
  constexpr bool operator()(const basic_subset<W>& a, const basic_subset<W>& b) const noexcept {
    return canonical_less(a, b);
  }
};

}  // namespace emt

template <std::size_t W>
struct std::hash<emt::basic_subset<W>> {
  std::size_t operator()(const emt::basic_subset<W>& s) const noexcept { return s.hash(); }
};
