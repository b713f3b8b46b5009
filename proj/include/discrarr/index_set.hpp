#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace discrarr {

/// A subset of the ground set [n] = {1, ..., n}, n <= 64. Indices are 1-based.
class IndexSet {
 public:
  static constexpr int kMaxIndex = 64;

  constexpr IndexSet() = default;
  IndexSet(std::initializer_list<int> indices) {
    for (int i : indices) insert(i);
  }
  static IndexSet from_indices(const std::vector<int>& indices) {
    IndexSet s;
    for (int i : indices) s.insert(i);
    return s;
  }
  static constexpr IndexSet from_bits(std::uint64_t bits) {
    IndexSet s;
    s.bits_ = bits;
    return s;
  }
  /// {1, ..., n}
  static IndexSet range(int n) {
    check(n == 0 ? 1 : n);
    return from_bits(n == 64 ? ~0ULL : ((1ULL << n) - 1));
  }

  void insert(int i) {
    check(i);
    bits_ |= 1ULL << (i - 1);
  }
  void erase(int i) {
    check(i);
    bits_ &= ~(1ULL << (i - 1));
  }
  bool contains(int i) const { return i >= 1 && i <= kMaxIndex && ((bits_ >> (i - 1)) & 1ULL); }

  int size() const { return std::popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  std::uint64_t bits() const { return bits_; }
  /// Largest element, 0 when empty.
  int max() const { return bits_ == 0 ? 0 : 64 - std::countl_zero(bits_); }
  int min() const { return bits_ == 0 ? 0 : std::countr_zero(bits_) + 1; }

  std::vector<int> indices() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
    return out;
  }

  bool is_subset_of(const IndexSet& other) const { return (bits_ & ~other.bits_) == 0; }

  IndexSet operator|(const IndexSet& o) const { return from_bits(bits_ | o.bits_); }
  IndexSet operator&(const IndexSet& o) const { return from_bits(bits_ & o.bits_); }
  IndexSet without(const IndexSet& o) const { return from_bits(bits_ & ~o.bits_); }

  bool operator==(const IndexSet&) const = default;

  /// Canonical member order: by size, then lexicographically on the sorted index lists.
  friend bool canonical_less(const IndexSet& a, const IndexSet& b) {
    const int sa = a.size();
    const int sb = b.size();
    if (sa != sb) return sa < sb;
    // Same size: the first differing index decides; the set holding the
    // smaller index at that position is lexicographically smaller.
    std::uint64_t x = a.bits_;
    std::uint64_t y = b.bits_;
    while (x && y) {
      const int ix = std::countr_zero(x);
      const int iy = std::countr_zero(y);
      if (ix != iy) return ix < iy;
      x &= x - 1;
      y &= y - 1;
    }
    return false;
  }

  /// Digits when every index is below 10 ("123"), otherwise "[1 2 13]".
  std::string to_string(bool bracketed) const {
    std::string out = bracketed ? "[" : "";
    bool first = true;
    for (int i : indices()) {
      if (bracketed && !first) out += ' ';
      out += std::to_string(i);
      first = false;
    }
    if (bracketed) out += ']';
    return out;
  }

 private:
  static void check(int i) {
    if (i < 1 || i > kMaxIndex) throw std::out_of_range("index " + std::to_string(i) + " outside [1, 64]");
  }

  std::uint64_t bits_ = 0;
};

struct IndexSetHash {
  std::size_t operator()(const IndexSet& s) const { return std::hash<std::uint64_t>{}(s.bits()); }
};

/// Calls fn(IndexSet) for every subset of {1..n} with exactly `size` elements, in
/// increasing bit order. n < 64.
template <class Fn>
void for_each_subset_of_size(int n, int size, Fn&& fn) {
  if (n >= 64) throw std::out_of_range("subset enumeration supports n < 64");
  if (size < 0 || size > n) return;
  if (size == 0) {
    fn(IndexSet{});
    return;
  }
  const std::uint64_t limit = 1ULL << n;
  std::uint64_t v = (1ULL << size) - 1;
  while (v < limit) {
    fn(IndexSet::from_bits(v));
    // Gosper's hack: next larger integer with the same popcount.
    const std::uint64_t c = v & (~v + 1);
    const std::uint64_t r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }
}

}  // namespace discrarr
