#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "recset/common.hpp"

namespace recset {

/// Fixed-size bit array used as a membership structure over residues [0, n).
class Bitset {
 public:
  Bitset() : n_(0) {}
  explicit Bitset(uint64_t n) : n_(n), w_((n + 63) / 64, 0) {}

  uint64_t universe() const { return n_; }

  void set(uint64_t i) {
    detail::ensure(i < n_, "bit index out of range");
    w_[i >> 6] |= 1ull << (i & 63);
  }
  bool test(uint64_t i) const {
    detail::ensure(i < n_, "bit index out of range");
    return (w_[i >> 6] >> (i & 63)) & 1;
  }
  void clear() { std::fill(w_.begin(), w_.end(), 0); }

  uint64_t count() const {
    uint64_t c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
  }

  /// True when every member of this set is also a member of b.
  bool subset_of(const Bitset& b) const {
    detail::require(n_ == b.n_, "bitset universe mismatch");
    for (size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~b.w_[k]) return false;
    return true;
  }

  bool operator==(const Bitset&) const = default;

  std::vector<uint64_t> members() const {
    std::vector<uint64_t> out;
    out.reserve(count());
    for (uint64_t i = 0; i < n_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (size_t k = 0; k < w_.size(); ++k) {
      uint64_t w = w_[k];
      while (w) {
        int b = std::countr_zero(w);
        fn((uint64_t)k * 64 + b);
        w &= w - 1;
      }
    }
  }

 private:
  uint64_t n_;
  std::vector<uint64_t> w_;
};

}  // namespace recset
