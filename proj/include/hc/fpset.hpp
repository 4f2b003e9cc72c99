#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "hc/error.hpp"
#include "hc/kernels.hpp"

namespace hc {

// Dense subset of Z_p: one membership bit per residue, cardinality cached.
// Words above bit p-1 are kept zero so word-level comparisons are exact.
class FpSet {
 public:
  FpSet() = default;
  explicit FpSet(std::uint32_t p) : p_(p), words_((p + 63) / 64, 0) {}

  FpSet(std::uint32_t p, std::initializer_list<std::uint32_t> xs) : FpSet(p) {
    for (auto x : xs) insert(x);
  }

  static FpSet all(std::uint32_t p) {
    FpSet s(p);
    for (auto& w : s.words_) w = ~0ull;
    s.mask_tail();
    s.card_ = p;
    return s;
  }

  static FpSet from_elements(std::uint32_t p, std::span<const std::uint32_t> xs) {
    FpSet s(p);
    for (auto x : xs) s.insert(x);
    return s;
  }

  std::uint32_t modulus() const { return p_; }
  std::uint32_t card() const { return card_; }
  bool empty() const { return card_ == 0; }

  bool contains(std::uint32_t x) const {
    return x < p_ && (words_[x / 64] >> (x % 64)) & 1u;
  }

  void insert(std::uint32_t x) {
    check_residue(x);
    std::uint64_t& w = words_[x / 64];
    const std::uint64_t bit = 1ull << (x % 64);
    card_ += !(w & bit);
    w |= bit;
  }

  void erase(std::uint32_t x) {
    check_residue(x);
    std::uint64_t& w = words_[x / 64];
    const std::uint64_t bit = 1ull << (x % 64);
    card_ -= !!(w & bit);
    w &= ~bit;
  }

  std::vector<std::uint32_t> elements() const {
    std::vector<std::uint32_t> out;
    out.reserve(card_);
    for_each([&](std::uint32_t x) { out.push_back(x); });
    return out;
  }

  // Visits members in ascending order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = __builtin_ctzll(bits);
        fn(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  // {x + shift mod p : x in this}
  FpSet rotated(std::uint32_t shift) const {
    if (p_ == 0) throw RangeError("set has no modulus");
    FpSet out(p_);
    kern::rotate_or(out.words_.data(), words_.data(), shift % p_, p_);
    out.card_ = card_;
    return out;
  }

  FpSet complemented() const {
    FpSet out(p_);
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
    out.mask_tail();
    out.card_ = p_ - card_;
    return out;
  }

  bool intersects(const FpSet& o) const {
    check_same(o);
    return kern::intersects(words_.data(), o.words_.data(), words_.size());
  }

  FpSet& operator|=(const FpSet& o) {
    check_same(o);
    kern::bit_or(words_.data(), words_.data(), o.words_.data(), words_.size());
    recount();
    return *this;
  }

  FpSet& operator&=(const FpSet& o) {
    check_same(o);
    kern::bit_and(words_.data(), words_.data(), o.words_.data(), words_.size());
    recount();
    return *this;
  }

  // set difference
  FpSet& operator-=(const FpSet& o) {
    check_same(o);
    kern::bit_andnot(words_.data(), words_.data(), o.words_.data(), words_.size());
    recount();
    return *this;
  }

  friend FpSet operator|(FpSet a, const FpSet& b) { return a |= b; }
  friend FpSet operator&(FpSet a, const FpSet& b) { return a &= b; }
  friend FpSet operator-(FpSet a, const FpSet& b) { return a -= b; }

  friend bool operator==(const FpSet& a, const FpSet& b) {
    return a.p_ == b.p_ && a.words_ == b.words_;
  }
  friend bool operator!=(const FpSet& a, const FpSet& b) { return !(a == b); }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> mutable_words() { return words_; }

  void recount() { card_ = static_cast<std::uint32_t>(kern::popcount(words_.data(), words_.size())); }

 private:
  void check_residue(std::uint32_t x) const {
    if (x >= p_) throw RangeError("residue out of range");
  }
  void check_same(const FpSet& o) const {
    if (p_ != o.p_) throw ModulusMismatch("sets over different moduli");
  }
  void mask_tail() {
    const std::uint32_t tail = p_ % 64;
    if (tail) words_.back() &= ~0ull >> (64 - tail);
  }

  std::uint32_t p_ = 0;
  std::vector<std::uint64_t> words_;
  std::uint32_t card_ = 0;
};

}  // namespace hc
