#pragma once

#include <cstdint>
#include <vector>

namespace klean {

// Fixed-width dynamic bitset sized at construction. The graph algorithms lean on
// word-parallel neighborhood operations, so this stays deliberately small and inline.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

  int size() const { return nbits_; }

  void set(int i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  void clear() {
    for (auto& x : w_) x = 0;
  }

  int count() const {
    int c = 0;
    for (uint64_t x : w_) c += __builtin_popcountll(x);
    return c;
  }

  bool any() const {
    for (uint64_t x : w_)
      if (x) return true;
    return false;
  }

  bool none() const { return !any(); }

  Bitset& operator|=(const Bitset& o) {
    for (size_t i = 0; i < w_.size(); i++) w_[i] |= o.w_[i];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    for (size_t i = 0; i < w_.size(); i++) w_[i] &= o.w_[i];
    return *this;
  }
  // this &= ~o
  Bitset& subtract(const Bitset& o) {
    for (size_t i = 0; i < w_.size(); i++) w_[i] &= ~o.w_[i];
    return *this;
  }

  int and_count(const Bitset& o) const {
    int c = 0;
    for (size_t i = 0; i < w_.size(); i++) c += __builtin_popcountll(w_[i] & o.w_[i]);
    return c;
  }

  bool intersects(const Bitset& o) const {
    for (size_t i = 0; i < w_.size(); i++)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  // First set bit, or -1 when empty.
  int first() const {
    for (size_t i = 0; i < w_.size(); i++)
      if (w_[i]) return int(i * 64) + __builtin_ctzll(w_[i]);
    return -1;
  }

  // First set bit >= i, or -1.
  int next(int i) const {
    if (i >= nbits_) return -1;
    size_t wi = size_t(i) >> 6;
    uint64_t cur = w_[wi] >> (i & 63);
    if (cur) return i + __builtin_ctzll(cur);
    for (wi++; wi < w_.size(); wi++)
      if (w_[wi]) return int(wi * 64) + __builtin_ctzll(w_[wi]);
    return -1;
  }

  bool operator==(const Bitset& o) const { return nbits_ == o.nbits_ && w_ == o.w_; }

  const std::vector<uint64_t>& words() const { return w_; }

 private:
  int nbits_ = 0;
  std::vector<uint64_t> w_;
};

}  // namespace klean
