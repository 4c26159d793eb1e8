#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aitlab {

// Arbitrary-precision natural number. Only the handful of operations the
// exact dyadic/rational arithmetic needs: add, subtract, multiply, shifts,
// comparison, binary gcd, and small-word division for decimal printing.
class BigNat {
 public:
  BigNat() = default;
  explicit BigNat(uint64_t v) {
    if (v != 0) {
      limbs_.push_back(static_cast<uint32_t>(v & 0xffffffffu));
      if (v >> 32) limbs_.push_back(static_cast<uint32_t>(v >> 32));
    }
  }

  static std::optional<BigNat> from_decimal(std::string_view s) {
    if (s.empty()) return std::nullopt;
    BigNat r;
    for (char c : s) {
      if (c < '0' || c > '9') return std::nullopt;
      r.mul_small(10);
      r.add_small(static_cast<uint32_t>(c - '0'));
    }
    return r;
  }

  bool is_zero() const { return limbs_.empty(); }
  bool is_even() const { return limbs_.empty() || (limbs_[0] & 1u) == 0; }

  bool is_power_of_two() const {
    if (limbs_.empty()) return false;
    for (size_t i = 0; i + 1 < limbs_.size(); ++i) {
      if (limbs_[i] != 0) return false;
    }
    uint32_t top = limbs_.back();
    return (top & (top - 1)) == 0;
  }

  size_t bit_length() const {
    if (limbs_.empty()) return 0;
    uint32_t top = limbs_.back();
    size_t n = 0;
    while (top) {
      ++n;
      top >>= 1;
    }
    return (limbs_.size() - 1) * 32 + n;
  }

  bool bit(size_t i) const {
    size_t w = i / 32;
    if (w >= limbs_.size()) return false;
    return (limbs_[w] >> (i % 32)) & 1u;
  }

  size_t trailing_zeros() const {  // pre: !is_zero()
    size_t i = 0;
    while (limbs_[i] == 0) ++i;
    uint32_t w = limbs_[i];
    size_t n = 0;
    while ((w & 1u) == 0) {
      ++n;
      w >>= 1;
    }
    return i * 32 + n;
  }

  int compare(const BigNat& o) const {
    if (limbs_.size() != o.limbs_.size())
      return limbs_.size() < o.limbs_.size() ? -1 : 1;
    for (size_t i = limbs_.size(); i-- > 0;) {
      if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
    }
    return 0;
  }

  bool operator==(const BigNat& o) const { return compare(o) == 0; }
  bool operator!=(const BigNat& o) const { return compare(o) != 0; }
  bool operator<(const BigNat& o) const { return compare(o) < 0; }
  bool operator<=(const BigNat& o) const { return compare(o) <= 0; }
  bool operator>(const BigNat& o) const { return compare(o) > 0; }
  bool operator>=(const BigNat& o) const { return compare(o) >= 0; }

  BigNat& operator+=(const BigNat& o) {
    limbs_.resize(std::max(limbs_.size(), o.limbs_.size()), 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
      uint64_t sum = carry + limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0);
      limbs_[i] = static_cast<uint32_t>(sum);
      carry = sum >> 32;
    }
    if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
    return *this;
  }
  BigNat operator+(const BigNat& o) const {
    BigNat r = *this;
    r += o;
    return r;
  }

  // pre: *this >= o
  BigNat& operator-=(const BigNat& o) {
    int64_t borrow = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
      int64_t d = static_cast<int64_t>(limbs_[i]) - borrow -
                  (i < o.limbs_.size() ? o.limbs_[i] : 0);
      borrow = d < 0 ? 1 : 0;
      if (d < 0) d += (int64_t(1) << 32);
      limbs_[i] = static_cast<uint32_t>(d);
    }
    trim();
    return *this;
  }
  BigNat operator-(const BigNat& o) const {
    BigNat r = *this;
    r -= o;
    return r;
  }

  BigNat operator*(const BigNat& o) const {
    if (is_zero() || o.is_zero()) return BigNat();
    BigNat r;
    r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
    for (size_t i = 0; i < limbs_.size(); ++i) {
      uint64_t carry = 0;
      for (size_t j = 0; j < o.limbs_.size(); ++j) {
        uint64_t cur = r.limbs_[i + j] +
                       static_cast<uint64_t>(limbs_[i]) * o.limbs_[j] + carry;
        r.limbs_[i + j] = static_cast<uint32_t>(cur);
        carry = cur >> 32;
      }
      r.limbs_[i + o.limbs_.size()] += static_cast<uint32_t>(carry);
    }
    r.trim();
    return r;
  }

  BigNat& shl(size_t bits) {
    if (is_zero() || bits == 0) return *this;
    size_t words = bits / 32, rem = bits % 32;
    limbs_.insert(limbs_.begin(), words, 0);
    if (rem) {
      uint32_t carry = 0;
      for (size_t i = words; i < limbs_.size(); ++i) {
        uint32_t nxt = limbs_[i] >> (32 - rem);
        limbs_[i] = (limbs_[i] << rem) | carry;
        carry = nxt;
      }
      if (carry) limbs_.push_back(carry);
    }
    return *this;
  }

  BigNat& shr(size_t bits) {
    size_t words = bits / 32, rem = bits % 32;
    if (words >= limbs_.size()) {
      limbs_.clear();
      return *this;
    }
    limbs_.erase(limbs_.begin(), limbs_.begin() + static_cast<long>(words));
    if (rem) {
      for (size_t i = 0; i < limbs_.size(); ++i) {
        uint32_t hi = (i + 1 < limbs_.size()) ? limbs_[i + 1] << (32 - rem) : 0;
        limbs_[i] = (limbs_[i] >> rem) | hi;
      }
    }
    trim();
    return *this;
  }

  BigNat shifted_left(size_t bits) const {
    BigNat r = *this;
    r.shl(bits);
    return r;
  }

  // In-place divide by a small word, returns the remainder.
  uint32_t divmod_small(uint32_t d) {
    uint64_t rem = 0;
    for (size_t i = limbs_.size(); i-- > 0;) {
      uint64_t cur = (rem << 32) | limbs_[i];
      limbs_[i] = static_cast<uint32_t>(cur / d);
      rem = cur % d;
    }
    trim();
    return static_cast<uint32_t>(rem);
  }

  static BigNat gcd(BigNat a, BigNat b) {  // Stein's algorithm
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    size_t az = a.trailing_zeros(), bz = b.trailing_zeros();
    size_t common = std::min(az, bz);
    a.shr(az);
    b.shr(bz);
    while (true) {
      if (a > b) std::swap(a, b);
      b -= a;  // b >= a, both odd -> b becomes even
      if (b.is_zero()) break;
      b.shr(b.trailing_zeros());
    }
    return a.shl(common);
  }

  std::optional<uint64_t> to_u64() const {
    if (limbs_.size() > 2) return std::nullopt;
    uint64_t v = 0;
    if (limbs_.size() > 1) v = static_cast<uint64_t>(limbs_[1]) << 32;
    if (!limbs_.empty()) v |= limbs_[0];
    return v;
  }

  std::string to_decimal() const {
    if (is_zero()) return "0";
    BigNat t = *this;
    std::string out;
    while (!t.is_zero()) {
      uint32_t chunk = t.divmod_small(1000000000u);
      std::string part = std::to_string(chunk);
      if (!t.is_zero()) part.insert(0, 9 - part.size(), '0');
      out.insert(0, part);
    }
    return out;
  }

 private:
  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }
  void mul_small(uint32_t f) {
    uint64_t carry = 0;
    for (auto& l : limbs_) {
      uint64_t cur = static_cast<uint64_t>(l) * f + carry;
      l = static_cast<uint32_t>(cur);
      carry = cur >> 32;
    }
    if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
  }
  void add_small(uint32_t v) {
    uint64_t carry = v;
    for (size_t i = 0; carry && i < limbs_.size(); ++i) {
      uint64_t cur = limbs_[i] + carry;
      limbs_[i] = static_cast<uint32_t>(cur);
      carry = cur >> 32;
    }
    if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
  }

  std::vector<uint32_t> limbs_;  // little-endian, no trailing zero limbs
};

}  // namespace aitlab
