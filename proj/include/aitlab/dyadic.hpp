#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "aitlab/bignat.hpp"

namespace aitlab {

// Exact dyadic rational num / 2^k. Canonical form keeps num odd (or zero
// with k = 0), so equal values have equal representations. Probability
// masses are never floats anywhere in this library.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(BigNat num, size_t k) : num_(std::move(num)), k_(k) { normalize(); }

  static Dyadic zero() { return Dyadic(); }
  static Dyadic one() { return Dyadic(BigNat(1), 0); }
  static Dyadic pow2_inv(size_t k) { return Dyadic(BigNat(1), k); }

  const BigNat& num() const { return num_; }
  size_t exponent() const { return k_; }
  bool is_zero() const { return num_.is_zero(); }

  Dyadic operator+(const Dyadic& o) const {
    size_t k = std::max(k_, o.k_);
    BigNat n = num_.shifted_left(k - k_);
    n += o.num_.shifted_left(k - o.k_);
    return Dyadic(std::move(n), k);
  }
  Dyadic& operator+=(const Dyadic& o) {
    *this = *this + o;
    return *this;
  }

  Dyadic operator*(const Dyadic& o) const {
    return Dyadic(num_ * o.num_, k_ + o.k_);
  }

  int compare(const Dyadic& o) const {
    size_t k = std::max(k_, o.k_);
    return num_.shifted_left(k - k_).compare(o.num_.shifted_left(k - o.k_));
  }
  bool operator==(const Dyadic& o) const { return compare(o) == 0; }
  bool operator!=(const Dyadic& o) const { return compare(o) != 0; }
  bool operator<(const Dyadic& o) const { return compare(o) < 0; }
  bool operator<=(const Dyadic& o) const { return compare(o) <= 0; }
  bool operator>(const Dyadic& o) const { return compare(o) > 0; }
  bool operator>=(const Dyadic& o) const { return compare(o) >= 0; }

  // Exact literal, always "num/2^k", e.g. "11/2^4".
  std::string to_string() const {
    return num_.to_decimal() + "/2^" + std::to_string(k_);
  }

  // Accepts "n", "n/2^k", or "n/d" with d a power of two.
  static std::optional<Dyadic> parse(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
      auto n = BigNat::from_decimal(s);
      if (!n) return std::nullopt;
      return Dyadic(*n, 0);
    }
    auto n = BigNat::from_decimal(s.substr(0, slash));
    if (!n) return std::nullopt;
    std::string_view den = s.substr(slash + 1);
    if (den.rfind("2^", 0) == 0) {
      auto k = BigNat::from_decimal(den.substr(2));
      if (!k) return std::nullopt;
      auto kv = k->to_u64();
      if (!kv) return std::nullopt;
      return Dyadic(*n, static_cast<size_t>(*kv));
    }
    auto d = BigNat::from_decimal(den);
    if (!d || !d->is_power_of_two()) return std::nullopt;
    return Dyadic(*n, d->trailing_zeros());
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      k_ = 0;
      return;
    }
    size_t tz = std::min(num_.trailing_zeros(), k_);
    num_.shr(tz);
    k_ -= tz;
  }

  BigNat num_;
  size_t k_ = 0;
};

// Exact rational, reduced. Used for the Q^d/Q ratio reports, where the
// quotient of two dyadics is generally not dyadic.
class Fraction {
 public:
  Fraction() : num_(0), den_(1) {}
  Fraction(BigNat num, BigNat den) : num_(std::move(num)), den_(std::move(den)) {
    reduce();
  }

  // numerator / denominator as dyadics: (a/2^i) / (b/2^j) = a*2^j / (b*2^i).
  static Fraction of(const Dyadic& numer, const Dyadic& denom) {
    return Fraction(numer.num().shifted_left(denom.exponent()),
                    denom.num().shifted_left(numer.exponent()));
  }

  const BigNat& num() const { return num_; }
  const BigNat& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  // cross-multiplied exact comparison with a dyadic
  int compare(const Dyadic& d) const {
    return num_.shifted_left(d.exponent()).compare(d.num() * den_);
  }
  bool operator<(const Dyadic& d) const { return compare(d) < 0; }
  bool operator>=(const Dyadic& d) const { return compare(d) >= 0; }
  bool operator<=(const Dyadic& d) const { return compare(d) <= 0; }

  std::string to_string() const {
    return num_.to_decimal() + "/" + den_.to_decimal();
  }

 private:
  void reduce() {
    if (num_.is_zero()) {
      den_ = BigNat(1);
      return;
    }
    BigNat g = BigNat::gcd(num_, den_);
    if (g > BigNat(1)) {
      num_ = divide_exact(num_, g);
      den_ = divide_exact(den_, g);
    }
  }

  // exact division by a known divisor, via schoolbook long division on bits;
  // only called with g | n
  static BigNat divide_exact(const BigNat& n, const BigNat& g) {
    BigNat q, rem;
    for (size_t i = n.bit_length(); i-- > 0;) {
      rem.shl(1);
      if (n.bit(i)) rem += BigNat(1);
      q.shl(1);
      if (rem >= g) {
        rem -= g;
        q += BigNat(1);
      }
    }
    return q;
  }

  BigNat num_;
  BigNat den_;
};

}  // namespace aitlab
