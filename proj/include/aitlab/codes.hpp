#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "aitlab/bitstring.hpp"

namespace aitlab {

// Self-delimiting codes over {0,1}*. Both families are prefix-free, which
// is what makes them usable as headers inside larger codes.
//
//   bar_encode(x)   = 1^|x| 0 x                 length 2|x| + 1
//   prime_encode(x) = 1^|n| 0 n x  (n = binary numeral of |x|, empty for 0)
//                                               length |x| + 2|n| + 1

inline std::string bar_encode(std::string_view x) {
  std::string code(x.size(), '1');
  code.push_back('0');
  code.append(x);
  return code;
}

inline std::optional<std::string> bar_decode(std::string_view code) {
  if (!is_bit_string(code)) return std::nullopt;
  size_t n = 0;
  while (n < code.size() && code[n] == '1') ++n;
  if (n == code.size()) return std::nullopt;  // no stop sign
  if (code.size() != 2 * n + 1) return std::nullopt;
  return std::string(code.substr(n + 1));
}

// Plain positional numeral of n, most significant bit first; empty for 0.
inline std::string length_numeral(size_t n) {
  std::string s;
  while (n) {
    s.insert(s.begin(), static_cast<char>('0' + (n & 1)));
    n >>= 1;
  }
  return s;
}

inline std::string prime_encode(std::string_view x) {
  std::string code = bar_encode(length_numeral(x.size()));
  code.append(x);
  return code;
}

inline std::optional<std::string> prime_decode(std::string_view code) {
  if (!is_bit_string(code)) return std::nullopt;
  size_t j = 0;
  while (j < code.size() && code[j] == '1') ++j;
  if (j == code.size()) return std::nullopt;
  if (j > 60) return std::nullopt;  // numeral wider than any real input
  size_t pos = j + 1;
  if (code.size() < pos + j) return std::nullopt;
  std::string_view numeral = code.substr(pos, j);
  if (!numeral.empty() && numeral[0] != '1') return std::nullopt;  // leading zero
  size_t n = 0;
  for (char c : numeral) n = (n << 1) | static_cast<size_t>(c - '0');
  pos += j;
  if (code.size() != pos + n) return std::nullopt;
  return std::string(code.substr(pos));
}

// The standard bijection between naturals and bit-strings:
//   0 <-> "", 1 <-> "0", 2 <-> "1", 3 <-> "00", 4 <-> "01", ...
// i.e. n maps to the binary expansion of n+1 with the leading 1 dropped.
inline std::string nat_to_string(uint64_t n) {
  uint64_t v = n + 1;
  std::string s;
  while (v > 1) {
    s.insert(s.begin(), static_cast<char>('0' + (v & 1)));
    v >>= 1;
  }
  return s;
}

inline std::optional<uint64_t> string_to_nat(std::string_view s) {
  if (!is_bit_string(s) || s.size() > 63) return std::nullopt;
  uint64_t v = 1;
  for (char c : s) v = (v << 1) | static_cast<uint64_t>(c - '0');
  return v - 1;
}

}  // namespace aitlab
