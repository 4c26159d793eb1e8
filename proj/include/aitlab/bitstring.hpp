#pragma once

#include <string>
#include <string_view>

namespace aitlab {

inline bool is_bit_string(std::string_view s) {
  for (char c : s) {
    if (c != '0' && c != '1') return false;
  }
  return true;
}

// Standard enumeration order: by length, then lexicographically.
// Witness selection, snapshot serialization and every tie-break in this
// library use this order.
inline bool canonical_less(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace aitlab
