#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "aitlab/store.hpp"

namespace aitlab {

struct BBEntry {
  unsigned n = 0;
  uint64_t value = 0;      // max running time among halted programs, |p| <= n
  std::string champion;    // canonical-first program achieving it
  bool exact = false;      // no undecided program of length <= n remains
};

// BB(n) relative to the store: a certified lower bound in general, exact
// once every program of length <= n is decided.
inline BBEntry bb(const EnumStore& store, unsigned n) {
  if (n < 1 || n > store.max_len) {
    throw std::invalid_argument("bb: n must lie in [1, L]");
  }
  BBEntry e;
  e.n = n;
  e.exact = true;
  bool have = false;
  for (const auto& r : store.records) {
    if (r.length() > n) break;  // canonical order: lengths ascending
    if (r.status == Verdict::Undecided) e.exact = false;
    if (r.status != Verdict::Halted) continue;
    if (!have || r.steps > e.value) {
      have = true;
      e.value = r.steps;
      e.champion = r.bits();
    }
  }
  return e;
}

// one row per populated program length 4m+1
inline std::vector<BBEntry> bb_table(const EnumStore& store) {
  std::vector<BBEntry> table;
  for (unsigned m = 0; program_length(m) <= store.max_len; ++m) {
    table.push_back(bb(store, program_length(m)));
  }
  return table;
}

struct TimeBoundViolation {
  std::string bits;
  uint64_t steps = 0;
  uint64_t bound = 0;
};

// Every halted record must satisfy steps <= bb(|p|) for the given table;
// any violation means the store and table disagree (e.g. corruption).
inline std::vector<TimeBoundViolation> time_bound_check(
    const EnumStore& store, const std::vector<BBEntry>& table) {
  std::vector<TimeBoundViolation> violations;
  for (const auto& r : store.records) {
    if (r.status != Verdict::Halted) continue;
    uint64_t bound = 0;
    bool found = false;
    for (const auto& e : table) {
      if (e.n >= r.length()) {
        bound = e.value;
        found = true;
        break;
      }
    }
    if (!found) continue;  // record longer than any table row
    if (r.steps > bound) violations.push_back({r.bits(), r.steps, bound});
  }
  return violations;
}

}  // namespace aitlab
