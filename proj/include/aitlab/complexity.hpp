#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "aitlab/dyadic.hpp"
#include "aitlab/errors.hpp"
#include "aitlab/machine.hpp"
#include "aitlab/store.hpp"

namespace aitlab {

struct KResult {
  std::optional<unsigned> value;  // undefined when no program in range outputs x
  std::string witness;            // x*: first shortest program, canonical order
  bool exact = false;             // value equals true K restricted to |p| <= L
};

struct CensusResult {
  uint64_t count = 0;
  bool exact = false;
};

struct CompDepthResult {
  std::optional<uint64_t> value;
  bool exact = false;
};

// Read-only complexity and probability queries over one store snapshot.
// Everything here is truncated to programs of length <= L and fuels
// <= fuel_horizon; the exact flags certify when the truncation is vacuous.
class KTable {
 public:
  explicit KTable(const EnumStore& store) : store_(&store) {
    for (size_t i = 0; i < store.records.size(); ++i) {
      const ProgramRecord& r = store.records[i];
      if (r.status != Verdict::Halted) continue;
      stats_[r.output].candidates.push_back(i);
    }
    outputs_.reserve(stats_.size());
    for (auto& [x, st] : stats_) {
      outputs_.push_back(x);
      build(st);
    }
    std::sort(outputs_.begin(), outputs_.end(), canonical_less);
    std::sort(min_lens_sorted_.begin(), min_lens_sorted_.end());
  }

  const EnumStore& store() const { return *store_; }

  // distinct outputs seen at the horizon, canonical order
  const std::vector<std::string>& outputs() const { return outputs_; }

  // K^d(x): length of the shortest program producing x within d steps.
  std::optional<unsigned> k_bounded(std::string_view x, uint64_t d) const {
    check_horizon(d);
    const OutputStats* st = stats_of(x);
    if (!st) return std::nullopt;
    auto it = std::upper_bound(
        st->k_breaks.begin(), st->k_breaks.end(), d,
        [](uint64_t lhs, const auto& rhs) { return lhs < rhs.first; });
    if (it == st->k_breaks.begin()) return std::nullopt;
    return std::prev(it)->second;
  }

  // K(x) at the horizon, with witness and exactness certificate.
  KResult k_horizon(std::string_view x) const {
    KResult res;
    res.exact = store_->complete();
    const OutputStats* st = stats_of(x);
    if (!st) return res;
    res.value = store_->records[st->witness_idx].length();
    res.witness = store_->records[st->witness_idx].bits();
    return res;
  }

  // phi(x): fastest running time among the shortest programs for x.
  std::optional<uint64_t> shortest_program_time(std::string_view x) const {
    const OutputStats* st = stats_of(x);
    if (!st) return std::nullopt;
    return st->min_steps_at_min_len;
  }

  // Q^d(x) truncated to |p| <= L: exact mass of programs for x halting
  // within d steps.
  Dyadic q_bounded(std::string_view x, uint64_t d) const {
    check_horizon(d);
    const OutputStats* st = stats_of(x);
    if (!st) return Dyadic::zero();
    auto it = std::upper_bound(
        st->q_prefix.begin(), st->q_prefix.end(), d,
        [](uint64_t lhs, const auto& rhs) { return lhs < rhs.first; });
    if (it == st->q_prefix.begin()) return Dyadic::zero();
    return std::prev(it)->second;
  }

  Dyadic q_horizon(std::string_view x) const {
    return q_bounded(x, store_->fuel_horizon);
  }

  // Number of strings with K at most k. At most 2^k by the Kraft argument.
  CensusResult census(unsigned k) const {
    CensusResult res;
    res.exact = store_->complete() && k <= store_->max_len;
    res.count = static_cast<uint64_t>(
        std::upper_bound(min_lens_sorted_.begin(), min_lens_sorted_.end(), k) -
        min_lens_sorted_.begin());
    return res;
  }

  // K^d(x) - K(x); undefined until some program for x halts within d.
  CompDepthResult computational_depth(std::string_view x, uint64_t d) const {
    CompDepthResult res;
    res.exact = store_->complete();
    auto kd = k_bounded(x, d);
    if (!kd) return res;
    auto kh = k_horizon(x);
    res.value = *kd - *kh.value;
    return res;
  }

  // halted record indices producing x, canonical order
  const std::vector<size_t>* candidates(std::string_view x) const {
    const OutputStats* st = stats_of(x);
    return st ? &st->candidates : nullptr;
  }

 private:
  struct OutputStats {
    std::vector<size_t> candidates;
    size_t witness_idx = 0;
    uint64_t min_steps_at_min_len = 0;
    // (steps, value) breakpoints, strictly increasing in steps
    std::vector<std::pair<uint64_t, unsigned>> k_breaks;     // improving min length
    std::vector<std::pair<uint64_t, Dyadic>> q_prefix;       // cumulative mass
  };

  void build(OutputStats& st) {
    const auto& recs = store_->records;
    st.witness_idx = st.candidates.front();  // canonical order: first shortest
    unsigned min_len = recs[st.witness_idx].length();
    uint64_t phi = recs[st.witness_idx].steps;
    for (size_t idx : st.candidates) {
      if (recs[idx].length() == min_len) phi = std::min(phi, recs[idx].steps);
    }
    st.min_steps_at_min_len = phi;
    min_lens_sorted_.push_back(min_len);

    std::vector<size_t> by_steps = st.candidates;
    std::stable_sort(by_steps.begin(), by_steps.end(), [&](size_t a, size_t b) {
      return recs[a].steps < recs[b].steps;
    });
    Dyadic mass;
    unsigned best = 0;
    bool have_best = false;
    for (size_t i = 0; i < by_steps.size(); ++i) {
      const ProgramRecord& r = recs[by_steps[i]];
      mass += Dyadic::pow2_inv(r.length());
      if (!have_best || r.length() < best) {
        best = r.length();
        have_best = true;
        if (!st.k_breaks.empty() && st.k_breaks.back().first == r.steps) {
          st.k_breaks.back().second = best;
        } else {
          st.k_breaks.emplace_back(r.steps, best);
        }
      }
      bool last_of_step =
          i + 1 == by_steps.size() || recs[by_steps[i + 1]].steps != r.steps;
      if (last_of_step) st.q_prefix.emplace_back(r.steps, mass);
    }
  }

  const OutputStats* stats_of(std::string_view x) const {
    auto it = stats_.find(std::string(x));
    return it == stats_.end() ? nullptr : &it->second;
  }

  void check_horizon(uint64_t d) const {
    if (d > store_->fuel_horizon) throw HorizonError(d, store_->fuel_horizon);
  }

  const EnumStore* store_;
  std::unordered_map<std::string, OutputStats> stats_;
  std::vector<std::string> outputs_;
  std::vector<unsigned> min_lens_sorted_;
};

// The literal writer for x: FLIP whenever the next bit differs from the
// scanned cell, then OUT. Uses m <= 2|x| instructions, runs in m steps, and
// witnesses K(x) <= 8|x| + 1 on this machine.
inline Program transcription_program(std::string_view x) {
  std::string body;
  char cell = '0';
  for (char bit : x) {
    if (bit != cell) {
      body += "010";  // FLIP
      cell = bit;
    }
    body += "011";  // OUT
  }
  size_t m = body.size() / 3;
  std::string bits(m, '1');
  bits.push_back('0');
  bits += body;
  return *decode(bits);
}

}  // namespace aitlab
