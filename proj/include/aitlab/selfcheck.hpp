#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "aitlab/busybeaver.hpp"
#include "aitlab/codes.hpp"
#include "aitlab/complexity.hpp"
#include "aitlab/depth.hpp"
#include "aitlab/enumerate.hpp"
#include "aitlab/store.hpp"

namespace aitlab {

struct SelfCheck {
  struct Entry {
    std::string name;
    uint64_t violations = 0;
    std::string first_violation;  // one example, for the diagnostic line
  };
  std::vector<Entry> entries;
  uint64_t total_violations = 0;

  void record(const std::string& name, uint64_t violations,
              const std::string& example = "") {
    entries.push_back({name, violations, example});
    total_violations += violations;
  }
  bool ok() const { return total_violations == 0; }
};

// The full machine-independent invariant suite over one store snapshot.
// Everything here must hold for any store this library writes; a nonzero
// count means either corruption or a bug.
inline SelfCheck selfcheck(const EnumStore& store) {
  SelfCheck sc;
  const auto& recs = store.records;

  {  // canonical order, unique, every program decodes, lengths within L
    uint64_t bad = 0;
    std::string ex;
    for (size_t i = 0; i < recs.size(); ++i) {
      bool order_ok = i == 0 || recs[i - 1] < recs[i];
      bool len_ok = recs[i].length() <= store.max_len;
      if (!order_ok || !len_ok || !decode(recs[i].bits())) {
        if (!bad) ex = recs[i].bits();
        ++bad;
      }
    }
    sc.record("records canonical and well-formed", bad, ex);
  }

  {  // exactly the valid programs up to L are present
    auto expected = generate_programs(store.max_len);
    uint64_t bad = expected.size() == recs.size() ? 0 : 1;
    for (size_t i = 0; !bad && i < recs.size(); ++i) {
      if (expected[i] < recs[i] || recs[i] < expected[i]) bad = 1;
    }
    sc.record("program set covers every valid program <= L", bad);
  }

  {  // halted set is prefix-free: in lexicographic order a prefix is adjacent
    std::vector<std::string> halted;
    for (const auto& r : recs) {
      if (r.status == Verdict::Halted) halted.push_back(r.bits());
    }
    std::sort(halted.begin(), halted.end());
    uint64_t bad = 0;
    std::string ex;
    for (size_t i = 0; i + 1 < halted.size(); ++i) {
      if (halted[i + 1].rfind(halted[i], 0) == 0) {
        if (!bad) ex = halted[i] + " prefixes " + halted[i + 1];
        ++bad;
      }
    }
    sc.record("halted set prefix-free", bad, ex);
  }

  {  // Kraft inequality, bit-exact
    bool ok = store.kraft_mass() <= Dyadic::one();
    sc.record("kraft mass <= 1", ok ? 0 : 1, store.kraft_mass().to_string());
  }

  {  // per-record sanity: outputs are bits, steps within horizon,
     // and a halting run with n output bits took at least n steps
    uint64_t bad = 0;
    std::string ex;
    for (const auto& r : recs) {
      if (r.status != Verdict::Halted) continue;
      if (!is_bit_string(r.output) || r.steps > store.fuel_horizon ||
          r.output.size() > r.steps) {
        if (!bad) ex = r.bits();
        ++bad;
      }
    }
    sc.record("halted records consistent", bad, ex);
  }

  KTable kt(store);

  {  // census bound and recount
    uint64_t bad = 0;
    std::string ex;
    for (unsigned k = 0; k <= store.max_len && k <= 62; ++k) {
      uint64_t recount = 0;
      for (const auto& x : kt.outputs()) {
        if (*kt.k_horizon(x).value <= k) ++recount;
      }
      auto c = kt.census(k);
      if (c.count != recount || c.count > (uint64_t(1) << k)) {
        if (!bad) ex = "k=" + std::to_string(k);
        ++bad;
      }
    }
    sc.record("census matches recount and respects 2^k", bad, ex);
  }

  {  // witnesses actually compute their string in the recorded time
    uint64_t bad = 0;
    std::string ex;
    const std::string stream = bar_encode(store.aux_y);
    for (const auto& x : kt.outputs()) {
      auto kh = kt.k_horizon(x);
      auto out = run_bits(kh.witness, stream, store.fuel_horizon);
      if (!out.halted() || out.output != x ||
          kh.witness.size() != *kh.value) {
        if (!bad) ex = x;
        ++bad;
      }
    }
    sc.record("k witnesses reproduce their outputs", bad, ex);
  }

  {  // K^d nonincreasing, Q^d nondecreasing, 2^-K <= Q at horizon
    uint64_t bad = 0;
    std::string ex;
    for (const auto& x : kt.outputs()) {
      std::vector<uint64_t> ds;
      ds.push_back(0);
      for (size_t idx : *kt.candidates(x)) ds.push_back(recs[idx].steps);
      ds.push_back(store.fuel_horizon);
      std::sort(ds.begin(), ds.end());
      ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
      std::optional<unsigned> prev_k;
      Dyadic prev_q;
      for (uint64_t d : ds) {
        auto kd = kt.k_bounded(x, d);
        auto qd = kt.q_bounded(x, d);
        bool k_ok = !prev_k || (kd && *kd <= *prev_k);
        bool q_ok = qd >= prev_q;
        if ((prev_k && !k_ok) || !q_ok) {
          if (!bad) ex = x;
          ++bad;
        }
        if (kd) prev_k = kd;
        prev_q = qd;
      }
      if (Dyadic::pow2_inv(*kt.k_horizon(x).value) > kt.q_horizon(x)) {
        if (!bad) ex = x + " (witness mass)";
        ++bad;
      }
    }
    sc.record("K^d / Q^d monotone, witness mass counted", bad, ex);
  }

  {  // total output mass equals the halted mass, exactly
    Dyadic total;
    for (const auto& x : kt.outputs()) total += kt.q_horizon(x);
    bool ok = total == store.kraft_mass();
    sc.record("sum of Q over outputs equals kraft mass", ok ? 0 : 1,
              total.to_string());
  }

  {  // depth curves nonincreasing; curve witnesses valid
    uint64_t bad = 0;
    std::string ex;
    const std::string stream = bar_encode(store.aux_y);
    for (const auto& x : kt.outputs()) {
      DepthCurve curve = depth_curve(kt, x);
      std::optional<uint64_t> prev;
      for (const auto& pt : curve.points) {
        if (pt.steps) {
          if (prev && *pt.steps > *prev) {
            if (!bad) ex = x;
            ++bad;
          }
          prev = pt.steps;
          auto out = run_bits(pt.witness, stream, store.fuel_horizon);
          if (!out.halted() || out.output != x || out.steps != *pt.steps) {
            if (!bad) ex = x + " (witness)";
            ++bad;
          }
        } else if (prev) {  // once defined, defined for larger b
          if (!bad) ex = x + " (gap in curve)";
          ++bad;
        }
      }
    }
    sc.record("depth curves nonincreasing with valid witnesses", bad, ex);
  }

  {  // transcription bound: the literal writer halts on x in <= 2|x| steps
    uint64_t bad = 0;
    std::string ex;
    for (const auto& x : kt.outputs()) {
      if (x.size() > 8) continue;
      Program t = transcription_program(x);
      auto out = run(t, "", 2 * x.size());
      if (!out.halted() || out.output != x ||
          t.length() > 8 * x.size() + 1) {
        if (!bad) ex = x;
        ++bad;
      }
    }
    sc.record("literal transcription halts within 2|x|", bad, ex);
  }

  {  // bb monotone, champions genuine, no running time above bb(|p|)
    auto table = bb_table(store);
    uint64_t bad = 0;
    std::string ex;
    const std::string stream = bar_encode(store.aux_y);
    for (size_t i = 0; i < table.size(); ++i) {
      if (i > 0 && table[i].value < table[i - 1].value) {
        if (!bad) ex = "bb(" + std::to_string(table[i].n) + ")";
        ++bad;
      }
      if (!table[i].champion.empty()) {
        auto out = run_bits(table[i].champion, stream, store.fuel_horizon);
        if (!out.halted() || out.steps != table[i].value) {
          if (!bad) ex = "champion " + table[i].champion;
          ++bad;
        }
      }
    }
    bad += time_bound_check(store, table).size();
    sc.record("bb table monotone and definitional", bad, ex);
  }

  if (store.complete()) {  // gap chain: 0 <= h <= ld2(x,0) <= bb(L)
    uint64_t bad = 0;
    std::string ex;
    uint64_t bb_l = bb(store, store.max_len).value;
    for (const auto& x : kt.outputs()) {
      auto d0 = ld2(kt, x, 0);
      auto rep = gap_report(kt, x);
      if (!d0.steps) continue;
      if (rep.h > *d0.steps || *d0.steps > bb_l) {
        if (!bad) ex = x;
        ++bad;
      }
    }
    sc.record("gap chain h <= ld2(x,0) <= bb(L)", bad, ex);
  }

  return sc;
}

}  // namespace aitlab
