#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aitlab/codes.hpp"
#include "aitlab/complexity.hpp"
#include "aitlab/dyadic.hpp"

namespace aitlab {

// Which incompressibility test admits a program p as a witness for x at
// significance b. ProgramComplexity (|p| <= K(p) + b) is the definition this
// library computes; OutputComplexity (|p| <= K(x) + b) is reported alongside
// as a comparison column, with nothing asserted across the two.
enum class DepthPredicate { ProgramComplexity, OutputComplexity };

struct DepthResult {
  std::optional<uint64_t> steps;
  std::string witness;
  bool exact = false;
};

namespace detail {

// Smallest significance at which the candidate qualifies. A program whose
// bit-string is not an output anywhere in the store has K(p) above anything
// in range, so it passes the test at every b; on a complete store that is a
// certainty, not a guess (no program of length <= L produces it).
inline unsigned qualifying_b(const KTable& kt, const ProgramRecord& rec,
                             DepthPredicate pred, unsigned k_of_x) {
  unsigned k;
  if (pred == DepthPredicate::OutputComplexity) {
    k = k_of_x;
  } else {
    auto kh = kt.k_horizon(rec.bits());
    if (!kh.value) return 0;
    k = *kh.value;
  }
  unsigned len = rec.length();
  return len > k ? len - k : 0;
}

}  // namespace detail

// ld2: minimal running time among b-incompressible programs for x.
inline DepthResult ld2(const KTable& kt, std::string_view x, unsigned b,
                       DepthPredicate pred = DepthPredicate::ProgramComplexity) {
  DepthResult res;
  res.exact = kt.store().complete();
  const auto* cand = kt.candidates(x);
  if (!cand) return res;
  unsigned k_of_x = *kt.k_horizon(x).value;
  size_t best_idx = 0;
  for (size_t idx : *cand) {
    const ProgramRecord& rec = kt.store().records[idx];
    if (detail::qualifying_b(kt, rec, pred, k_of_x) > b) continue;
    if (!res.steps || rec.steps < *res.steps) {  // canonical order breaks ties
      res.steps = rec.steps;
      best_idx = idx;
    }
  }
  if (res.steps) res.witness = kt.store().records[best_idx].bits();
  return res;
}

struct Ld1Result {
  std::optional<uint64_t> d;
  bool exact = false;  // complete store: the mass ratio is exact relative to L
};

// ld1: smallest d with Q^d(x) >= eps * Q(x), the mass-ratio variant, with
// Q(x) standing for its horizon value (a lower bound of the true mass).
inline Ld1Result ld1(const KTable& kt, std::string_view x, const Dyadic& eps) {
  if (eps.is_zero() || eps > Dyadic::one()) {
    throw std::domain_error("significance eps must lie in (0,1]");
  }
  Ld1Result res;
  res.exact = kt.store().complete();
  const auto* cand = kt.candidates(x);
  if (!cand) return res;
  Dyadic threshold = eps * kt.q_horizon(x);
  std::vector<uint64_t> steps;
  steps.reserve(cand->size());
  for (size_t idx : *cand) steps.push_back(kt.store().records[idx].steps);
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  for (uint64_t d : steps) {
    if (kt.q_bounded(x, d) >= threshold) {
      res.d = d;
      break;
    }
  }
  return res;
}

struct CurvePoint {
  unsigned b = 0;
  std::optional<uint64_t> steps;
  std::string witness;
  std::optional<uint64_t> alt_steps;  // OutputComplexity comparison column
};

struct DepthCurve {
  std::string x;
  unsigned b_max = 0;
  std::vector<CurvePoint> points;  // b = 0 .. b_max when K(x) is defined
  bool exact = false;
};

// ld2 over b = 0 .. b_max, where b_max = (8|x|+1) - K(x) is the significance
// at which the literal transcription witness is sure to qualify.
inline DepthCurve depth_curve(const KTable& kt, std::string_view x) {
  DepthCurve curve;
  curve.x = std::string(x);
  curve.exact = kt.store().complete();
  const auto* cand = kt.candidates(x);
  if (!cand) return curve;
  unsigned k_of_x = *kt.k_horizon(x).value;
  unsigned literal_len = 8 * static_cast<unsigned>(x.size()) + 1;
  curve.b_max = literal_len > k_of_x ? literal_len - k_of_x : 0;

  const auto& recs = kt.store().records;
  // candidates keyed by the b at which they enter; sweep b upward keeping
  // the best (steps, canonical index) seen so far
  auto sweep = [&](DepthPredicate pred, auto&& emit) {
    std::vector<std::pair<unsigned, size_t>> entry;  // (qualifying b, index)
    entry.reserve(cand->size());
    for (size_t idx : *cand) {
      entry.emplace_back(detail::qualifying_b(kt, recs[idx], pred, k_of_x), idx);
    }
    std::stable_sort(entry.begin(), entry.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    size_t next = 0;
    std::optional<std::pair<uint64_t, size_t>> best;  // (steps, index)
    for (unsigned b = 0; b <= curve.b_max; ++b) {
      while (next < entry.size() && entry[next].first <= b) {
        auto key = std::make_pair(recs[entry[next].second].steps, entry[next].second);
        if (!best || key < *best) best = key;
        ++next;
      }
      emit(b, best);
    }
  };

  curve.points.resize(curve.b_max + 1);
  sweep(DepthPredicate::ProgramComplexity, [&](unsigned b, const auto& best) {
    curve.points[b].b = b;
    if (best) {
      curve.points[b].steps = best->first;
      curve.points[b].witness = recs[best->second].bits();
    }
  });
  sweep(DepthPredicate::OutputComplexity, [&](unsigned b, const auto& best) {
    if (best) curve.points[b].alt_steps = best->first;
  });
  return curve;
}

struct GapReport {
  std::string x;
  std::vector<std::pair<unsigned, uint64_t>> gaps;  // (b, ld2(b) - ld2(b+1))
  unsigned i_max = 0;
  uint64_t h = 0;  // maximal gap; bounded by ld2(x,0) and by bb(L)
  bool exact = false;
};

// Consecutive-significance gaps of the depth curve and their maximum.
inline GapReport gap_report(const KTable& kt, std::string_view x) {
  GapReport rep;
  rep.x = std::string(x);
  DepthCurve curve = depth_curve(kt, x);
  rep.exact = curve.exact;
  for (size_t b = 0; b + 1 < curve.points.size(); ++b) {
    const auto& lo = curve.points[b];
    const auto& hi = curve.points[b + 1];
    if (!lo.steps || !hi.steps) continue;
    uint64_t gap = *lo.steps - *hi.steps;  // curve is nonincreasing
    rep.gaps.emplace_back(static_cast<unsigned>(b), gap);
    if (gap > rep.h) {
      rep.h = gap;
      rep.i_max = static_cast<unsigned>(b);  // ties resolve to the smaller b
    }
  }
  return rep;
}

struct DepthRatioReport {
  std::string x;
  unsigned b = 0;
  unsigned slack = 0;  // the additive constant absorbed into the left bound
  uint64_t d = 0;      // ld2(x, b)
  Fraction ratio;      // Q^d(x) / Q^horizon(x), reduced
  Dyadic right_threshold;        // 2^-(b+1)
  unsigned min_k = 0;            // min(K(code(b)), K(code(d)))
  bool min_k_is_lower_bound = false;  // neither K defined in range: min_k = L+1
  Dyadic left_threshold;         // 2^-(b + min_k + slack)
  bool right_ok = false;         // ratio < right threshold
  bool left_ok = false;          // ratio >= left threshold
  bool exact = false;
};

// Empirical two-sided bound report for the Q^d/Q ratio at (x, b). Purely
// informational: this machine makes no optimality promises, so the flags are
// recorded, never asserted.
inline DepthRatioReport depth_ratio_report(const KTable& kt, std::string_view x,
                                           unsigned b, unsigned slack) {
  DepthResult depth = ld2(kt, x, b);
  if (!depth.steps) {
    throw std::invalid_argument("depth undefined at this significance");
  }
  DepthRatioReport rep;
  rep.x = std::string(x);
  rep.b = b;
  rep.slack = slack;
  rep.d = *depth.steps;
  rep.exact = kt.store().complete();
  rep.ratio = Fraction::of(kt.q_bounded(x, rep.d), kt.q_horizon(x));
  rep.right_threshold = Dyadic::pow2_inv(b + 1);
  rep.right_ok = rep.ratio < rep.right_threshold;

  auto k_b = kt.k_horizon(nat_to_string(b)).value;
  auto k_d = kt.k_horizon(nat_to_string(rep.d)).value;
  if (k_b || k_d) {
    rep.min_k = std::min(k_b.value_or(~0u), k_d.value_or(~0u));
  } else {
    rep.min_k = kt.store().max_len + 1;  // both exceed L; certified on complete stores
    rep.min_k_is_lower_bound = true;
  }
  rep.left_threshold = Dyadic::pow2_inv(b + rep.min_k + slack);
  rep.left_ok = rep.ratio >= rep.left_threshold;
  return rep;
}

}  // namespace aitlab
