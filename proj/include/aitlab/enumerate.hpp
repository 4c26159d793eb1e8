#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "aitlab/codes.hpp"
#include "aitlab/machine.hpp"
#include "aitlab/store.hpp"

namespace aitlab {

// Increasing fuel sequence for dovetailing. The default is geometric so a
// program is never run with more than ~2x the fuel it actually needed.
struct FuelSchedule {
  std::vector<uint64_t> fuels;

  static FuelSchedule powers_of_two(uint64_t max_fuel) {
    FuelSchedule s;
    for (uint64_t f = 1; f < max_fuel && f <= (uint64_t(1) << 62); f *= 2) {
      s.fuels.push_back(f);
    }
    s.fuels.push_back(max_fuel);
    return s;
  }

  static std::optional<FuelSchedule> parse(std::string_view csv) {
    FuelSchedule s;
    uint64_t cur = 0;
    bool any = false;
    for (size_t i = 0; i <= csv.size(); ++i) {
      if (i == csv.size() || csv[i] == ',') {
        if (!any) return std::nullopt;
        if (!s.fuels.empty() && cur <= s.fuels.back()) return std::nullopt;
        s.fuels.push_back(cur);
        cur = 0;
        any = false;
      } else if (csv[i] >= '0' && csv[i] <= '9') {
        cur = cur * 10 + static_cast<uint64_t>(csv[i] - '0');
        any = true;
      } else {
        return std::nullopt;
      }
    }
    if (s.fuels.empty() || s.fuels.front() == 0) return std::nullopt;
    return s;
  }

  uint64_t final_fuel() const { return fuels.back(); }
};

namespace detail {

inline bool brackets_balanced(uint8_t m, uint32_t body) {
  int depth = 0;
  for (int j = 3 * static_cast<int>(m) - 3; j >= 0; j -= 3) {
    auto op = static_cast<Opcode>((body >> j) & 7u);
    if (op == Opcode::LoopStart) {
      ++depth;
    } else if (op == Opcode::LoopEnd) {
      if (--depth < 0) return false;
    }
  }
  return depth == 0;
}

}  // namespace detail

// All valid programs with |p| <= max_len, canonical order, all Undecided.
// The compact record layout caps the body at 30 opcode bits (m <= 10,
// L <= 41); exhaustive enumeration is hopeless well before that anyway.
inline std::vector<ProgramRecord> generate_programs(unsigned max_len) {
  if (max_len > 41) throw std::invalid_argument("length cap above 41 is unsupported");
  std::vector<ProgramRecord> out;
  for (uint8_t m = 0; program_length(m) <= max_len; ++m) {
    uint64_t bodies = uint64_t(1) << (3 * m);
    for (uint64_t body = 0; body < bodies; ++body) {
      if (!detail::brackets_balanced(m, static_cast<uint32_t>(body))) continue;
      ProgramRecord r;
      r.m = m;
      r.body = static_cast<uint32_t>(body);
      out.push_back(std::move(r));
    }
  }
  return out;
}

struct EnumerateOptions {
  unsigned workers = 1;
  bool detector = true;
  std::string aux_y;         // conditional payload for fresh stores
  std::string persist_path;  // snapshot after every stage when nonempty
  std::function<void(const EnumStore&, uint64_t stage_fuel)> on_stage;
};

namespace detail {

struct StageResult {
  Verdict status = Verdict::Undecided;
  uint64_t steps = 0;
  std::string output;
};

// Runs the given records at one fuel level. Workers own disjoint index
// ranges of `todo`, so the merged result is independent of scheduling.
inline std::vector<StageResult> run_stage(const EnumStore& store,
                                          const std::vector<size_t>& todo,
                                          uint64_t fuel, std::string_view stream,
                                          bool detector, unsigned workers) {
  std::vector<StageResult> results(todo.size());
  auto work = [&](size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i) {
      const ProgramRecord& rec = store.records[todo[i]];
      auto prog = decode(rec.bits());
      RunOutcome out = run(*prog, stream, fuel, detector);
      if (out.halted()) {
        results[i] = {Verdict::Halted, out.steps, out.output};
      } else if (out.certified()) {
        results[i] = {Verdict::Certified, 0, {}};
      }
    }
  };
  if (workers <= 1 || todo.size() < 2) {
    work(0, todo.size());
  } else {
    unsigned n = std::min<size_t>(workers, todo.size());
    size_t chunk = (todo.size() + n - 1) / n;
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < n; ++w) {
      size_t lo = w * chunk, hi = std::min(todo.size(), lo + chunk);
      if (lo >= hi) break;
      threads.emplace_back(work, lo, hi);
    }
    for (auto& t : threads) t.join();
  }
  return results;
}

inline void append_log(const std::string& path, uint64_t fuel,
                       const EnumStore& store, const std::vector<size_t>& todo,
                       const std::vector<StageResult>& results) {
  std::ofstream log(path, std::ios::binary | std::ios::app);
  if (!log) throw StoreIoError("cannot append to " + path);
  for (size_t i = 0; i < todo.size(); ++i) {
    if (results[i].status == Verdict::Undecided) continue;
    log << fuel << '\t' << EnumStore::record_line(store.records[todo[i]]) << '\n';
  }
}

}  // namespace detail

// Dovetailed enumeration of every valid program with |p| <= max_len.
//
// The final store is a pure function of (max_len, final fuel, aux_y,
// detector): stage layout, worker count and resume points change only how
// the work is split, never the result. Halted and Certified records loaded
// from a previous snapshot are never re-run.
inline void enumerate(EnumStore& store, unsigned max_len,
                      const FuelSchedule& schedule,
                      const EnumerateOptions& opts = {}) {
  if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  if (schedule.fuels.empty()) throw std::invalid_argument("empty fuel schedule");
  if (!is_bit_string(opts.aux_y)) throw std::invalid_argument("aux_y must be a bit-string");

  if (store.records.empty() && store.max_len == 0) {
    store.aux_y = opts.aux_y;
  } else if (!opts.aux_y.empty() && opts.aux_y != store.aux_y) {
    throw std::invalid_argument("store was enumerated with a different auxiliary input");
  }
  const std::string stream = bar_encode(store.aux_y);

  // extend the record set if the length cap grew
  std::vector<char> fresh(store.records.size(), 0);
  if (max_len > store.max_len) {
    auto all = generate_programs(max_len);
    std::vector<ProgramRecord> merged;
    std::vector<char> merged_fresh;
    merged.reserve(all.size());
    merged_fresh.reserve(all.size());
    size_t have = 0;
    for (auto& rec : all) {
      if (have < store.records.size() && !(rec < store.records[have]) &&
          !(store.records[have] < rec)) {
        merged.push_back(std::move(store.records[have]));
        merged_fresh.push_back(0);
        ++have;
      } else {
        merged.push_back(std::move(rec));
        merged_fresh.push_back(1);
      }
    }
    if (have != store.records.size()) {
      throw std::invalid_argument("store contains records beyond the program set");
    }
    bool extended = merged.size() > store.records.size();
    store.records = std::move(merged);
    fresh = std::move(merged_fresh);
    store.max_len = max_len;
    if (extended && store.fuel_horizon > 0 &&
        schedule.final_fuel() < store.fuel_horizon) {
      throw std::invalid_argument(
          "extending the length cap needs a schedule reaching the stored horizon");
    }
  }

  const uint64_t old_horizon = store.fuel_horizon;
  for (uint64_t fuel : schedule.fuels) {
    std::vector<size_t> todo;
    for (size_t i = 0; i < store.records.size(); ++i) {
      if (store.records[i].status != Verdict::Undecided) continue;
      if (fuel <= old_horizon && !fresh[i]) continue;  // already exhausted here
      todo.push_back(i);
    }
    if (!todo.empty()) {
      auto results = detail::run_stage(store, todo, fuel, stream, opts.detector,
                                       opts.workers);
      for (size_t i = 0; i < todo.size(); ++i) {
        if (results[i].status == Verdict::Undecided) continue;
        ProgramRecord& rec = store.records[todo[i]];
        rec.status = results[i].status;
        rec.steps = results[i].steps;
        rec.output = std::move(results[i].output);
      }
      if (!opts.persist_path.empty()) {
        detail::append_log(opts.persist_path + ".log", fuel, store, todo, results);
      }
    }
    if (fuel > store.fuel_horizon) store.fuel_horizon = fuel;
    if (!opts.persist_path.empty()) store.save(opts.persist_path);
    if (opts.on_stage) opts.on_stage(store, fuel);
  }
}

}  // namespace aitlab
