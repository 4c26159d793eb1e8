#pragma once

#include <cstdint>
#include <cstring>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "aitlab/bitstring.hpp"

namespace aitlab {

// The machine M.
//
// A program is a bit-string 1^m 0 i1..im where each ij is a 3-bit opcode;
// total length 4m + 1. The unary length header makes the set of programs
// prefix-free by construction. Execution works on a semi-infinite binary
// tape (all zeros initially), a write-only output string, and a read-once
// auxiliary bit stream that yields 0 past its end.
//
//   000 LEFT      head := head - 1, saturating at cell 0
//   001 RIGHT     head := head + 1, tape grows with 0s
//   010 FLIP      toggle the scanned cell
//   011 OUT       append the scanned cell to the output
//   100 LOOPSTART if cell = 0 jump past the matching LOOPEND, else fall through
//   101 LOOPEND   jump back to the matching LOOPSTART
//   110 HALT      halt
//   111 READAUX   cell := next auxiliary bit
//
// Running time counts executed instructions, jumps included; the empty
// program (m = 0) halts in 0 steps. A run halts when the program counter
// falls off the end of the instruction list.

enum class Opcode : uint8_t {
  Left = 0,
  Right = 1,
  Flip = 2,
  Out = 3,
  LoopStart = 4,
  LoopEnd = 5,
  Halt = 6,
  ReadAux = 7,
};

struct Program {
  std::string bits;             // the full encoded form
  std::vector<Opcode> instrs;   // m decoded opcodes
  std::vector<int32_t> bracket_map;  // matching index for brackets, -1 elsewhere

  size_t instr_count() const { return instrs.size(); }
  unsigned length() const { return static_cast<unsigned>(bits.size()); }
};

inline constexpr unsigned program_length(unsigned instr_count) {
  return 4 * instr_count + 1;
}

// Strict decoder: accepts exactly the well-formed programs (correct header,
// exact total length, balanced and properly nested brackets).
inline std::optional<Program> decode(std::string_view bits) {
  if (!is_bit_string(bits)) return std::nullopt;
  size_t m = 0;
  while (m < bits.size() && bits[m] == '1') ++m;
  if (m == bits.size()) return std::nullopt;  // header never terminated
  if (bits.size() != 4 * m + 1) return std::nullopt;

  Program p;
  p.bits.assign(bits);
  p.instrs.reserve(m);
  p.bracket_map.assign(m, -1);
  std::vector<int32_t> stack;
  for (size_t j = 0; j < m; ++j) {
    size_t base = m + 1 + 3 * j;
    uint8_t v = static_cast<uint8_t>((bits[base] - '0') << 2 |
                                     (bits[base + 1] - '0') << 1 |
                                     (bits[base + 2] - '0'));
    Opcode op = static_cast<Opcode>(v);
    p.instrs.push_back(op);
    if (op == Opcode::LoopStart) {
      stack.push_back(static_cast<int32_t>(j));
    } else if (op == Opcode::LoopEnd) {
      if (stack.empty()) return std::nullopt;
      int32_t open = stack.back();
      stack.pop_back();
      p.bracket_map[static_cast<size_t>(open)] = static_cast<int32_t>(j);
      p.bracket_map[j] = open;
    }
  }
  if (!stack.empty()) return std::nullopt;
  return p;
}

struct MachineState {
  size_t pc = 0;
  size_t head = 0;
  std::vector<uint8_t> tape{0};  // touched prefix; cells beyond are 0
  std::string out;
  size_t aux_pos = 0;
  uint64_t steps = 0;
};

// Executes one instruction. pre: state.pc < p.instr_count().
inline void step(MachineState& s, const Program& p, std::string_view aux) {
  switch (p.instrs[s.pc]) {
    case Opcode::Left:
      if (s.head > 0) --s.head;
      ++s.pc;
      break;
    case Opcode::Right:
      ++s.head;
      if (s.head == s.tape.size()) s.tape.push_back(0);
      ++s.pc;
      break;
    case Opcode::Flip:
      s.tape[s.head] ^= 1;
      ++s.pc;
      break;
    case Opcode::Out:
      s.out.push_back(static_cast<char>('0' + s.tape[s.head]));
      ++s.pc;
      break;
    case Opcode::LoopStart:
      s.pc = s.tape[s.head] == 0
                 ? static_cast<size_t>(p.bracket_map[s.pc]) + 1
                 : s.pc + 1;
      break;
    case Opcode::LoopEnd:
      s.pc = static_cast<size_t>(p.bracket_map[s.pc]);
      break;
    case Opcode::Halt:
      s.pc = p.instr_count();
      break;
    case Opcode::ReadAux:
      s.tape[s.head] =
          s.aux_pos < aux.size() ? static_cast<uint8_t>(aux[s.aux_pos] - '0') : 0;
      ++s.aux_pos;
      ++s.pc;
      break;
  }
  ++s.steps;
}

struct RunOutcome {
  enum class Kind { Halted, FuelExhausted, NonHaltingCertified, Invalid };

  Kind kind = Kind::Invalid;
  std::string output;    // Halted
  uint64_t steps = 0;    // Halted
  uint64_t fuel = 0;     // FuelExhausted
  uint64_t at_step = 0;  // NonHaltingCertified: step at which a repeat was seen

  bool halted() const { return kind == Kind::Halted; }
  bool certified() const { return kind == Kind::NonHaltingCertified; }
  bool exhausted() const { return kind == Kind::FuelExhausted; }

  static RunOutcome make_halted(std::string out, uint64_t steps) {
    RunOutcome r;
    r.kind = Kind::Halted;
    r.output = std::move(out);
    r.steps = steps;
    return r;
  }
  static RunOutcome make_exhausted(uint64_t fuel) {
    RunOutcome r;
    r.kind = Kind::FuelExhausted;
    r.fuel = fuel;
    return r;
  }
  static RunOutcome make_certified(uint64_t at_step) {
    RunOutcome r;
    r.kind = Kind::NonHaltingCertified;
    r.at_step = at_step;
    return r;
  }
  static RunOutcome make_invalid() { return RunOutcome{}; }
};

namespace detail {

// Full configuration key: (pc, head, aux_pos, touched tape). The output is
// deliberately absent — it never feeds back into execution, so a repeated
// configuration loops forever whether or not output grew in between.
inline std::string config_key(const MachineState& s) {
  std::string key;
  key.resize(4 + 8 + 8 + 4 + (s.tape.size() + 7) / 8, '\0');
  char* q = key.data();
  uint32_t pc32 = static_cast<uint32_t>(s.pc);
  uint64_t head64 = s.head, aux64 = s.aux_pos;
  uint32_t tlen = static_cast<uint32_t>(s.tape.size());
  std::memcpy(q, &pc32, 4);
  std::memcpy(q + 4, &head64, 8);
  std::memcpy(q + 12, &aux64, 8);
  std::memcpy(q + 20, &tlen, 4);
  for (size_t i = 0; i < s.tape.size(); ++i) {
    if (s.tape[i]) q[24 + i / 8] |= static_cast<char>(1 << (i % 8));
  }
  return key;
}

}  // namespace detail

// Bounded deterministic execution. Pure function of (program, aux, fuel,
// detector): identical inputs always give identical outcomes.
//
// With the detector on, returns NonHaltingCertified as soon as the full
// configuration recurs; execution beyond that point would replay the cycle
// verbatim, so the program can never halt.
inline RunOutcome run(const Program& p, std::string_view aux, uint64_t fuel,
                      bool detector = true) {
  MachineState s;
  std::unordered_set<std::string> seen;
  // no configuration can recur before step 3, so tiny budgets skip the set
  const bool track = detector && fuel >= 3;
  while (true) {
    if (s.pc == p.instr_count()) return RunOutcome::make_halted(s.out, s.steps);
    if (track && !seen.insert(detail::config_key(s)).second) {
      return RunOutcome::make_certified(s.steps);
    }
    if (s.steps == fuel) return RunOutcome::make_exhausted(fuel);
    step(s, p, aux);
  }
}

inline RunOutcome run_bits(std::string_view bits, std::string_view aux,
                           uint64_t fuel, bool detector = true) {
  auto p = decode(bits);
  if (!p) return RunOutcome::make_invalid();
  return run(*p, aux, fuel, detector);
}

}  // namespace aitlab
