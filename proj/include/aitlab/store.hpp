#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "aitlab/bitstring.hpp"
#include "aitlab/dyadic.hpp"
#include "aitlab/errors.hpp"
#include "aitlab/machine.hpp"

namespace aitlab {

enum class Verdict : char {
  Halted = 'H',
  Certified = 'C',  // certified non-halting
  Undecided = 'U',  // not decided at the current fuel horizon
};

// One verdict per valid program. Programs are stored compactly as
// (instr_count, body value); the encoded bit-string is reproduced on demand.
struct ProgramRecord {
  uint32_t body = 0;  // the 3m opcode bits as an integer, MSB-first
  uint8_t m = 0;
  Verdict status = Verdict::Undecided;
  uint64_t steps = 0;   // Halted only
  std::string output;   // Halted only

  unsigned length() const { return program_length(m); }

  std::string bits() const {
    std::string s(m, '1');
    s.push_back('0');
    for (int j = 3 * static_cast<int>(m) - 1; j >= 0; --j) {
      s.push_back(static_cast<char>('0' + ((body >> j) & 1u)));
    }
    return s;
  }

  // canonical (length, lexicographic) order
  friend bool operator<(const ProgramRecord& a, const ProgramRecord& b) {
    if (a.m != b.m) return a.m < b.m;
    return a.body < b.body;
  }
};

inline std::optional<std::pair<uint8_t, uint32_t>> record_key_of(
    std::string_view bits) {
  auto p = decode(bits);
  if (!p) return std::nullopt;
  uint8_t m = static_cast<uint8_t>(p->instr_count());
  uint32_t body = 0;
  for (size_t i = m + 1; i < bits.size(); ++i) {
    body = (body << 1) | static_cast<uint32_t>(bits[i] - '0');
  }
  return std::make_pair(m, body);
}

// Persistent, resumable set of per-program verdicts for all programs up to
// max_len, evaluated up to fuel_horizon steps. Downstream quantities are all
// computed from one of these.
class EnumStore {
 public:
  static constexpr const char* kFormatVersion = "v1";

  unsigned max_len = 0;
  uint64_t fuel_horizon = 0;
  std::string aux_y;  // conditional payload; empty for the unconditional store
  std::vector<ProgramRecord> records;  // canonical order, unique

  bool complete() const {
    return std::none_of(records.begin(), records.end(), [](const auto& r) {
      return r.status == Verdict::Undecided;
    });
  }

  struct Tally {
    uint64_t halted = 0;
    uint64_t certified = 0;
    uint64_t undecided = 0;
  };

  Tally decided_fraction() const {
    Tally t;
    for (const auto& r : records) {
      switch (r.status) {
        case Verdict::Halted: ++t.halted; break;
        case Verdict::Certified: ++t.certified; break;
        case Verdict::Undecided: ++t.undecided; break;
      }
    }
    return t;
  }

  // Exact sum of 2^-|p| over halted programs. The Kraft inequality bounds it
  // by 1 for any prefix-free set, which selfcheck verifies bit-exactly.
  Dyadic kraft_mass() const {
    // group by length: mass = sum_len count(len) / 2^len
    std::vector<uint64_t> count_by_m(64, 0);
    for (const auto& r : records) {
      if (r.status == Verdict::Halted) ++count_by_m[r.m];
    }
    Dyadic total;
    for (size_t m = 0; m < count_by_m.size(); ++m) {
      if (count_by_m[m]) {
        total += Dyadic(BigNat(count_by_m[m]), program_length(static_cast<unsigned>(m)));
      }
    }
    return total;
  }

  const ProgramRecord* find(std::string_view bits) const {
    auto key = record_key_of(bits);
    if (!key) return nullptr;
    ProgramRecord probe;
    probe.m = key->first;
    probe.body = key->second;
    auto it = std::lower_bound(records.begin(), records.end(), probe);
    if (it == records.end() || it->m != probe.m || it->body != probe.body)
      return nullptr;
    return &*it;
  }

  static std::string record_line(const ProgramRecord& r) {
    std::string line = r.bits();
    line.push_back('\t');
    line.push_back(static_cast<char>(r.status));
    line.push_back('\t');
    if (r.status == Verdict::Halted) {
      line.append(r.output);
      line.push_back('\t');
      line.append(std::to_string(r.steps));
    } else {
      line.append("-\t-");
    }
    return line;
  }

  std::string serialize() const {
    std::string out = "#aitlab-store\t";
    out += kFormatVersion;
    out += "\tL=" + std::to_string(max_len);
    out += "\tfuel=" + std::to_string(fuel_horizon);
    if (!aux_y.empty()) out += "\taux=" + aux_y;
    out.push_back('\n');
    for (const auto& r : records) {
      out += record_line(r);
      out.push_back('\n');
    }
    return out;
  }

  static EnumStore parse(std::string_view text) {
    EnumStore store;
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw StoreFormatError("empty store file");
    parse_header(line, store);
    const ProgramRecord* prev = nullptr;
    while (std::getline(in, line)) {
      if (line.empty()) throw StoreFormatError("blank record line");
      store.records.push_back(parse_record(line, store.max_len));
      if (prev && !(*prev < store.records.back())) {
        throw StoreFormatError("records out of canonical order: " + line);
      }
      prev = &store.records.back();
    }
    return store;
  }

  // write-new-then-swap: a failed save never corrupts an existing snapshot
  void save(const std::string& path) const {
    namespace fs = std::filesystem;
    std::string tmp = path + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw StoreIoError("cannot write " + tmp);
      out << serialize();
      out.flush();
      if (!out) {
        std::error_code ec;
        fs::remove(tmp, ec);
        throw StoreIoError("failed writing " + tmp);
      }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
      fs::remove(tmp, ec);
      throw StoreIoError("cannot replace " + path);
    }
  }

  static EnumStore load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StoreIoError("cannot open store: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
  }

 private:
  static void parse_header(std::string_view line, EnumStore& store) {
    auto fields = split_tabs(line);
    if (fields.size() < 4 || fields[0] != "#aitlab-store" ||
        fields[1] != kFormatVersion) {
      throw StoreFormatError("bad store header");
    }
    bool have_l = false, have_fuel = false;
    for (size_t i = 2; i < fields.size(); ++i) {
      std::string_view f = fields[i];
      if (f.rfind("L=", 0) == 0) {
        parse_number(f.substr(2), store.max_len);
        have_l = true;
      } else if (f.rfind("fuel=", 0) == 0) {
        parse_number(f.substr(5), store.fuel_horizon);
        have_fuel = true;
      } else if (f.rfind("aux=", 0) == 0) {
        store.aux_y = std::string(f.substr(4));
        if (!is_bit_string(store.aux_y)) throw StoreFormatError("bad aux field");
      } else {
        throw StoreFormatError("unknown header field: " + std::string(f));
      }
    }
    if (!have_l || !have_fuel) throw StoreFormatError("incomplete store header");
  }

  static ProgramRecord parse_record(std::string_view line, unsigned max_len) {
    auto fields = split_tabs(line);
    if (fields.size() != 4) throw StoreFormatError("bad record: " + std::string(line));
    auto key = record_key_of(fields[0]);
    if (!key) throw StoreFormatError("invalid program bits: " + std::string(fields[0]));
    ProgramRecord r;
    r.m = key->first;
    r.body = key->second;
    if (r.length() > max_len) {
      throw StoreFormatError("record longer than declared L: " + std::string(fields[0]));
    }
    if (fields[1].size() != 1) throw StoreFormatError("bad status: " + std::string(line));
    switch (fields[1][0]) {
      case 'H': {
        r.status = Verdict::Halted;
        if (!is_bit_string(fields[2]))
          throw StoreFormatError("bad output: " + std::string(line));
        r.output = std::string(fields[2]);
        uint64_t steps = 0;
        parse_number(fields[3], steps);
        r.steps = steps;
        break;
      }
      case 'C':
      case 'U':
        r.status = fields[1][0] == 'C' ? Verdict::Certified : Verdict::Undecided;
        if (fields[2] != "-" || fields[3] != "-")
          throw StoreFormatError("unexpected payload: " + std::string(line));
        break;
      default:
        throw StoreFormatError("bad status: " + std::string(line));
    }
    return r;
  }

  static std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    size_t start = 0;
    while (true) {
      size_t tab = line.find('\t', start);
      if (tab == std::string_view::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    return fields;
  }

  template <typename T>
  static void parse_number(std::string_view digits, T& out) {
    if (digits.empty()) throw StoreFormatError("empty numeric field");
    uint64_t v = 0;
    for (char c : digits) {
      if (c < '0' || c > '9') throw StoreFormatError("bad numeric field");
      v = v * 10 + static_cast<uint64_t>(c - '0');
    }
    out = static_cast<T>(v);
  }
};

}  // namespace aitlab
