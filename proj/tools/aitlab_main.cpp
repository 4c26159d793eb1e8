// aitlab command line: enumeration runs, complexity/depth queries, table
// exports and the store invariant suite. All stdout is deterministic given
// (store, flags); masses print as exact "num/2^k" literals, never floats.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "aitlab/aitlab.hpp"

namespace {

using nlohmann::json;

// exit codes beyond the usual 0/1
constexpr int kExitIo = 2;         // store missing or unreadable
constexpr int kExitBadArg = 3;     // malformed bit-string / argument domain
constexpr int kExitHorizon = 4;    // query beyond the store fuel horizon
constexpr int kExitFormat = 5;     // corrupt store file

struct Options {
  std::string store_path;
  std::string format = "tsv";
  bool jsonl() const { return format == "jsonl"; }
};

std::string opt_str(const std::optional<unsigned>& v) {
  return v ? std::to_string(*v) : "-";
}
std::string opt_str64(const std::optional<uint64_t>& v) {
  return v ? std::to_string(*v) : "-";
}
const char* bool_str(bool b) { return b ? "true" : "false"; }

json opt_json(const std::optional<uint64_t>& v) {
  return v ? json(*v) : json(nullptr);
}

aitlab::EnumStore load_store(const Options& opt) {
  if (opt.store_path.empty()) {
    throw aitlab::StoreIoError("no store given: use --store or set AITLAB_STORE");
  }
  return aitlab::EnumStore::load(opt.store_path);
}

std::string require_bits(const std::string& s, const char* what) {
  if (!aitlab::is_bit_string(s)) {
    throw std::domain_error(std::string(what) + " must be a bit-string over 0/1");
  }
  return s;
}

void add_store_opts(CLI::App* cmd, Options& opt) {
  const char* env = std::getenv("AITLAB_STORE");
  if (env && opt.store_path.empty()) opt.store_path = env;
  cmd->add_option("--store", opt.store_path, "store snapshot path");
  cmd->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"tsv", "jsonl"}));
}

int run_cli(int argc, char** argv) {
  CLI::App app{"aitlab: exact complexity, depth and busy-beaver tables for a toy prefix-free machine"};
  app.require_subcommand(1);
  Options opt;

  // ---- enumerate ----
  auto* c_enum = app.add_subcommand("enumerate", "run all programs up to a length cap");
  unsigned max_len = 0;
  uint64_t fuel_max = uint64_t(1) << 20;
  std::string schedule_csv, aux_y;
  unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  bool no_detector = false;
  c_enum->add_option("--max-len", max_len, "length cap L")->required();
  c_enum->add_option("--fuel-max", fuel_max, "final fuel (schedule doubles up to it)");
  c_enum->add_option("--schedule", schedule_csv, "explicit increasing fuel list, comma separated");
  c_enum->add_option("--workers", workers, "worker threads (result is identical for any count)");
  c_enum->add_option("--aux-y", aux_y, "conditional input y; the machine reads the stream 1^|y| 0 y 000...");
  c_enum->add_flag("--no-detector", no_detector, "disable the non-halting cycle detector");
  add_store_opts(c_enum, opt);

  // ---- query commands ----
  std::string x_bits, eps_str, scheme, value;
  std::optional<uint64_t> d_opt;
  unsigned b = 0;
  unsigned slack = 0;
  std::optional<unsigned> census_k;
  bool k_table = false, decode_flag = false;

  auto* c_k = app.add_subcommand("k", "K(x): shortest-program length (time-bounded with --d)");
  c_k->add_option("--x", x_bits, "the string")->required();
  c_k->add_option("--d", d_opt, "fuel bound");
  c_k->add_flag("--table", k_table, "emit (x, d, value, exact) at every change point");
  add_store_opts(c_k, opt);

  auto* c_q = app.add_subcommand("q", "Q^d(x): exact program mass for x");
  c_q->add_option("--x", x_bits, "the string")->required();
  c_q->add_option("--d", d_opt, "fuel bound (default: horizon)");
  add_store_opts(c_q, opt);

  auto* c_depth = app.add_subcommand("depth", "ld2: min running time over b-incompressible programs");
  c_depth->add_option("--x", x_bits, "the string")->required();
  c_depth->add_option("--b", b, "significance");
  add_store_opts(c_depth, opt);

  auto* c_depth1 = app.add_subcommand("depth1", "ld1: min d with Q^d(x) >= eps * Q(x)");
  c_depth1->add_option("--x", x_bits, "the string")->required();
  c_depth1->add_option("--eps", eps_str, "dyadic in (0,1], e.g. 1/2 or 3/2^3")->required();
  add_store_opts(c_depth1, opt);

  auto* c_curve = app.add_subcommand("curve", "depth curve of x over b = 0..b_max");
  c_curve->add_option("--x", x_bits, "the string")->required();
  add_store_opts(c_curve, opt);

  auto* c_gaps = app.add_subcommand("gaps", "consecutive-significance depth gaps of x");
  c_gaps->add_option("--x", x_bits, "the string")->required();
  add_store_opts(c_gaps, opt);

  auto* c_bb = app.add_subcommand("bb", "busy beaver table of the store");
  add_store_opts(c_bb, opt);

  auto* c_t1 = app.add_subcommand("theorem1", "two-sided Q^d/Q ratio bound report at (x, b)");
  c_t1->add_option("--x", x_bits, "the string")->required();
  c_t1->add_option("--b", b, "significance");
  c_t1->add_option("--c", slack, "slack constant added to the left exponent");
  add_store_opts(c_t1, opt);

  auto* c_kraft = app.add_subcommand("kraft", "exact halted program mass");
  add_store_opts(c_kraft, opt);

  auto* c_census = app.add_subcommand("census", "count of strings with K <= k");
  c_census->add_option("--k", census_k, "single bound (default: all k <= L)");
  add_store_opts(c_census, opt);

  auto* c_encode = app.add_subcommand("encode", "self-delimiting codes and the nat/string bijection");
  c_encode->add_option("--scheme", scheme, "bar | prime | nat")->required()
      ->check(CLI::IsMember({"bar", "prime", "nat"}));
  c_encode->add_flag("--decode", decode_flag, "invert the code");
  c_encode->add_option("value", value, "payload bits (or a decimal for nat)")->required();

  auto* c_self = app.add_subcommand("selfcheck", "run the invariant suite; nonzero exit on violation");
  add_store_opts(c_self, opt);

  CLI11_PARSE(app, argc, argv);

  if (*c_enum) {
    aitlab::FuelSchedule schedule;
    if (!schedule_csv.empty()) {
      auto parsed = aitlab::FuelSchedule::parse(schedule_csv);
      if (!parsed) throw std::domain_error("bad --schedule: want a strictly increasing fuel list");
      schedule = *parsed;
    } else {
      schedule = aitlab::FuelSchedule::powers_of_two(fuel_max);
    }
    if (opt.store_path.empty()) {
      throw aitlab::StoreIoError("enumerate needs --store (or AITLAB_STORE)");
    }
    aitlab::EnumStore store;
    if (std::filesystem::exists(opt.store_path)) {
      store = aitlab::EnumStore::load(opt.store_path);
    }
    aitlab::EnumerateOptions eopts;
    eopts.workers = std::max(1u, workers);
    eopts.detector = !no_detector;
    eopts.aux_y = require_bits(aux_y, "--aux-y");
    eopts.persist_path = opt.store_path;
    aitlab::enumerate(store, max_len, schedule, eopts);
    auto t = store.decided_fraction();
    std::cerr << "store " << opt.store_path << ": L=" << store.max_len
              << " fuel=" << store.fuel_horizon << " halted=" << t.halted
              << " certified=" << t.certified << " undecided=" << t.undecided
              << "\n";
    return 0;
  }

  if (*c_encode) {
    std::string out;
    if (scheme == "nat") {
      if (decode_flag) {
        auto n = aitlab::string_to_nat(require_bits(value, "value"));
        if (!n) throw std::domain_error("bit-string too long for the nat bijection");
        out = std::to_string(*n);
      } else {
        uint64_t n = 0;
        for (char c : value) {
          if (c < '0' || c > '9') throw std::domain_error("nat encode wants a decimal number");
          n = n * 10 + static_cast<uint64_t>(c - '0');
        }
        out = aitlab::nat_to_string(n);
      }
    } else {
      bool bar = scheme == "bar";
      if (decode_flag) {
        auto payload = bar ? aitlab::bar_decode(require_bits(value, "value"))
                           : aitlab::prime_decode(require_bits(value, "value"));
        if (!payload) throw std::domain_error("not a well-formed " + scheme + " code");
        out = *payload;
      } else {
        out = bar ? aitlab::bar_encode(require_bits(value, "value"))
                  : aitlab::prime_encode(require_bits(value, "value"));
      }
    }
    if (opt.jsonl()) {
      std::cout << json{{"scheme", scheme}, {"decode", decode_flag}, {"result", out}} << "\n";
    } else {
      std::cout << out << "\n";
    }
    return 0;
  }

  // every remaining subcommand reads a store
  aitlab::EnumStore store = load_store(opt);
  aitlab::KTable kt(store);

  if (*c_k) {
    require_bits(x_bits, "--x");
    if (k_table) {
      uint64_t last = store.fuel_horizon;
      std::optional<unsigned> prev;
      for (uint64_t d = 0; d <= last; ++d) {
        auto v = kt.k_bounded(x_bits, d);
        if (d != 0 && v == prev) continue;  // change points only
        if (opt.jsonl()) {
          std::cout << json{{"x", x_bits}, {"d", d}, {"value", v ? json(*v) : json(nullptr)},
                            {"exact", store.complete()}} << "\n";
        } else {
          std::cout << x_bits << '\t' << d << '\t' << opt_str(v) << '\t'
                    << bool_str(store.complete()) << "\n";
        }
        prev = v;
      }
    } else if (d_opt) {
      auto v = kt.k_bounded(x_bits, *d_opt);
      if (opt.jsonl()) {
        std::cout << json{{"x", x_bits}, {"d", *d_opt}, {"value", v ? json(*v) : json(nullptr)}} << "\n";
      } else {
        std::cout << opt_str(v) << "\n";
      }
    } else {
      auto r = kt.k_horizon(x_bits);
      if (opt.jsonl()) {
        std::cout << json{{"x", x_bits},
                          {"value", r.value ? json(*r.value) : json(nullptr)},
                          {"witness", r.value ? json(r.witness) : json(nullptr)},
                          {"exact", r.exact}} << "\n";
      } else {
        std::cout << opt_str(r.value) << "\twitness=" << (r.value ? r.witness : "-")
                  << "\texact=" << bool_str(r.exact) << "\n";
      }
    }
    return 0;
  }

  if (*c_q) {
    require_bits(x_bits, "--x");
    uint64_t d = d_opt.value_or(store.fuel_horizon);
    auto mass = kt.q_bounded(x_bits, d);
    if (opt.jsonl()) {
      std::cout << json{{"x", x_bits}, {"d", d}, {"mass", mass.to_string()},
                        {"L", store.max_len}} << "\n";
    } else {
      std::cout << mass.to_string() << "\n";
    }
    return 0;
  }

  if (*c_depth) {
    require_bits(x_bits, "--x");
    auto r = aitlab::ld2(kt, x_bits, b);
    if (opt.jsonl()) {
      std::cout << json{{"x", x_bits}, {"b", b}, {"steps", opt_json(r.steps)},
                        {"witness", r.steps ? json(r.witness) : json(nullptr)},
                        {"exact", r.exact}} << "\n";
    } else {
      std::cout << opt_str64(r.steps) << "\twitness=" << (r.steps ? r.witness : "-")
                << "\texact=" << bool_str(r.exact) << "\n";
    }
    return 0;
  }

  if (*c_depth1) {
    require_bits(x_bits, "--x");
    auto eps = aitlab::Dyadic::parse(eps_str);
    if (!eps) throw std::domain_error("--eps must be a dyadic like 1/2 or 3/2^3");
    auto r = aitlab::ld1(kt, x_bits, *eps);
    if (opt.jsonl()) {
      std::cout << json{{"x", x_bits}, {"eps", eps->to_string()},
                        {"d", opt_json(r.d)}, {"exact", r.exact}} << "\n";
    } else {
      std::cout << opt_str64(r.d) << "\texact=" << bool_str(r.exact) << "\n";
    }
    return 0;
  }

  if (*c_curve) {
    require_bits(x_bits, "--x");
    auto curve = aitlab::depth_curve(kt, x_bits);
    if (!opt.jsonl()) {
      std::cout << "# x=" << (x_bits.empty() ? "(empty)" : x_bits)
                << " b_max=" << curve.b_max << " exact=" << bool_str(curve.exact)
                << "\n";
    }
    for (const auto& pt : curve.points) {
      if (opt.jsonl()) {
        std::cout << json{{"x", x_bits}, {"b", pt.b}, {"ld2", opt_json(pt.steps)},
                          {"witness", pt.steps ? json(pt.witness) : json(nullptr)},
                          {"ld2_alt", opt_json(pt.alt_steps)}} << "\n";
      } else {
        std::cout << pt.b << '\t' << opt_str64(pt.steps) << '\t'
                  << (pt.steps ? pt.witness : "-") << '\t' << opt_str64(pt.alt_steps)
                  << "\n";
      }
    }
    return 0;
  }

  if (*c_gaps) {
    require_bits(x_bits, "--x");
    auto rep = aitlab::gap_report(kt, x_bits);
    for (const auto& [gb, gap] : rep.gaps) {
      if (opt.jsonl()) {
        std::cout << json{{"x", x_bits}, {"b", gb}, {"gap", gap}} << "\n";
      } else {
        std::cout << gb << '\t' << gap << "\n";
      }
    }
    if (opt.jsonl()) {
      std::cout << json{{"x", x_bits}, {"i_max", rep.i_max}, {"h", rep.h},
                        {"exact", rep.exact}} << "\n";
    } else {
      std::cout << "# i_max=" << rep.i_max << " h=" << rep.h
                << " exact=" << bool_str(rep.exact) << "\n";
    }
    return 0;
  }

  if (*c_bb) {
    for (const auto& e : aitlab::bb_table(store)) {
      if (opt.jsonl()) {
        std::cout << json{{"n", e.n}, {"value", e.value}, {"champion", e.champion},
                          {"exact", e.exact}} << "\n";
      } else {
        std::cout << e.n << '\t' << e.value << '\t' << e.champion << '\t'
                  << bool_str(e.exact) << "\n";
      }
    }
    return 0;
  }

  if (*c_t1) {
    require_bits(x_bits, "--x");
    auto rep = aitlab::depth_ratio_report(kt, x_bits, b, slack);
    if (opt.jsonl()) {
      std::cout << json{{"x", rep.x},
                        {"b", rep.b},
                        {"c", rep.slack},
                        {"d", rep.d},
                        {"ratio", rep.ratio.to_string()},
                        {"right_threshold", rep.right_threshold.to_string()},
                        {"right_ok", rep.right_ok},
                        {"min_k", rep.min_k},
                        {"min_k_lower_bound", rep.min_k_is_lower_bound},
                        {"left_threshold", rep.left_threshold.to_string()},
                        {"left_ok", rep.left_ok},
                        {"exact", rep.exact}} << "\n";
    } else {
      std::cout << "x=" << (rep.x.empty() ? "(empty)" : rep.x) << "\tb=" << rep.b
                << "\tc=" << rep.slack << "\td=" << rep.d
                << "\tratio=" << rep.ratio.to_string()
                << "\tright_threshold=" << rep.right_threshold.to_string()
                << "\tright_ok=" << bool_str(rep.right_ok)
                << "\tmin_k=" << rep.min_k
                << "\tmin_k_lower_bound=" << bool_str(rep.min_k_is_lower_bound)
                << "\tleft_threshold=" << rep.left_threshold.to_string()
                << "\tleft_ok=" << bool_str(rep.left_ok)
                << "\texact=" << bool_str(rep.exact) << "\n";
    }
    return 0;
  }

  if (*c_kraft) {
    auto mass = store.kraft_mass();
    if (opt.jsonl()) {
      std::cout << json{{"kraft", mass.to_string()}, {"L", store.max_len},
                        {"fuel", store.fuel_horizon}} << "\n";
    } else {
      std::cout << mass.to_string() << "\n";
    }
    return 0;
  }

  if (*c_census) {
    unsigned lo = census_k.value_or(0);
    unsigned hi = census_k.value_or(store.max_len);
    if (hi > store.max_len) throw std::domain_error("--k beyond the store length cap");
    for (unsigned k = lo; k <= hi; ++k) {
      auto c = kt.census(k);
      if (opt.jsonl()) {
        std::cout << json{{"k", k}, {"count", c.count}, {"exact", c.exact}} << "\n";
      } else {
        std::cout << k << '\t' << c.count << '\t' << bool_str(c.exact) << "\n";
      }
    }
    return 0;
  }

  if (*c_self) {
    auto sc = aitlab::selfcheck(store);
    for (const auto& e : sc.entries) {
      if (e.violations == 0) {
        std::cout << "ok\t" << e.name << "\n";
      } else {
        std::cout << "FAIL\t" << e.name << "\tviolations=" << e.violations
                  << (e.first_violation.empty() ? "" : "\tfirst=" + e.first_violation)
                  << "\n";
      }
    }
    auto t = store.decided_fraction();
    std::cout << "# halted=" << t.halted << " certified=" << t.certified
              << " undecided=" << t.undecided
              << " complete=" << bool_str(store.complete()) << "\n";
    return sc.ok() ? 0 : 1;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const aitlab::HorizonError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitHorizon;
  } catch (const aitlab::StoreFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const aitlab::StoreIoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArg;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArg;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
