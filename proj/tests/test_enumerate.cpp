#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <filesystem>
#include <string>
#include <vector>

#include "aitlab/enumerate.hpp"
#include "reference_enumerator.hpp"

using namespace aitlab;
namespace fs = std::filesystem;

TEST_CASE("program generation counts match the bracket grammar") {
  // hand counts: m=0 -> 1; m=1 -> 6 of 8 bodies; m=2 -> 6^2+1; m=3 -> 6^3+3*6
  CHECK(generate_programs(1).size() == 1);
  CHECK(generate_programs(5).size() == 1 + 6);
  CHECK(generate_programs(9).size() == 1 + 6 + 37);
  CHECK(generate_programs(13).size() == 1 + 6 + 37 + 234);
  CHECK(generate_programs(4).size() == 1);  // lengths 2..4 hold no programs
  CHECK_THROWS_AS(generate_programs(42), std::invalid_argument);
}

TEST_CASE("the only length-1 store is a single halted record") {
  EnumStore store;
  enumerate(store, 1, FuelSchedule{{8}});
  REQUIRE(store.records.size() == 1);
  CHECK(store.records[0].bits() == "0");
  CHECK(store.records[0].status == Verdict::Halted);
  CHECK(store.records[0].steps == 0);
  CHECK(store.records[0].output.empty());
  CHECK(store.complete());
  CHECK(store.kraft_mass().to_string() == "1/2^1");
  auto t = store.decided_fraction();
  CHECK(t.halted == 1);
  CHECK(t.certified == 0);
  CHECK(t.undecided == 0);
}

TEST_CASE("L=5 store: hand-enumerated verdicts") {
  EnumStore store;
  enumerate(store, 5, FuelSchedule::powers_of_two(16));
  // 6 valid one-instruction programs, 5 of them silent, OUT prints "0"
  REQUIRE(store.records.size() == 7);
  CHECK(store.complete());
  const ProgramRecord* out_prog = store.find("10011");
  REQUIRE(out_prog);
  CHECK(out_prog->output == "0");
  CHECK(store.kraft_mass().to_string() == "11/2^4");
  auto t = store.decided_fraction();
  CHECK(t.halted == 7);
  CHECK(t.undecided == 0);
}

TEST_CASE("dovetailed result equals the naive single-pass oracle") {
  for (unsigned L : {5u, 9u, 13u}) {
    EnumStore dovetailed;
    enumerate(dovetailed, L, FuelSchedule::powers_of_two(64));
    EnumStore naive = aitlab_test::naive_reference_store(L, 64);
    INFO("L=" << L);
    CHECK(dovetailed.serialize() == naive.serialize());
  }
}

TEST_CASE("result is independent of the fuel schedule split") {
  EnumStore direct;
  enumerate(direct, 13, FuelSchedule{{64}});
  for (const auto& fuels :
       std::vector<std::vector<uint64_t>>{{8, 64}, {1, 2, 4, 8, 16, 32, 64},
                                          {3, 17, 64}}) {
    EnumStore staged;
    enumerate(staged, 13, FuelSchedule{fuels});
    CHECK(staged.serialize() == direct.serialize());
  }
}

TEST_CASE("result is independent of the worker count") {
  EnumStore single;
  enumerate(single, 13, FuelSchedule::powers_of_two(64));
  for (unsigned workers : {2u, 3u, 7u}) {
    EnumStore parallel;
    EnumerateOptions opts;
    opts.workers = workers;
    enumerate(parallel, 13, FuelSchedule::powers_of_two(64), opts);
    INFO("workers=" << workers);
    CHECK(parallel.serialize() == single.serialize());
  }
}

TEST_CASE("every mid-run snapshot satisfies kraft and prefix-freeness") {
  EnumStore store;
  EnumerateOptions opts;
  size_t stages_seen = 0;
  opts.on_stage = [&](const EnumStore& snapshot, uint64_t fuel) {
    ++stages_seen;
    INFO("fuel=" << fuel);
    CHECK(snapshot.kraft_mass() <= Dyadic::one());
    std::vector<std::string> halted;
    for (const auto& r : snapshot.records) {
      if (r.status == Verdict::Halted) halted.push_back(r.bits());
    }
    std::sort(halted.begin(), halted.end());
    for (size_t i = 0; i + 1 < halted.size(); ++i) {
      CHECK(halted[i + 1].rfind(halted[i], 0) != 0);
    }
  };
  enumerate(store, 13, FuelSchedule::powers_of_two(64), opts);
  CHECK(stages_seen == 7);  // fuels 1,2,4,8,16,32,64
}

TEST_CASE("fuel horizon only grows and halted verdicts are immutable") {
  EnumStore store;
  enumerate(store, 13, FuelSchedule::powers_of_two(4));
  auto before = store;
  enumerate(store, 13, FuelSchedule::powers_of_two(64));
  CHECK(store.fuel_horizon == 64);
  for (const auto& r : before.records) {
    if (r.status != Verdict::Halted) continue;
    const ProgramRecord* now = store.find(r.bits());
    REQUIRE(now);
    CHECK(now->status == Verdict::Halted);
    CHECK(now->steps == r.steps);
    CHECK(now->output == r.output);
  }
}

TEST_CASE("resume never re-runs decided programs") {
  fs::path dir = fs::temp_directory_path() /
                 ("aitlab_enum_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string path = (dir / "resume.tsv").string();

  EnumStore store;
  EnumerateOptions opts;
  opts.persist_path = path;
  enumerate(store, 9, FuelSchedule::powers_of_two(16), opts);

  // plant a sentinel on a decided record; a re-run would overwrite it
  EnumStore resumed = EnumStore::load(path);
  for (auto& r : resumed.records) {
    if (r.bits() == "10011") r.steps = 7777;
  }
  enumerate(resumed, 13, FuelSchedule::powers_of_two(16));
  CHECK(resumed.find("10011")->steps == 7777);
  CHECK(resumed.max_len == 13);

  // the resumed store otherwise matches a fresh run
  for (auto& r : resumed.records) {
    if (r.bits() == "10011") r.steps = 1;
  }
  EnumStore fresh;
  enumerate(fresh, 13, FuelSchedule::powers_of_two(16));
  CHECK(resumed.serialize() == fresh.serialize());

  std::error_code ec;
  fs::remove_all(dir, ec);
}

TEST_CASE("extending the cap requires a schedule reaching the old horizon") {
  EnumStore store;
  enumerate(store, 5, FuelSchedule::powers_of_two(64));
  CHECK_THROWS_AS(enumerate(store, 9, FuelSchedule{{16}}), std::invalid_argument);
  enumerate(store, 9, FuelSchedule{{64}});  // reaching it is fine
  CHECK(store.max_len == 9);
  CHECK(store.complete());
}

TEST_CASE("auxiliary input is pinned to the store") {
  EnumStore store;
  EnumerateOptions opts;
  opts.aux_y = "1";
  enumerate(store, 5, FuelSchedule{{16}}, opts);
  EnumerateOptions other;
  other.aux_y = "0";
  CHECK_THROWS_AS(enumerate(store, 9, FuelSchedule{{16}}, other),
                  std::invalid_argument);
}

TEST_CASE("input validation") {
  EnumStore store;
  CHECK_THROWS_AS(enumerate(store, 0, FuelSchedule{{4}}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate(store, 5, FuelSchedule{}), std::invalid_argument);
  CHECK_FALSE(FuelSchedule::parse(""));
  CHECK_FALSE(FuelSchedule::parse("4,2"));    // not increasing
  CHECK_FALSE(FuelSchedule::parse("0,4"));    // zero fuel
  CHECK_FALSE(FuelSchedule::parse("1,,4"));
  CHECK_FALSE(FuelSchedule::parse("1,x"));
  auto sched = FuelSchedule::parse("1,8,64");
  REQUIRE(sched);
  CHECK(sched->fuels == std::vector<uint64_t>{1, 8, 64});
  CHECK(FuelSchedule::powers_of_two(64).fuels ==
        std::vector<uint64_t>{1, 2, 4, 8, 16, 32, 64});
  CHECK(FuelSchedule::powers_of_two(100).fuels ==
        std::vector<uint64_t>{1, 2, 4, 8, 16, 32, 64, 100});
}
