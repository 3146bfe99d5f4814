// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "liss/vm.hpp"

using namespace liss::vm;
using liss::logic::Sort;
using liss::logic::Value;

TEST_CASE("load + run: straight-line arithmetic") {
  auto m = load_module_text("PUSH 2; PUSH 3; ADD; PRINT; HALT");
  REQUIRE(m.functions.size() == 1);
  CHECK(m.functions[0].name == "main");
  auto r = run(m, "main", {}, 1000);
  REQUIRE(r.status == RunResult::Status::Ok);
  CHECK(r.outputs == std::vector<long long>{5});
}

TEST_CASE("load: jump to undefined label is malformed") {
  CHECK_THROWS_AS(load_module_text("JMP nowhere; HALT"), MalformedModule);
}

TEST_CASE("load: JZ with an empty stack on some path is malformed") {
  // Hand simulation: entry reaches JZ with height 0; JZ must pop. The
  // loader's fixed point finds the underflow before execution ever could.
  try {
    load_module_text("L0: JZ L0\nHALT");
    FAIL("expected MalformedModule");
  } catch (const MalformedModule& e) {
    CHECK(std::string(e.what()).find("underflow") != std::string::npos);
  }
}

TEST_CASE("load: sort clashes rejected") {
  // ADD over a bool
  CHECK_THROWS_AS(load_module_text("PUSH 1; PUSH 1; EQ; PUSH 2; ADD; PRINT; HALT"),
                  MalformedModule);
  // EQ over mismatched sorts
  CHECK_THROWS_AS(load_module_text("NEWSET; PUSH 1; EQ; NOT; JZ L;L: HALT"), MalformedModule);
  // stack height mismatch at a join
  CHECK_THROWS_AS(
      load_module_text("PUSH 1; PUSH 1; LE; JZ L0\nPUSH 5\nL0: HALT"), MalformedModule);
}

TEST_CASE("run: div by zero traps as a value") {
  auto m = load_module_text("PUSH 1; PUSH 0; DIV; PRINT; HALT");
  auto r = run(m, "main", {}, 1000);
  REQUIRE(r.status == RunResult::Status::Trap);
  CHECK(r.trap == TrapKind::DivByZero);
  CHECK(r.trap_pc == 2);
}

TEST_CASE("run: vector ops, bounds trap") {
  auto m = load_module_text(
      "fn main params 0 locals 1 returns none\n"
      "#var 0 v vec\n"
      "PUSH 2; NEWVEC; STORE 0\n"
      "LOAD 0; PUSH 5; GETIDX; PRINT; HALT\n"
      "end\n");
  auto r = run(m, "main", {}, 1000);
  REQUIRE(r.status == RunResult::Status::Trap);
  CHECK(r.trap == TrapKind::OutOfBounds);
}

TEST_CASE("run: sets behave as values") {
  // card({1,2} union {2}) printed
  auto m = load_module_text(
      "NEWSET; PUSH 1; SINS; PUSH 2; SINS\n"
      "NEWSET; PUSH 2; SINS\n"
      "SUNION; SCARD; PRINT; HALT");
  auto r = run(m, "main", {}, 1000);
  REQUIRE(r.status == RunResult::Status::Ok);
  CHECK(r.outputs == std::vector<long long>{2});
}

TEST_CASE("run: read consumes inputs in order; exhaustion traps") {
  auto m = load_module_text("READ; PRINT; READ; PRINT; HALT");
  auto r = run(m, "main", {7, -2}, 100);
  REQUIRE(r.status == RunResult::Status::Ok);
  CHECK(r.outputs == std::vector<long long>({7, -2}));
  auto r2 = run(m, "main", {7}, 100);
  REQUIRE(r2.status == RunResult::Status::Trap);
  CHECK(r2.trap == TrapKind::InputExhausted);
}

TEST_CASE("run: calls push and pop frames") {
  const char* text =
      "fn inc params 1 locals 0 returns int\n"
      "#var 0 s0 int\n"
      "  LOAD 0\n"
      "  PUSH 1\n"
      "  ADD\n"
      "  RET\n"
      "end\n"
      "fn main params 0 locals 0 returns none\n"
      "  PUSH 41\n"
      "  CALL inc\n"
      "  PRINT\n"
      "  HALT\n"
      "end\n";
  auto m = load_module_text(text);
  auto r = run(m, "main", {}, 1000);
  REQUIRE(r.status == RunResult::Status::Ok);
  CHECK(r.outputs == std::vector<long long>{42});
}

TEST_CASE("run: fuel limit and monotonicity") {
  auto m = load_module_text(
      "PUSH 0; STORE 0\n"
      "L: LOAD 0; PUSH 1; ADD; STORE 0\n"
      "LOAD 0; PUSH 100; LT; NOT; JZ L\n"
      "LOAD 0; PRINT; HALT");
  auto tiny = run(m, "main", {}, 5);
  CHECK(tiny.status == RunResult::Status::OutOfFuel);
  auto enough = run(m, "main", {}, 100000);
  REQUIRE(enough.status == RunResult::Status::Ok);
  // fuel monotonicity: any larger budget gives the identical outcome
  auto more = run(m, "main", {}, 200000);
  CHECK(enough.outputs == more.outputs);
  CHECK(enough.status == more.status);
}

TEST_CASE("run: determinism") {
  auto m = load_module_text("READ; PUSH 3; MUL; PRINT; HALT");
  auto a = run(m, "main", {-2}, 50);
  auto b = run(m, "main", {-2}, 50);
  CHECK(a.status == b.status);
  CHECK(a.outputs == b.outputs);
}

TEST_CASE("assembly: annotated function round-trips through text") {
  const char* text =
      "fn sum params 1 locals 2 returns int\n"
      "#var 0 s0 int\n"
      "#var 1 s1 int\n"
      "#var 2 s2 int\n"
      "#requires (le 0 s0)\n"
      "#ensures (eq (mul 2 result) (mul old_s0 (add old_s0 1)))\n"
      "#invariant LH (and (le 0 s1) (le s1 s0))\n"
      "  PUSH 0\n"
      "  STORE 1\n"
      "LH:\n"
      "  LOAD 1\n"
      "  LOAD 0\n"
      "  LT\n"
      "  JZ LX\n"
      "  LOAD 1\n"
      "  PUSH 1\n"
      "  ADD\n"
      "  STORE 1\n"
      "  JMP LH\n"
      "LX:\n"
      "  LOAD 1\n"
      "  RET\n"
      "end\n";
  auto m = parse_assembly(text);
  REQUIRE(m.functions.size() == 1);
  const auto& fn = m.functions[0];
  CHECK(fn.param_count == 1);
  CHECK(fn.table.invariants.size() == 1);
  CHECK(fn.table.invariants.begin()->first == 2);
  std::string printed = print_assembly(m);
  auto m2 = parse_assembly(printed);
  CHECK(print_assembly(m2) == printed);
}

TEST_CASE("binary codec: deterministic and strict") {
  const char* text =
      "fn f params 1 locals 1 returns int\n"
      "#var 0 a int\n"
      "#var 1 b int\n"
      "#requires (le 0 a)\n"
      "#ensures (le 0 result)\n"
      "  LOAD 0\n"
      "  STORE 1\n"
      "  LOAD 1\n"
      "  RET\n"
      "end\n"
      "fn main params 0 locals 0 returns none\n"
      "  PUSH 3\n"
      "  CALL f\n"
      "  PRINT\n"
      "  HALT\n"
      "end\n";
  auto m = load_module_text(text);
  auto bytes = encode_module(m);
  auto bytes2 = encode_module(m);
  CHECK(bytes == bytes2);
  auto back = decode_module(bytes);
  CHECK(encode_module(back) == bytes);
  verify_module(back);

  // strictness: truncations and bit flips must never escape as anything
  // but MalformedModule
  for (size_t cut = 0; cut < bytes.size(); cut += 7) {
    std::vector<uint8_t> trunc(bytes.begin(), bytes.begin() + (long)cut);
    CHECK_THROWS_AS(decode_module(trunc), MalformedModule);
  }
  int rejected = 0, survived = 0;
  for (size_t k = 0; k < bytes.size(); k += 3) {
    auto mutated = bytes;
    mutated[k] ^= 0x41;
    try {
      auto dm = decode_module(mutated);
      verify_module(dm);
      ++survived;  // structurally valid different module: fine here
    } catch (const MalformedModule&) {
      ++rejected;
    }
    catch (const std::exception&) {
      FAIL("wrong exception type for corrupted module");
    }
  }
  CHECK(rejected > 0);
  (void)survived;
}

TEST_CASE("loader: invariant labels must carry an empty stack") {
  const char* text =
      "fn main params 0 locals 1 returns none\n"
      "#var 0 s0 int\n"
      "#invariant L (le 0 s0)\n"
      "  PUSH 1\n"
      "L:\n"
      "  STORE 0\n"
      "  HALT\n"
      "end\n";
  CHECK_THROWS_AS(load_module_text(text), MalformedModule);
}

TEST_CASE("loader: annotation variables must be covered by the varmap") {
  const char* text =
      "fn main params 0 locals 1 returns none\n"
      "#var 0 s0 int\n"
      "#requires (le 0 ghost)\n"
      "  HALT\n"
      "end\n";
  CHECK_THROWS_AS(load_module_text(text), MalformedModule);
}

TEST_CASE("stack_depths reports per-pc heights") {
  auto m = load_module_text("PUSH 1; PUSH 2; ADD; PRINT; HALT");
  auto d = stack_depths(m.functions[0], m);
  CHECK(d == std::vector<int>({0, 1, 2, 1, 0}));
}
