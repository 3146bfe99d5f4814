// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "liss/lang.hpp"

using namespace liss::lang;
using liss::logic::Sort;
using liss::logic::canonical_text;

TEST_CASE("parse: init with addition") {
  auto p = parse_program("fun main() { var x: int := 1 + 2; print x; }");
  REQUIRE(p.functions.size() == 1);
  const auto& body = p.functions[0].body;
  REQUIRE(body.size() == 2);
  CHECK(body[0]->kind == StmtKind::VarDecl);
  CHECK(body[0]->e1->kind == ExprKind::Add);
  CHECK(body[0]->e1->args[0]->num == 1);
  CHECK(body[0]->e1->args[1]->num == 2);
}

TEST_CASE("parse: syntax error carries location and expectation") {
  try {
    parse_program("fun f() { x := ; }");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.loc.line == 1);
    CHECK(e.expected == "expression");
  }
}

TEST_CASE("parse: while carries its invariant formula") {
  auto p = parse_program(
      "fun f(n: int) {\n"
      "  var s: int := 0;\n"
      "  var i: int := 0;\n"
      "  while i < n invariant s = i * (i - 1) div 2 {\n"
      "    s := s + i;\n"
      "    i := i + 1;\n"
      "  }\n"
      "}\n");
  const auto& w = p.functions[0].body[2];
  REQUIRE(w->kind == StmtKind::While);
  REQUIRE(w->invariant != nullptr);
  CHECK(w->invariant->kind == ExprKind::Eq);
  auto tp = typecheck(p);
  const auto* fn = tp.find("f");
  CHECK(canonical_text(fn->body[2]->invariant_f) == "(eq s (div (mul i (sub i 1)) 2))");
}

TEST_CASE("typecheck: 1 + true is a type clash") {
  auto p = parse_program("fun f() { var x: int := 1 + true; }");
  try {
    typecheck(p);
    FAIL("expected TypeErrors");
  } catch (const TypeErrors& e) {
    REQUIRE(!e.errors.empty());
    CHECK(e.errors[0].message.find("expected int, found bool") != std::string::npos);
  }
}

TEST_CASE("typecheck: membership types to bool") {
  auto p = parse_program("fun f(x: int, S: set) { var b: bool := x in S; }");
  auto tp = typecheck(p);
  const auto* fn = tp.find("f");
  CHECK(fn->body[0]->e1->type == Sort::Bool);
}

TEST_CASE("typecheck: ensures \\result >= 0 on a bool function is a clash") {
  auto p = parse_program("fun f(): bool ensures \\result >= 0 { return true; }");
  try {
    typecheck(p);
    FAIL("expected TypeErrors");
  } catch (const TypeErrors& e) {
    REQUIRE(!e.errors.empty());
    CHECK(e.errors[0].message.find("expected int, found bool") != std::string::npos);
  }
}

TEST_CASE("typecheck: annotation-only forms rejected in program positions") {
  CHECK_THROWS_AS(typecheck(parse_program("fun f(a: set, b: set) { var x: bool := a subset b; }")),
                  TypeErrors);
  CHECK_THROWS_AS(typecheck(parse_program("fun f() { var x: bool := forall i. i = i; }")),
                  TypeErrors);
}

TEST_CASE("typecheck: \\old only names parameters, only in ensures") {
  CHECK_THROWS_AS(
      typecheck(parse_program("fun f(x: int): int ensures \\old(y) = 0 { return x; }")),
      TypeErrors);
  CHECK_THROWS_AS(
      typecheck(parse_program("fun f(x: int) requires \\old(x) = 0 { print x; }")),
      TypeErrors);
}

TEST_CASE("typecheck: recursion rejected") {
  auto p = parse_program(
      "fun f(n: int): int { return g(n); }\n"
      "fun g(n: int): int { return f(n); }\n");
  try {
    typecheck(p);
    FAIL("expected TypeErrors");
  } catch (const TypeErrors& e) {
    CHECK(e.errors[0].message.find("recursion") != std::string::npos);
  }
}

TEST_CASE("typecheck: reserved names rejected") {
  CHECK_THROWS_AS(typecheck(parse_program("fun f() { var s0: int := 1; }")), TypeErrors);
  CHECK_THROWS_AS(typecheck(parse_program("fun f() { var old_x: int := 1; }")), TypeErrors);
  CHECK_THROWS_AS(typecheck(parse_program("fun f(q0: int) { print q0; }")), TypeErrors);
}

TEST_CASE("typecheck: ensures reads parameters as entry values") {
  auto p = parse_program(
      "fun bump(x: int, y: int): int ensures \\result = \\old(x) + y\n"
      "{ x := x + y; return x; }\n");
  auto tp = typecheck(p);
  const auto* fn = tp.find("bump");
  // both \old(x) and the plain y lower to ghosts
  CHECK(canonical_text(fn->ensures_f) == "(eq result (add old_x old_y))");
}

TEST_CASE("typecheck: slot layout is params then locals in order") {
  auto p = parse_program(
      "fun f(a: int, v: vec) {\n"
      "  var x: int := 0;\n"
      "  if a < 1 { var y: bool := true; }\n"
      "  var z: set := {};\n"
      "}\n");
  auto tp = typecheck(p);
  const auto& info = tp.info.at("f");
  REQUIRE(info.slots.size() == 5);
  CHECK(info.slots[0].first == "a");
  CHECK(info.slots[1].first == "v");
  CHECK(info.slots[2].first == "x");
  CHECK(info.slots[3].first == "y");
  CHECK(info.slots[4].first == "z");
  CHECK(info.param_count == 2);
}

TEST_CASE("pretty-print round trip") {
  const char* src =
      "fun abs(x: int): int\n"
      "  requires true\n"
      "  ensures 0 <= \\result and (\\result = x or \\result = -x)\n"
      "{\n"
      "  var r: int := x;\n"
      "  if x < 0 {\n"
      "    r := 0 - x;\n"
      "  }\n"
      "  return r;\n"
      "}\n"
      "\n"
      "fun main() {\n"
      "  var s: set := {1, 2, 3};\n"
      "  var v: vec := newvec(3);\n"
      "  v[0] := card(s union {4});\n"
      "  while v[0] > 0 invariant v[0] >= 0 {\n"
      "    v[0] := v[0] - 1;\n"
      "  }\n"
      "  print abs(0 - 7) + len(v);\n"
      "}\n";
  auto p1 = parse_program(src);
  std::string printed = pretty_print(p1);
  auto p2 = parse_program(printed);
  CHECK(pretty_print(p2) == printed);  // fixpoint
}

TEST_CASE("interpret: arithmetic prints 5") {
  auto tp = typecheck(parse_program("fun main() { print 2 + 3; }"));
  auto out = interpret_source(tp, "main", {});
  REQUIRE(out.status == Outcome::Status::Ok);
  CHECK(out.outputs == std::vector<long long>{5});
}

TEST_CASE("interpret: out-of-bounds indexing traps") {
  auto tp = typecheck(parse_program("fun main() { var v: vec := newvec(2); print v[5]; }"));
  auto out = interpret_source(tp, "main", {});
  REQUIRE(out.status == Outcome::Status::Trap);
  CHECK(out.trap == TrapKind::OutOfBounds);
}

TEST_CASE("interpret: sum loop on n = 4 prints 10") {
  // Hand execution: i,s = (1,1) (2,3) (3,6) (4,10); prints 10.
  const char* src =
      "fun sum(n: int): int\n"
      "  requires 0 <= n\n"
      "  ensures 2 * \\result = n * (n + 1)\n"
      "{\n"
      "  var s: int := 0;\n"
      "  var i: int := 0;\n"
      "  while i < n invariant 0 <= i and i <= n and 2 * s = i * (i + 1) {\n"
      "    i := i + 1;\n"
      "    s := s + i;\n"
      "  }\n"
      "  return s;\n"
      "}\n"
      "fun main() {\n"
      "  var n: int := read();\n"
      "  if n < 0 { n := 0; }\n"
      "  print sum(n);\n"
      "}\n";
  auto tp = typecheck(parse_program(src));
  auto out = interpret_source(tp, "main", {4});
  REQUIRE(out.status == Outcome::Status::Ok);
  CHECK(out.outputs == std::vector<long long>{10});
}

TEST_CASE("interpret: division by zero and input exhaustion trap") {
  auto tp = typecheck(parse_program("fun main() { var d: int := read(); print 10 div d; }"));
  auto out = interpret_source(tp, "main", {0});
  REQUIRE(out.status == Outcome::Status::Trap);
  CHECK(out.trap == TrapKind::DivByZero);
  auto out2 = interpret_source(tp, "main", {});
  REQUIRE(out2.status == Outcome::Status::Trap);
  CHECK(out2.trap == TrapKind::InputExhausted);
}

TEST_CASE("interpret: failed assert traps, passing assert does not") {
  auto tp = typecheck(parse_program("fun main() { var x: int := 3; assert x = 3; print x; }"));
  auto ok = interpret_source(tp, "main", {});
  CHECK(ok.status == Outcome::Status::Ok);
  auto tp2 = typecheck(parse_program("fun main() { var x: int := 3; assert x = 4; print x; }"));
  auto bad = interpret_source(tp2, "main", {});
  REQUIRE(bad.status == Outcome::Status::Trap);
  CHECK(bad.trap == TrapKind::AssertFailed);
}

TEST_CASE("interpret: never aborts on diverging programs (fuel)") {
  auto tp = typecheck(
      parse_program("fun main() { var x: int := 1; while 0 < x invariant true { x := 1; } }"));
  auto out = interpret_source(tp, "main", {}, 10'000);
  CHECK(out.status == Outcome::Status::OutOfFuel);
}

TEST_CASE("typing is deterministic") {
  const char* src = "fun f(x: int): int ensures \\result = x { return x; }";
  auto p = parse_program(src);
  auto t1 = typecheck(p);
  auto t2 = typecheck(p);
  CHECK(canonical_text(t1.find("f")->ensures_f) == canonical_text(t2.find("f")->ensures_f));
  CHECK(t1.info.at("f").slots == t2.info.at("f").slots);
}

TEST_CASE("return placement enforced") {
  CHECK_THROWS_AS(
      typecheck(parse_program("fun f(x: int): int { return x; print x; }")),
      TypeErrors);
  CHECK_THROWS_AS(
      typecheck(parse_program("fun f(x: int): int { if x < 0 { return 0; } return x; }")),
      TypeErrors);
  CHECK_THROWS_AS(typecheck(parse_program("fun f(x: int): int { print x; }")), TypeErrors);
}
