// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "liss/logic.hpp"

#include <random>

using namespace liss::logic;

namespace {

TermPtr v_int(const char* n) { return t_var(n, Sort::Int); }

}  // namespace

TEST_CASE("substitution: free occurrence") {
  // x <= 5  [x := x+1]  ->  x+1 <= 5
  auto f = f_atom(AtomOp::Le, v_int("x"), t_int(5));
  auto g = substitute(f, "x", t_add(v_int("x"), t_int(1)));
  CHECK(canonical_text(g) == "(le (add x 1) 5)");
}

TEST_CASE("substitution: bound occurrence untouched") {
  // forall x. x >= 0  [x := 7]  unchanged
  auto f = f_forall("x", f_atom(AtomOp::Le, t_int(0), v_int("x")));
  auto g = substitute(f, "x", t_int(7));
  CHECK(formula_eq(f, g));
}

TEST_CASE("substitution: capture avoidance renames the binder") {
  // forall y. y <= x  [x := y+1]  ->  forall y'. y' <= y+1
  auto f = f_forall("y", f_atom(AtomOp::Le, v_int("y"), v_int("x")));
  auto g = substitute(f, "x", t_add(v_int("y"), t_int(1)));
  REQUIRE(g->kind == FormulaKind::Forall);
  CHECK(g->binder != "y");
  CHECK(canonical_text(g) == "(forall q0 (le q0 (add y 1)))");
}

TEST_CASE("eval_ground: membership") {
  GroundState s;
  auto f = f_atom(AtomOp::Mem, t_int(3), t_setlit({t_int(1), t_int(3)}));
  CHECK(eval_ground(f, s));
}

TEST_CASE("eval_ground: set cardinality") {
  GroundState s;
  // card({1,2} union {2}) = 2
  auto f = f_atom(AtomOp::Eq,
                  t_card(t_union(t_setlit({t_int(1), t_int(2)}), t_setlit({t_int(2)}))),
                  t_int(2));
  CHECK(eval_ground(f, s));
}

TEST_CASE("eval_ground: select over store") {
  GroundState s;
  s.env["v"] = Value::of_vec({0, 0});
  // idx(upd(v,0,9),0) = 9
  auto f = f_atom(AtomOp::Eq, t_idx(t_upd(t_var("v", Sort::Vec), t_int(0), t_int(9)), t_int(0)),
                  t_int(9));
  CHECK(eval_ground(f, s));
}

TEST_CASE("eval_ground: div by zero raises, quantifier rejected") {
  GroundState s;
  auto f = f_atom(AtomOp::Eq, t_div(t_int(1), t_int(0)), t_int(0));
  CHECK_THROWS_AS(eval_ground(f, s), EvalError);
  auto q = f_forall("i", f_atom(AtomOp::Eq, v_int("i"), v_int("i")));
  CHECK_THROWS_AS(eval_ground(q, s), NonGround);
}

TEST_CASE("eval_ground: short-circuit guards partial terms") {
  GroundState s;
  s.env["v"] = Value::of_vec({});
  // (0 < len v) -> v[0] = 0 must evaluate (to true) without faulting
  auto f = f_imp(f_atom(AtomOp::Lt, t_int(0), t_len(t_var("v", Sort::Vec))),
                 f_atom(AtomOp::Eq, t_idx(t_var("v", Sort::Vec), t_int(0)), t_int(0)));
  CHECK(eval_ground(f, s));
}

TEST_CASE("enumerate_validity: x + 0 = x is valid") {
  auto f = f_atom(AtomOp::Eq, t_add(v_int("x"), t_int(0)), v_int("x"));
  auto r = enumerate_validity(f, 2, 2, 2);
  CHECK(r.status == EnumStatus::Valid);
}

TEST_CASE("enumerate_validity: x < x falsified at the first state") {
  auto f = f_atom(AtomOp::Lt, v_int("x"), v_int("x"));
  auto r = enumerate_validity(f, 1, 1, 1);
  REQUIRE(r.status == EnumStatus::CounterModel);
  CHECK(r.model.env.at("x").i == -1);  // ints ascend from -bound
}

TEST_CASE("enumerate_validity: first falsifying vector is [-2]") {
  // forall i. (0 <= i and i < len v) -> v[i] >= 0, bound 2, vecCap 2.
  auto body = f_imp(f_and(f_atom(AtomOp::Le, t_int(0), v_int("i")),
                          f_atom(AtomOp::Lt, v_int("i"), t_len(t_var("v", Sort::Vec)))),
                    f_atom(AtomOp::Le, t_int(0), t_idx(t_var("v", Sort::Vec), v_int("i"))));
  auto f = f_forall("i", body);
  auto r = enumerate_validity(f, 2, 2, 2);
  REQUIRE(r.status == EnumStatus::CounterModel);
  CHECK(r.model.env.at("v") == Value::of_vec({-2}));

  // Independent cross-check: enumerate all 1 + 5 + 25 = 31 vectors of
  // length <= 2 over [-2,2] in the documented order and find the first
  // falsifier by direct evaluation.
  std::vector<std::vector<long long>> vecs;
  vecs.push_back({});
  for (long long a = -2; a <= 2; ++a) vecs.push_back({a});
  for (long long a = -2; a <= 2; ++a)
    for (long long b = -2; b <= 2; ++b) vecs.push_back({a, b});
  REQUIRE(vecs.size() == 31);
  std::vector<long long> first_bad;
  for (const auto& elems : vecs) {
    bool ok = true;
    for (long long i = 0; i < (long long)elems.size(); ++i)
      if (elems[(size_t)i] < 0) ok = false;
    if (!ok) { first_bad = elems; break; }
  }
  CHECK(Value::of_vec(first_bad) == r.model.env.at("v"));
}

TEST_CASE("enumerate_validity: state ceiling") {
  EnumLimits lim;
  lim.bound = 3;
  lim.set_cap = 3;
  lim.vec_cap = 3;
  lim.state_ceiling = 10;
  auto f = f_atom(AtomOp::Eq, t_add(v_int("x"), v_int("y")), t_add(v_int("y"), v_int("x")));
  CHECK(enumerate_validity(f, lim).status == EnumStatus::TooLarge);
}

TEST_CASE("canonical_text: examples") {
  CHECK(canonical_text(f_atom(AtomOp::Le, v_int("x"), t_int(5))) == "(le x 5)");
  auto q = f_forall("i", f_atom(AtomOp::Eq, v_int("i"), v_int("i")));
  CHECK(canonical_text(q) == "(forall q0 (eq q0 q0))");
  CHECK(canonical_text(f_true()) == "true");
  CHECK(canonical_term_text(t_emptyset()) == "(set)");
}

TEST_CASE("canonical_text: nested binders number by depth") {
  auto inner = f_forall("j", f_atom(AtomOp::Le, v_int("i"), v_int("j")));
  auto f = f_forall("i", inner);
  CHECK(canonical_text(f) == "(forall q0 (forall q1 (le q0 q1)))");
}

TEST_CASE("parse_formula round-trips canonical text") {
  std::vector<FormulaPtr> samples = {
      f_atom(AtomOp::Le, v_int("x"), t_int(5)),
      f_forall("i", f_atom(AtomOp::Eq, v_int("i"), v_int("i"))),
      f_imp(f_atom(AtomOp::Mem, v_int("x"), t_var("S", Sort::Set)),
            f_atom(AtomOp::Le, t_int(0), t_card(t_var("S", Sort::Set)))),
      f_and(f_atom(AtomOp::Lt, t_int(0), t_len(t_var("v", Sort::Vec))),
            f_atom(AtomOp::Eq, t_idx(t_var("v", Sort::Vec), t_int(0)), t_int(1))),
      f_or(f_false(), f_not(f_atom(AtomOp::Subset, t_var("A", Sort::Set), t_var("B", Sort::Set)))),
  };
  for (const auto& f : samples) {
    std::string text = canonical_text(f);
    auto g = parse_formula(text);
    CHECK(canonical_text(g) == text);
    if (f->kind != FormulaKind::Forall)  // binders come back normalized
      CHECK(formula_eq(f, g));
  }
}

TEST_CASE("parse_formula: reserved binder names rejected free") {
  CHECK_THROWS_AS(parse_formula("(le q0 5)"), FormulaSyntaxError);
  CHECK_NOTHROW(parse_formula("(forall q0 (le q0 5))"));
}

TEST_CASE("parse_formula: syntax errors") {
  CHECK_THROWS_AS(parse_formula("(le x"), FormulaSyntaxError);
  CHECK_THROWS_AS(parse_formula("(bogus x y)"), FormulaSyntaxError);
  CHECK_THROWS_AS(parse_formula("(le x 5) junk"), FormulaSyntaxError);
}

// ---------------------------------------------------------------------------
// Property tests over random small formulas

namespace {

struct Gen {
  std::mt19937 rng;
  explicit Gen(unsigned seed) : rng(seed) {}

  int pick(int n) { return (int)(rng() % (unsigned)n); }

  TermPtr term(int depth, const std::vector<std::string>& ivars) {
    if (depth == 0 || pick(3) == 0) {
      if (!ivars.empty() && pick(2) == 0) return t_var(ivars[(size_t)pick((int)ivars.size())], Sort::Int);
      return t_int(pick(7) - 3);
    }
    switch (pick(3)) {
      case 0: return t_add(term(depth - 1, ivars), term(depth - 1, ivars));
      case 1: return t_sub(term(depth - 1, ivars), term(depth - 1, ivars));
      default: return t_mul(term(depth - 1, ivars), term(depth - 1, ivars));
    }
  }

  FormulaPtr formula(int depth, const std::vector<std::string>& ivars) {
    if (depth == 0 || pick(4) == 0) {
      AtomOp op = pick(2) ? AtomOp::Le : (pick(2) ? AtomOp::Lt : AtomOp::Eq);
      return f_atom(op, term(2, ivars), term(2, ivars));
    }
    switch (pick(4)) {
      case 0: return f_not(formula(depth - 1, ivars));
      case 1: return f_and(formula(depth - 1, ivars), formula(depth - 1, ivars));
      case 2: return f_or(formula(depth - 1, ivars), formula(depth - 1, ivars));
      default: return f_imp(formula(depth - 1, ivars), formula(depth - 1, ivars));
    }
  }
};

}  // namespace

TEST_CASE("property: substitution lemma on ground states") {
  // eval(f[x := t], s) == eval(f, s[x -> eval(t, s)])
  Gen gen(12345);
  const std::vector<std::string> vars = {"x", "y"};
  for (int iter = 0; iter < 300; ++iter) {
    auto f = gen.formula(2, vars);
    auto t = gen.term(2, vars);
    GroundState s;
    s.env["x"] = Value::of_int(gen.pick(7) - 3);
    s.env["y"] = Value::of_int(gen.pick(7) - 3);
    auto sub = substitute(f, "x", t);
    GroundState s2 = s;
    s2.env["x"] = eval_term(t, s);
    CHECK(eval_ground(sub, s) == eval_ground(f, s2));
  }
}

TEST_CASE("property: canonical text round-trip on random formulas") {
  Gen gen(999);
  const std::vector<std::string> vars = {"a", "b", "c"};
  for (int iter = 0; iter < 300; ++iter) {
    auto f = gen.formula(3, vars);
    auto g = parse_formula(canonical_text(f));
    CHECK(canonical_text(g) == canonical_text(f));
  }
}

TEST_CASE("property: equal canonical text means equal evaluation") {
  // Formulas that print the same must evaluate the same on all small states.
  Gen gen(777);
  const std::vector<std::string> vars = {"x"};
  for (int iter = 0; iter < 100; ++iter) {
    auto f = gen.formula(2, vars);
    auto g = parse_formula(canonical_text(f));
    for (long long x = -2; x <= 2; ++x) {
      GroundState s;
      s.env["x"] = Value::of_int(x);
      CHECK(eval_ground(f, s) == eval_ground(g, s));
    }
  }
}

TEST_CASE("property: enumerate agrees with direct evaluation on qf formulas") {
  Gen gen(4242);
  const std::vector<std::string> vars = {"x"};
  for (int iter = 0; iter < 100; ++iter) {
    auto f = gen.formula(2, vars);
    auto r = enumerate_validity(f, 2, 1, 1);
    bool all_true = true;
    for (long long x = -2; x <= 2 && all_true; ++x) {
      GroundState s;
      s.env["x"] = Value::of_int(x);
      all_true = eval_ground(f, s);
    }
    CHECK((r.status == EnumStatus::Valid) == all_true);
  }
}

TEST_CASE("euclidean div/mod") {
  CHECK(euclid_div(7, 2) == 3);
  CHECK(euclid_mod(7, 2) == 1);
  CHECK(euclid_div(-7, 2) == -4);
  CHECK(euclid_mod(-7, 2) == 1);
  CHECK(euclid_div(7, -2) == -3);
  CHECK(euclid_mod(7, -2) == 1);
  CHECK(euclid_div(-7, -2) == 4);
  CHECK(euclid_mod(-7, -2) == 1);
  for (long long a = -9; a <= 9; ++a)
    for (long long d = -4; d <= 4; ++d) {
      if (d == 0) continue;
      long long q = euclid_div(a, d), r = euclid_mod(a, d);
      CHECK(a == d * q + r);
      CHECK(r >= 0);
      CHECK(r < (d > 0 ? d : -d));
    }
}
