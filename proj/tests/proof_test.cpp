// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "liss/proof.hpp"

#include <random>

using namespace liss::logic;
using namespace liss::proof;

namespace {
TermPtr vi(const char* n) { return t_var(n, Sort::Int); }
FormulaPtr ge(TermPtr a, TermPtr b) { return f_atom(AtomOp::Le, std::move(b), std::move(a)); }
}  // namespace

TEST_CASE("checker: Farkas accepts the two-hypothesis sum") {
  // goal: x >= 1 /\ y >= 2 -> x + y >= 3
  auto ante = f_and(ge(vi("x"), t_int(1)), ge(vi("y"), t_int(2)));
  auto goal = f_imp(ante, ge(t_add(vi("x"), vi("y")), t_int(3)));
  auto cert = c_impI(ante, c_lia({Rational::of(1), Rational::of(1)},
                                 {c_andE1(c_hyp(0)), c_andE2(c_hyp(0))}));
  auto r = check_certificate(goal, cert);
  INFO(r.reason);
  CHECK(r.accepted);
}

TEST_CASE("checker: Farkas rejects a combination that misses the goal") {
  auto ante = f_and(ge(vi("x"), t_int(1)), ge(vi("y"), t_int(2)));
  auto goal = f_imp(ante, ge(t_add(vi("x"), vi("y")), t_int(3)));
  auto cert = c_impI(ante, c_lia({Rational::of(1), Rational::of(0)},
                                 {c_andE1(c_hyp(0)), c_andE2(c_hyp(0))}));
  auto r = check_certificate(goal, cert);
  CHECK(!r.accepted);
  CHECK(r.reason.find("Farkas") != std::string::npos);
}

TEST_CASE("checker: reflexivity under a binder") {
  auto goal = f_forall("i", f_atom(AtomOp::Eq, vi("i"), vi("i")));
  auto cert = c_forallI("i", c_refl(vi("i")));
  CHECK(check_certificate(goal, cert).accepted);
}

TEST_CASE("checker: freshness violation rejected") {
  // forallI variable already free in an open hypothesis
  auto hyp = f_atom(AtomOp::Le, vi("k"), t_int(0));
  auto goal = f_imp(hyp, f_forall("i", ge(vi("i"), vi("i"))));
  auto cert = c_impI(hyp, c_forallI("k", c_lia({}, {})));
  auto r = check_certificate(goal, cert);
  CHECK(!r.accepted);
  CHECK(r.reason.find("hypothesis") != std::string::npos);
}

TEST_CASE("checker: bad hypothesis index") {
  auto goal = f_imp(f_true(), f_true());
  auto cert = c_impI(f_true(), c_hyp(5));
  auto r = check_certificate(goal, cert);
  CHECK(!r.accepted);
  CHECK(r.reason.find("index") != std::string::npos);
}

TEST_CASE("checker: eval of ground atoms") {
  auto t = f_atom(AtomOp::Eq,
                  t_card(t_union(t_setlit({t_int(1), t_int(2)}), t_setlit({t_int(2)}))),
                  t_int(2));
  CHECK(check_certificate(t, c_eval(t)).accepted);
  auto lie = f_atom(AtomOp::Eq, t_int(1), t_int(2));
  CHECK(!check_certificate(lie, c_eval(lie)).accepted);
  // non-ground
  auto open_atom = f_atom(AtomOp::Eq, vi("x"), vi("x"));
  CHECK(!check_certificate(open_atom, c_eval(open_atom)).accepted);
  // faulting
  auto fault = f_atom(AtomOp::Eq, t_div(t_int(1), t_int(0)), t_int(0));
  CHECK(!check_certificate(fault, c_eval(fault)).accepted);
}

TEST_CASE("checker: rewrite moves an equation through a formula") {
  // from i = n and goal 2*s = n*(n+1), rewrite the target 2*s = i*(i+1)
  auto eq = f_atom(AtomOp::Eq, vi("i"), vi("n"));
  auto target = f_atom(AtomOp::Eq, t_mul(t_int(2), vi("s")),
                       t_mul(vi("i"), t_add(vi("i"), t_int(1))));
  auto goal_f = f_atom(AtomOp::Eq, t_mul(t_int(2), vi("s")),
                       t_mul(vi("n"), t_add(vi("n"), t_int(1))));
  auto whole = f_imp(f_and(eq, target), goal_f);
  // positions: rhs of the atom: (1 0) is mul's first arg; (1 1 0) inside add
  auto cert = c_impI(f_and(eq, target),
                     c_rewrite(c_andE1(c_hyp(0)), c_andE2(c_hyp(0)), {{1, 0}, {1, 1, 0}}));
  auto r = check_certificate(whole, cert);
  INFO(r.reason);
  CHECK(r.accepted);
}

TEST_CASE("checker: rewrite at a non-matching position rejected") {
  auto eq = f_atom(AtomOp::Eq, vi("i"), vi("n"));
  auto target = f_atom(AtomOp::Le, vi("s"), t_int(3));
  auto whole = f_imp(f_and(eq, target), target);
  auto cert = c_impI(f_and(eq, target),
                     c_rewrite(c_andE1(c_hyp(0)), c_andE2(c_hyp(0)), {{0}}));
  CHECK(!check_certificate(whole, cert).accepted);
}

TEST_CASE("checker: ex falso via contra + notI + lia") {
  // x <= -1 /\ 0 <= x -> mem 5 S   (vacuous: hypotheses contradict)
  auto ante = f_and(f_atom(AtomOp::Le, vi("x"), t_int(-1)), f_atom(AtomOp::Le, t_int(0), vi("x")));
  auto concl = f_atom(AtomOp::Mem, t_int(5), t_var("S", Sort::Set));
  auto goal = f_imp(ante, concl);
  auto lia_false = c_lia({Rational::of(1), Rational::of(1)},
                         {c_andE1(c_hyp(1)), c_andE2(c_hyp(1))});
  auto cert = c_impI(ante, c_contra(c_notI(f_not(concl), lia_false)));
  auto r = check_certificate(goal, cert);
  INFO(r.reason);
  CHECK(r.accepted);
}

TEST_CASE("checker: axiom schema instances") {
  // mem-union instance closes x in A||B -> x in A \/ x in B
  auto A = t_var("A", Sort::Set), B = t_var("B", Sort::Set);
  auto goal = f_imp(f_atom(AtomOp::Mem, vi("x"), t_union(A, B)),
                    f_or(f_atom(AtomOp::Mem, vi("x"), A), f_atom(AtomOp::Mem, vi("x"), B)));
  auto inst = c_axiom("mem-union", {{"x", vi("x")}, {"A", A}, {"B", B}});
  auto cert = c_impI(goal->a, c_impE(c_andE1(inst), c_hyp(0)));
  auto r = check_certificate(goal, cert);
  INFO(r.reason);
  CHECK(r.accepted);

  CHECK(!check_certificate(goal, c_axiom("no-such-schema", {})).accepted);
}

TEST_CASE("all axiom schemas are oracle-valid") {
  // The catalog is never assumed: every schema pattern (metavariables as
  // free variables) must be Valid under enumeration, and the variadic
  // family must be valid for representative arities.
  for (const auto& schema : axiom_catalog()) {
    FormulaPtr instance;
    if (schema.variadic) continue;  // exercised below
    std::map<std::string, TermPtr> identity;
    for (const auto& [name, sort] : schema.metavars) identity.emplace(name, t_var(name, sort));
    instance = instantiate_schema(schema.id, identity);
    EnumLimits lim;
    lim.bound = 2;
    lim.set_cap = 2;
    lim.vec_cap = 2;
    auto r = enumerate_validity(instance, lim);
    INFO(schema.id << " -> " << canonical_text(instance));
    if (r.status == EnumStatus::CounterModel) {
      for (auto& [n, v] : r.model.env) INFO(n << " = " << value_text(v));
    }
    CHECK(r.status == EnumStatus::Valid);
  }
  for (size_t k = 1; k <= 3; ++k) {
    std::map<std::string, TermPtr> inst{{"x", vi("x")}};
    for (size_t j = 0; j < k; ++j)
      inst.emplace("e" + std::to_string(j), t_var("e" + std::to_string(j), Sort::Int));
    auto f = instantiate_schema("mem-setlit", inst);
    auto r = enumerate_validity(f, 2, 2, 2);
    INFO(canonical_text(f));
    CHECK(r.status == EnumStatus::Valid);
  }
}

TEST_CASE("certificate text round-trips") {
  auto ante = f_and(ge(vi("x"), t_int(1)), ge(vi("y"), t_int(2)));
  std::vector<CertPtr> samples = {
      c_impI(ante, c_lia({Rational::of(1), Rational::make(1, 2)},
                         {c_andE1(c_hyp(0)), c_andE2(c_hyp(0))})),
      c_forallI("i", c_refl(vi("i"))),
      c_orE(c_hyp(0), c_orI1(c_hyp(0), f_true()), c_orI2(c_hyp(0), f_false())),
      c_rewrite(c_hyp(1), c_hyp(0), {{0, 1}, {1}}),
      c_axiom("mem-union", {{"x", vi("x")}, {"A", t_var("A", Sort::Set)}, {"B", t_var("B", Sort::Set)}}),
      c_contra(c_notI(f_not(f_true()), c_eval(f_true()))),
      c_forallE(c_hyp(2), t_add(vi("k"), t_int(1))),
  };
  for (const auto& c : samples) {
    std::string text = certificate_text(c);
    CertPtr back = parse_certificate(text);
    CHECK(certificate_text(back) == text);
  }
}

TEST_CASE("parse_certificate rejects garbage") {
  CHECK_THROWS_AS(parse_certificate("(impI (ge x 1)"), CertSyntaxError);
  CHECK_THROWS_AS(parse_certificate("(frobnicate 1 2)"), CertSyntaxError);
  CHECK_THROWS_AS(parse_certificate(""), CertSyntaxError);
  CHECK_THROWS_AS(parse_certificate("(hyp 0) extra"), CertSyntaxError);
  CHECK_THROWS_AS(parse_certificate("(hyp -1)"), CertSyntaxError);
}

TEST_CASE("certificate renaming translates a derivation") {
  // proof of x >= 1 -> x + 1 >= 2 renames to s0
  auto ante = ge(vi("x"), t_int(1));
  auto goal = f_imp(ante, ge(t_add(vi("x"), t_int(1)), t_int(2)));
  auto cert = c_impI(ante, c_lia({Rational::of(1)}, {c_hyp(0)}));
  REQUIRE(check_certificate(goal, cert).accepted);

  auto renamed_goal = rename_free(goal, {{"x", "s0"}});
  auto renamed_cert = rename_certificate(cert, {{"x", "s0"}});
  CHECK(check_certificate(renamed_goal, renamed_cert).accepted);
  // and the renamed proof no longer matches the original goal
  CHECK(!check_certificate(goal, renamed_cert).accepted);
}

// ---------------------------------------------------------------------------
// Adversarial totality: fuzzed certificates never crash and never prove
// falsifiable goals.

namespace {

struct CertFuzz {
  std::mt19937 rng;
  explicit CertFuzz(unsigned seed) : rng(seed) {}
  int pick(int n) { return (int)(rng() % (unsigned)n); }

  TermPtr term(int depth) {
    if (depth == 0 || pick(2) == 0) {
      switch (pick(3)) {
        case 0: return t_int(pick(5) - 2);
        case 1: return vi(pick(2) ? "x" : "y");
        default: return t_var("S", Sort::Set);
      }
    }
    switch (pick(4)) {
      case 0: return t_add(term(depth - 1), term(depth - 1));
      case 1: return t_card(t_var("S", Sort::Set));
      case 2: return t_div(term(depth - 1), term(depth - 1));
      default: return t_mul(term(depth - 1), term(depth - 1));
    }
  }

  FormulaPtr formula(int depth) {
    if (depth == 0 || pick(3) == 0) {
      switch (pick(3)) {
        case 0: return f_atom(AtomOp::Le, term(1), term(1));
        case 1: return f_atom(AtomOp::Lt, term(1), term(1));
        default: return f_atom(AtomOp::Mem, term(1), t_var("S", Sort::Set));
      }
    }
    switch (pick(4)) {
      case 0: return f_not(formula(depth - 1));
      case 1: return f_and(formula(depth - 1), formula(depth - 1));
      case 2: return f_imp(formula(depth - 1), formula(depth - 1));
      default: return f_forall("i", formula(depth - 1));
    }
  }

  CertPtr cert(int depth) {
    if (depth == 0) {
      switch (pick(4)) {
        case 0: return c_hyp((size_t)pick(4));
        case 1: return c_refl(term(1));
        case 2: return c_eval(formula(1));
        default: return c_lia({Rational::of(pick(3))}, {c_hyp((size_t)pick(3))});
      }
    }
    switch (pick(10)) {
      case 0: return c_andI(cert(depth - 1), cert(depth - 1));
      case 1: return c_andE1(cert(depth - 1));
      case 2: return c_orI1(cert(depth - 1), formula(1));
      case 3: return c_impI(formula(1), cert(depth - 1));
      case 4: return c_impE(cert(depth - 1), cert(depth - 1));
      case 5: return c_notI(formula(1), cert(depth - 1));
      case 6: return c_contra(cert(depth - 1));
      case 7: return c_forallI(pick(2) ? "x" : "w", cert(depth - 1));
      case 8: return c_rewrite(cert(depth - 1), cert(depth - 1), {{pick(3), pick(3)}});
      default: return c_axiom("mem-union", {{"x", vi("x")}, {"A", t_var("A", Sort::Set)}, {"B", t_var("B", Sort::Set)}});
    }
  }
};

}  // namespace

TEST_CASE("fuzz: no accepted certificate for falsifiable goals, no crashes") {
  CertFuzz fz(20260810);
  int accepted_for_invalid = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    FormulaPtr goal = fz.formula(2);
    // only keep goals with a known counter-model
    auto oracle = enumerate_validity(goal, 2, 2, 2);
    if (oracle.status != EnumStatus::CounterModel) continue;
    CertPtr cert = fz.cert(2 + fz.pick(2));
    auto r = check_certificate(goal, cert);  // must not crash
    if (r.accepted) ++accepted_for_invalid;
  }
  CHECK(accepted_for_invalid == 0);
}

TEST_CASE("fuzz: parser survives random byte strings") {
  std::mt19937 rng(99);
  const char alphabet[] = "()abcdefgh 0123456789-/x";
  for (int iter = 0; iter < 500; ++iter) {
    std::string s;
    int len = (int)(rng() % 40);
    for (int k = 0; k < len; ++k) s += alphabet[rng() % (sizeof(alphabet) - 1)];
    try {
      parse_certificate(s);
    } catch (const CertSyntaxError&) {
      // expected
    }
  }
  CHECK(true);
}

TEST_CASE("rationals: arithmetic and overflow rejection") {
  CHECK(rat_eq(rat_add(Rational::make(1, 2), Rational::make(1, 3)), Rational::make(5, 6)));
  CHECK(rat_eq(rat_mul(Rational::make(2, 3), Rational::make(3, 4)), Rational::make(1, 2)));
  CHECK(rat_gt(Rational::of(1), Rational::make(-1, 1)));
  CHECK(rat_text(Rational::make(2, 4)) == "1/2");
  CHECK_THROWS_AS(Rational::make(1, 0), CheckOverflow);
  long long big = 4'000'000'000'000'000'000LL;
  CHECK_THROWS_AS(rat_mul(Rational::of(big), Rational::of(big)), CheckOverflow);
}
