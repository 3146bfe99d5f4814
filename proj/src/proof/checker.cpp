// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0
//
// Certificate checking. Bidirectional: introduction forms are checked
// against the goal, elimination/leaf forms synthesize their conclusion
// bottom-up. Lia only exists in checked positions (its conclusion is not
// determined by its children alone).

#include "liss/proof.hpp"

#include <numeric>
#include <set>

namespace liss::proof {

using namespace liss::logic;

// ---------------------------------------------------------------------------
// Exact rationals

namespace {

long long checked_ll(__int128 v, const char* what) {
  if (v > (__int128)INT64_MAX || v < (__int128)INT64_MIN) throw CheckOverflow(what);
  return (long long)v;
}

}  // namespace

Rational Rational::make(long long n, long long d) {
  if (d == 0) throw CheckOverflow("rational with zero denominator");
  if (d < 0) {
    n = checked_ll(-(__int128)n, "rational negate");
    d = checked_ll(-(__int128)d, "rational negate");
  }
  long long g = std::gcd(n < 0 ? checked_ll(-(__int128)n, "gcd") : n, d);
  if (g > 1) { n /= g; d /= g; }
  return {n, d};
}

namespace {
__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) { __int128 t = a % b; a = b; b = t; }
  return a;
}
}  // namespace

Rational rat_add(const Rational& a, const Rational& b) {
  __int128 n = (__int128)a.num * b.den + (__int128)b.num * a.den;
  __int128 d = (__int128)a.den * b.den;
  __int128 g = gcd128(n, d);
  if (g > 1) { n /= g; d /= g; }
  return Rational::make(checked_ll(n, "rat_add"), checked_ll(d, "rat_add"));
}

Rational rat_sub(const Rational& a, const Rational& b) {
  return rat_add(a, Rational{checked_ll(-(__int128)b.num, "rat_sub"), b.den});
}

Rational rat_mul(const Rational& a, const Rational& b) {
  __int128 n = (__int128)a.num * b.num;
  __int128 d = (__int128)a.den * b.den;
  __int128 g = gcd128(n, d);
  if (g > 1) { n /= g; d /= g; }
  return Rational::make(checked_ll(n, "rat_mul"), checked_ll(d, "rat_mul"));
}

bool rat_eq(const Rational& a, const Rational& b) {
  return (__int128)a.num * b.den == (__int128)b.num * a.den;
}

bool rat_gt(const Rational& a, const Rational& b) {
  return (__int128)a.num * b.den > (__int128)b.num * a.den;
}

std::string rat_text(const Rational& r) {
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

// ---------------------------------------------------------------------------
// Constructors

namespace {
std::shared_ptr<Certificate> mk(CertKind k) {
  auto c = std::make_shared<Certificate>();
  c->kind = k;
  return c;
}
}  // namespace

CertPtr c_hyp(size_t i) { auto c = mk(CertKind::Hyp); c->hyp_index = i; return c; }
CertPtr c_andI(CertPtr a, CertPtr b) { auto c = mk(CertKind::AndI); c->kids = {std::move(a), std::move(b)}; return c; }
CertPtr c_andE1(CertPtr x) { auto c = mk(CertKind::AndE1); c->kids = {std::move(x)}; return c; }
CertPtr c_andE2(CertPtr x) { auto c = mk(CertKind::AndE2); c->kids = {std::move(x)}; return c; }
CertPtr c_orI1(CertPtr x, FormulaPtr other) { auto c = mk(CertKind::OrI1); c->kids = {std::move(x)}; c->formula = std::move(other); return c; }
CertPtr c_orI2(CertPtr x, FormulaPtr other) { auto c = mk(CertKind::OrI2); c->kids = {std::move(x)}; c->formula = std::move(other); return c; }
CertPtr c_orE(CertPtr d, CertPtr l, CertPtr r) { auto c = mk(CertKind::OrE); c->kids = {std::move(d), std::move(l), std::move(r)}; return c; }
CertPtr c_impI(FormulaPtr a, CertPtr body) { auto c = mk(CertKind::ImpI); c->formula = std::move(a); c->kids = {std::move(body)}; return c; }
CertPtr c_impE(CertPtr i, CertPtr a) { auto c = mk(CertKind::ImpE); c->kids = {std::move(i), std::move(a)}; return c; }
CertPtr c_notI(FormulaPtr h, CertPtr b) { auto c = mk(CertKind::NotI); c->formula = std::move(h); c->kids = {std::move(b)}; return c; }
CertPtr c_notE(CertPtr n, CertPtr p) { auto c = mk(CertKind::NotE); c->kids = {std::move(n), std::move(p)}; return c; }
CertPtr c_contra(CertPtr x) { auto c = mk(CertKind::Contra); c->kids = {std::move(x)}; return c; }
CertPtr c_forallI(std::string v, CertPtr b) { auto c = mk(CertKind::ForallI); c->var = std::move(v); c->kids = {std::move(b)}; return c; }
CertPtr c_forallE(CertPtr a, TermPtr w) { auto c = mk(CertKind::ForallE); c->kids = {std::move(a)}; c->term = std::move(w); return c; }
CertPtr c_refl(TermPtr t) { auto c = mk(CertKind::Refl); c->term = std::move(t); return c; }
CertPtr c_rewrite(CertPtr eq, CertPtr tgt, std::vector<std::vector<int>> pos) {
  auto c = mk(CertKind::Rewrite);
  c->kids = {std::move(eq), std::move(tgt)};
  c->positions = std::move(pos);
  return c;
}
CertPtr c_eval(FormulaPtr atom) { auto c = mk(CertKind::Eval); c->formula = std::move(atom); return c; }
CertPtr c_lia(std::vector<Rational> coeffs, std::vector<CertPtr> prem) {
  auto c = mk(CertKind::Lia);
  c->coeffs = std::move(coeffs);
  c->kids = std::move(prem);
  return c;
}
CertPtr c_axiom(std::string id, std::map<std::string, TermPtr> inst) {
  auto c = mk(CertKind::Axiom);
  c->schema_id = std::move(id);
  c->inst = std::move(inst);
  return c;
}

// ---------------------------------------------------------------------------
// Linear rows over a monomial basis

namespace {

struct CheckFail {
  std::string reason;
  std::vector<int> path;
};

// A monomial is a sorted multiset of opaque factor keys; the empty monomial
// is the constant 1. Factors are variables and non-arithmetic subterms
// (div, mod, idx, len, card), keyed by canonical text. Treating products of
// factors as basis elements keeps Farkas sound: a non-negative combination
// of valid inequalities is valid whatever the basis elements denote.
using Monomial = std::vector<std::string>;
using Poly = std::map<Monomial, Rational>;

void poly_add_in(Poly& p, const Monomial& m, const Rational& c) {
  auto it = p.find(m);
  if (it == p.end()) {
    if (!c.is_zero()) p.emplace(m, c);
    return;
  }
  it->second = rat_add(it->second, c);
  if (it->second.is_zero()) p.erase(it);
}

Poly poly_scale(const Poly& p, const Rational& c) {
  Poly out;
  if (c.is_zero()) return out;
  for (const auto& [m, k] : p) out.emplace(m, rat_mul(k, c));
  return out;
}

Poly poly_sum(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [m, c] : b) poly_add_in(out, m, c);
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      std::sort(m.begin(), m.end());
      poly_add_in(out, m, rat_mul(ca, cb));
    }
  return out;
}

Poly linearize(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::IntLit: {
      Poly p;
      if (t->num != 0) p.emplace(Monomial{}, Rational::of(t->num));
      return p;
    }
    case TermKind::Add: return poly_sum(linearize(t->args[0]), linearize(t->args[1]));
    case TermKind::Sub:
      return poly_sum(linearize(t->args[0]), poly_scale(linearize(t->args[1]), Rational::of(-1)));
    case TermKind::Mul: return poly_mul(linearize(t->args[0]), linearize(t->args[1]));
    default: {
      // opaque integer-valued factor (variable, div, mod, idx, len, card)
      Poly p;
      p.emplace(Monomial{canonical_term_text(t)}, Rational::of(1));
      return p;
    }
  }
}

// Normalizes an atom over int terms into rows "poly <= 0". Lt tightens to
// +1 (terms are integer-valued); Eq yields two rows.
std::vector<Poly> atom_rows(const FormulaPtr& f) {
  if (f->kind != FormulaKind::Atom) throw CheckFail{"lia premise is not an atom", {}};
  if (sort_of(f->lhs) != Sort::Int || sort_of(f->rhs) != Sort::Int)
    throw CheckFail{"lia premise is not over integers", {}};
  Poly l = linearize(f->lhs), r = linearize(f->rhs);
  Poly lr = poly_sum(l, poly_scale(r, Rational::of(-1)));  // lhs - rhs
  switch (f->op) {
    case AtomOp::Le: return {lr};  // lhs - rhs <= 0
    case AtomOp::Lt: {
      Poly row = lr;
      poly_add_in(row, Monomial{}, Rational::of(1));  // lhs - rhs + 1 <= 0
      return {row};
    }
    case AtomOp::Eq: {
      Poly rl = poly_scale(lr, Rational::of(-1));
      return {lr, rl};
    }
    default: throw CheckFail{"lia premise must be eq/lt/le", {}};
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// The checker

namespace {

struct Checker {
  std::vector<FormulaPtr> ctx;  // hypothesis stack, back() = innermost

  [[noreturn]] void fail(const std::string& reason, const std::vector<int>& path) {
    throw CheckFail{reason, path};
  }

  void validate_formula(const FormulaPtr& f, const std::vector<int>& path) {
    if (!f) fail("missing formula", path);
    std::string why;
    if (!well_sorted(f, &why)) fail("ill-sorted formula: " + why, path);
  }

  void validate_term(const TermPtr& t, const std::vector<int>& path) {
    if (!t) fail("missing term", path);
    auto f = f_atom(AtomOp::Eq, t, t);
    std::string why;
    if (!well_sorted(f, &why)) fail("ill-sorted term: " + why, path);
  }

  bool var_free_in_ctx(const std::string& name) {
    for (const auto& h : ctx) {
      try {
        if (free_vars(h).count(name)) return true;
      } catch (const BadSort&) {
        return true;  // be conservative
      }
    }
    return false;
  }

  std::vector<int> child(const std::vector<int>& path, int k) {
    std::vector<int> p = path;
    p.push_back(k);
    return p;
  }

  // --- Rewrite support -----------------------------------------------------

  FormulaPtr rewrite_formula(const FormulaPtr& f, const std::vector<int>& pos, size_t at,
                             const TermPtr& from, const TermPtr& to,
                             const std::vector<int>& path);

  TermPtr rewrite_term(const TermPtr& t, const std::vector<int>& pos, size_t at,
                       const TermPtr& from, const TermPtr& to, const std::vector<int>& path) {
    if (at == pos.size()) {
      if (!term_eq(t, from)) fail("rewrite position does not match the equation's lhs", path);
      return to;
    }
    int k = pos[at];
    if (k < 0 || (size_t)k >= t->args.size()) fail("rewrite path leaves the tree", path);
    auto nt = std::make_shared<Term>(*t);
    nt->args[(size_t)k] = rewrite_term(t->args[(size_t)k], pos, at + 1, from, to, path);
    return nt;
  }

  // --- synthesis -----------------------------------------------------------

  FormulaPtr synth(const CertPtr& c, const std::vector<int>& path) {
    if (!c) fail("missing certificate node", path);
    switch (c->kind) {
      case CertKind::Hyp: {
        if (c->hyp_index >= ctx.size()) fail("hypothesis index out of range", path);
        return ctx[ctx.size() - 1 - c->hyp_index];
      }
      case CertKind::AndI:
        return f_and(synth(c->kids[0], child(path, 0)), synth(c->kids[1], child(path, 1)));
      case CertKind::AndE1: {
        FormulaPtr f = synth(c->kids[0], child(path, 0));
        if (f->kind != FormulaKind::And) fail("andE1 over a non-conjunction", path);
        return f->a;
      }
      case CertKind::AndE2: {
        FormulaPtr f = synth(c->kids[0], child(path, 0));
        if (f->kind != FormulaKind::And) fail("andE2 over a non-conjunction", path);
        return f->b;
      }
      case CertKind::OrI1:
        validate_formula(c->formula, path);
        return f_or(synth(c->kids[0], child(path, 0)), c->formula);
      case CertKind::OrI2:
        validate_formula(c->formula, path);
        return f_or(c->formula, synth(c->kids[0], child(path, 0)));
      case CertKind::OrE: {
        FormulaPtr d = synth(c->kids[0], child(path, 0));
        if (d->kind != FormulaKind::Or) fail("orE over a non-disjunction", path);
        ctx.push_back(d->a);
        FormulaPtr l = synth(c->kids[1], child(path, 1));
        ctx.pop_back();
        ctx.push_back(d->b);
        FormulaPtr r = synth(c->kids[2], child(path, 2));
        ctx.pop_back();
        if (!canonical_eq(l, r)) fail("orE branches conclude different formulas", path);
        return l;
      }
      case CertKind::ImpI: {
        validate_formula(c->formula, path);
        ctx.push_back(c->formula);
        FormulaPtr b = synth(c->kids[0], child(path, 0));
        ctx.pop_back();
        return f_imp(c->formula, b);
      }
      case CertKind::ImpE: {
        FormulaPtr i = synth(c->kids[0], child(path, 0));
        if (i->kind != FormulaKind::Imp) fail("impE over a non-implication", path);
        check(i->a, c->kids[1], child(path, 1));
        return i->b;
      }
      case CertKind::NotI: {
        validate_formula(c->formula, path);
        ctx.push_back(c->formula);
        check(f_false(), c->kids[0], child(path, 0));
        ctx.pop_back();
        return f_not(c->formula);
      }
      case CertKind::NotE: {
        FormulaPtr n = synth(c->kids[0], child(path, 0));
        if (n->kind != FormulaKind::Not) fail("notE major premise is not a negation", path);
        check(n->a, c->kids[1], child(path, 1));
        return f_false();
      }
      case CertKind::Contra: {
        FormulaPtr f = synth(c->kids[0], child(path, 0));
        if (f->kind != FormulaKind::Not || f->a->kind != FormulaKind::Not)
          fail("contra over a non-double-negation", path);
        return f->a->a;
      }
      case CertKind::ForallI: {
        if (c->var.empty()) fail("forallI without a variable", path);
        if (var_free_in_ctx(c->var)) fail("forallI variable occurs in an open hypothesis", path);
        FormulaPtr body = synth(c->kids[0], child(path, 0));
        return f_forall(c->var, body);
      }
      case CertKind::ForallE: {
        FormulaPtr f = synth(c->kids[0], child(path, 0));
        if (f->kind != FormulaKind::Forall) fail("forallE over a non-quantifier", path);
        validate_term(c->term, path);
        if (sort_of(c->term) != Sort::Int) fail("forallE witness must be int-sorted", path);
        return substitute(f->a, f->binder, c->term);
      }
      case CertKind::Refl:
        validate_term(c->term, path);
        return f_atom(AtomOp::Eq, c->term, c->term);
      case CertKind::Rewrite: {
        FormulaPtr eq = synth(c->kids[0], child(path, 0));
        if (eq->kind != FormulaKind::Atom || eq->op != AtomOp::Eq)
          fail("rewrite equation is not an equality", path);
        FormulaPtr target = synth(c->kids[1], child(path, 1));
        for (const auto& pos : c->positions)
          target = rewrite_formula(target, pos, 0, eq->lhs, eq->rhs, path);
        return target;
      }
      case CertKind::Eval: {
        validate_formula(c->formula, path);
        if (c->formula->kind == FormulaKind::True) return c->formula;
        if (c->formula->kind != FormulaKind::Atom) fail("eval needs an atom", path);
        try {
          GroundState empty;
          if (!eval_ground(c->formula, empty)) fail("eval atom is false", path);
        } catch (const NonGround&) {
          fail("eval atom is not ground", path);
        } catch (const EvalError&) {
          fail("eval atom faults", path);
        }
        return c->formula;
      }
      case CertKind::Lia:
        fail("lia requires a checked position (its conclusion is contextual)", path);
      case CertKind::Axiom: {
        try {
          FormulaPtr f = instantiate_schema(c->schema_id, c->inst);
          validate_formula(f, path);
          return f;
        } catch (const BadAxiomInstance& e) {
          fail(e.what(), path);
        } catch (const BadSort& e) {
          fail(e.what(), path);
        } catch (const SortMismatch& e) {
          fail(e.what(), path);
        }
      }
    }
    fail("unknown certificate node", path);
  }

  // --- checking ------------------------------------------------------------

  void check(const FormulaPtr& goal, const CertPtr& c, const std::vector<int>& path) {
    if (!c) fail("missing certificate node", path);
    switch (c->kind) {
      case CertKind::AndI: {
        if (goal->kind != FormulaKind::And) fail("andI against a non-conjunction goal", path);
        check(goal->a, c->kids[0], child(path, 0));
        check(goal->b, c->kids[1], child(path, 1));
        return;
      }
      case CertKind::OrI1: {
        if (goal->kind != FormulaKind::Or) fail("orI1 against a non-disjunction goal", path);
        validate_formula(c->formula, path);
        if (!canonical_eq(c->formula, goal->b)) fail("orI1 other-disjunct mismatch", path);
        check(goal->a, c->kids[0], child(path, 0));
        return;
      }
      case CertKind::OrI2: {
        if (goal->kind != FormulaKind::Or) fail("orI2 against a non-disjunction goal", path);
        validate_formula(c->formula, path);
        if (!canonical_eq(c->formula, goal->a)) fail("orI2 other-disjunct mismatch", path);
        check(goal->b, c->kids[0], child(path, 0));
        return;
      }
      case CertKind::ImpI: {
        if (goal->kind != FormulaKind::Imp) fail("impI against a non-implication goal", path);
        validate_formula(c->formula, path);
        if (!canonical_eq(c->formula, goal->a)) fail("impI antecedent mismatch", path);
        ctx.push_back(goal->a);
        check(goal->b, c->kids[0], child(path, 0));
        ctx.pop_back();
        return;
      }
      case CertKind::NotI: {
        if (goal->kind != FormulaKind::Not) fail("notI against a non-negation goal", path);
        validate_formula(c->formula, path);
        if (!canonical_eq(c->formula, goal->a)) fail("notI hypothesis mismatch", path);
        ctx.push_back(goal->a);
        check(f_false(), c->kids[0], child(path, 0));
        ctx.pop_back();
        return;
      }
      case CertKind::ForallI: {
        if (goal->kind != FormulaKind::Forall) fail("forallI against a non-quantifier goal", path);
        if (c->var.empty()) fail("forallI without a variable", path);
        if (var_free_in_ctx(c->var)) fail("forallI variable occurs in an open hypothesis", path);
        try {
          if (free_vars(goal).count(c->var)) fail("forallI variable occurs free in the goal", path);
        } catch (const BadSort&) {
          fail("ill-sorted goal", path);
        }
        FormulaPtr inst = substitute(goal->a, goal->binder, t_var(c->var, Sort::Int));
        check(inst, c->kids[0], child(path, 0));
        return;
      }
      case CertKind::Contra:
        check(f_not(f_not(goal)), c->kids[0], child(path, 0));
        return;
      case CertKind::OrE: {
        FormulaPtr d = synth(c->kids[0], child(path, 0));
        if (d->kind != FormulaKind::Or) fail("orE over a non-disjunction", path);
        ctx.push_back(d->a);
        check(goal, c->kids[1], child(path, 1));
        ctx.pop_back();
        ctx.push_back(d->b);
        check(goal, c->kids[2], child(path, 2));
        ctx.pop_back();
        return;
      }
      case CertKind::Lia:
        check_lia(goal, c, path);
        return;
      default: {
        FormulaPtr f = synth(c, path);
        if (!canonical_eq(f, goal)) {
          fail("conclusion mismatch: derived " + canonical_text(f) + ", goal " +
                   canonical_text(goal),
               path);
        }
        return;
      }
    }
  }

  // Farkas: premises normalize to rows e_i <= 0; with c_i >= 0 the sum
  // S = sum c_i e_i satisfies S <= 0. The goal row g <= 0 follows when
  // S - g is a constant > -1 (terms are integer-valued, so any slack
  // strictly above -1 tightens to 0). False follows when S is a positive
  // constant.
  void check_lia(const FormulaPtr& goal, const CertPtr& c, const std::vector<int>& path) {
    try {
      std::vector<Poly> rows;
      for (size_t k = 0; k < c->kids.size(); ++k) {
        FormulaPtr prem = synth(c->kids[k], child(path, (int)k));
        for (auto& row : atom_rows(prem)) rows.push_back(std::move(row));
      }
      if (c->coeffs.size() != rows.size())
        fail("lia coefficient count (" + std::to_string(c->coeffs.size()) +
                 ") does not match normalized premise rows (" + std::to_string(rows.size()) + ")",
             path);
      Poly sum;
      for (size_t k = 0; k < rows.size(); ++k) {
        if (c->coeffs[k].negative()) fail("lia coefficient is negative", path);
        sum = poly_sum(sum, poly_scale(rows[k], c->coeffs[k]));
      }
      if (goal->kind == FormulaKind::False) {
        if (sum.size() != 1 || sum.begin()->first != Monomial{})
          fail("lia contradiction is not constant", path);
        if (!rat_gt(sum.begin()->second, Rational::of(0)))
          fail("lia contradiction constant is not positive", path);
        return;
      }
      if (goal->kind != FormulaKind::Atom || (goal->op != AtomOp::Le && goal->op != AtomOp::Lt))
        fail("lia goal must be <=, <, or false", path);
      Poly g = atom_rows(goal)[0];
      Poly slack = poly_sum(sum, poly_scale(g, Rational::of(-1)));
      for (const auto& [m, coeff] : slack)
        if (m != Monomial{} && !coeff.is_zero())
          fail("Farkas sum mismatch at monomial " + (m.empty() ? "1" : m[0]), path);
      Rational d = slack.count(Monomial{}) ? slack.at(Monomial{}) : Rational::of(0);
      if (!rat_gt(d, Rational::make(-1, 1)))
        fail("Farkas slack " + rat_text(d) + " does not certify the goal", path);
    } catch (CheckFail&) {
      throw;
    } catch (const CheckOverflow& e) {
      fail(std::string("lia arithmetic overflow: ") + e.what(), path);
    } catch (const BadSort& e) {
      fail(e.what(), path);
    }
  }
};

FormulaPtr Checker::rewrite_formula(const FormulaPtr& f, const std::vector<int>& pos, size_t at,
                                    const TermPtr& from, const TermPtr& to,
                                    const std::vector<int>& path) {
  if (at == pos.size()) fail("rewrite path stops at a formula node", path);
  int k = pos[at];
  switch (f->kind) {
    case FormulaKind::Atom: {
      if (k == 0)
        return f_atom(f->op, rewrite_term(f->lhs, pos, at + 1, from, to, path), f->rhs);
      if (k == 1)
        return f_atom(f->op, f->lhs, rewrite_term(f->rhs, pos, at + 1, from, to, path));
      fail("rewrite path leaves the atom", path);
    }
    case FormulaKind::Not:
      if (k != 0) fail("rewrite path leaves the negation", path);
      return f_not(rewrite_formula(f->a, pos, at + 1, from, to, path));
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp: {
      FormulaPtr na = f->a, nb = f->b;
      if (k == 0)
        na = rewrite_formula(f->a, pos, at + 1, from, to, path);
      else if (k == 1)
        nb = rewrite_formula(f->b, pos, at + 1, from, to, path);
      else
        fail("rewrite path leaves the connective", path);
      switch (f->kind) {
        case FormulaKind::And: return f_and(na, nb);
        case FormulaKind::Or: return f_or(na, nb);
        default: return f_imp(na, nb);
      }
    }
    case FormulaKind::Forall: {
      if (k != 0) fail("rewrite path leaves the quantifier", path);
      // rewriting under a binder is unsound if the equation mentions the
      // bound name
      try {
        std::map<std::string, Sort> fv;
        collect_free_vars(from, fv);
        collect_free_vars(to, fv);
        if (fv.count(f->binder)) fail("rewrite under a capturing binder", path);
      } catch (const BadSort&) {
        fail("ill-sorted rewrite equation", path);
      }
      return f_forall(f->binder, rewrite_formula(f->a, pos, at + 1, from, to, path));
    }
    default:
      fail("rewrite path enters a leaf formula", path);
  }
}

}  // namespace

CheckResult check_certificate(const FormulaPtr& goal, const CertPtr& cert) {
  try {
    if (!goal) return {false, "missing goal", {}};
    std::string why;
    if (!well_sorted(goal, &why)) return {false, "ill-sorted goal: " + why, {}};
    Checker ck;
    ck.check(goal, cert, {});
    return CheckResult::ok();
  } catch (const CheckFail& f) {
    return {false, f.reason, f.path};
  } catch (const std::exception& e) {
    return {false, std::string("internal: ") + e.what(), {}};
  }
}

}  // namespace liss::proof
