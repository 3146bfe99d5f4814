// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0

#include "liss/logic.hpp"

#include <algorithm>
#include <set>

namespace liss::logic {

const char* sort_name(Sort s) {
  switch (s) {
    case Sort::Int: return "int";
    case Sort::Bool: return "bool";
    case Sort::Set: return "set";
    case Sort::Vec: return "vec";
  }
  return "?";
}

Value Value::of_set(std::vector<long long> es) {
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  return {Sort::Set, 0, std::move(es)};
}

std::string value_text(const Value& v) {
  switch (v.sort) {
    case Sort::Int: return std::to_string(v.i);
    case Sort::Bool: return v.i ? "true" : "false";
    case Sort::Set: {
      std::string out = "{";
      for (size_t k = 0; k < v.elems.size(); ++k) {
        if (k) out += ",";
        out += std::to_string(v.elems[k]);
      }
      return out + "}";
    }
    case Sort::Vec: {
      std::string out = "[";
      for (size_t k = 0; k < v.elems.size(); ++k) {
        if (k) out += ",";
        out += std::to_string(v.elems[k]);
      }
      return out + "]";
    }
  }
  return "?";
}

Value logical_value(const Value& v) {
  if (v.sort == Sort::Bool) return Value::of_int(v.i);
  return v;
}

long long euclid_div(long long a, long long d) {
  long long q = a / d;
  long long r = a % d;
  if (r < 0) q += (d > 0) ? -1 : 1;
  return q;
}

long long euclid_mod(long long a, long long d) {
  long long r = a % d;
  if (r < 0) r += (d > 0) ? d : -d;
  return r;
}

// ---------------------------------------------------------------------------
// Constructors

namespace {
TermPtr mk(TermKind k, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->args = std::move(args);
  return t;
}
}  // namespace

TermPtr t_int(long long n) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::IntLit;
  t->num = n;
  return t;
}

TermPtr t_var(std::string name, Sort sort) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Var;
  t->var = std::move(name);
  t->var_sort = sort;
  return t;
}

TermPtr t_add(TermPtr a, TermPtr b) { return mk(TermKind::Add, {std::move(a), std::move(b)}); }
TermPtr t_sub(TermPtr a, TermPtr b) { return mk(TermKind::Sub, {std::move(a), std::move(b)}); }
TermPtr t_mul(TermPtr a, TermPtr b) { return mk(TermKind::Mul, {std::move(a), std::move(b)}); }
TermPtr t_div(TermPtr a, TermPtr b) { return mk(TermKind::Div, {std::move(a), std::move(b)}); }
TermPtr t_mod(TermPtr a, TermPtr b) { return mk(TermKind::Mod, {std::move(a), std::move(b)}); }
TermPtr t_len(TermPtr v) { return mk(TermKind::Len, {std::move(v)}); }
TermPtr t_idx(TermPtr v, TermPtr i) { return mk(TermKind::Idx, {std::move(v), std::move(i)}); }
TermPtr t_upd(TermPtr v, TermPtr i, TermPtr e) {
  return mk(TermKind::Upd, {std::move(v), std::move(i), std::move(e)});
}
TermPtr t_card(TermPtr s) { return mk(TermKind::Card, {std::move(s)}); }
TermPtr t_union(TermPtr a, TermPtr b) { return mk(TermKind::Union, {std::move(a), std::move(b)}); }
TermPtr t_inter(TermPtr a, TermPtr b) { return mk(TermKind::Inter, {std::move(a), std::move(b)}); }
TermPtr t_diff(TermPtr a, TermPtr b) { return mk(TermKind::Diff, {std::move(a), std::move(b)}); }
TermPtr t_setlit(std::vector<TermPtr> elems) { return mk(TermKind::SetLit, std::move(elems)); }
TermPtr t_emptyset() { return t_setlit({}); }

FormulaPtr f_true() {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::True;
  return f;
}

FormulaPtr f_false() {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::False;
  return f;
}

FormulaPtr f_atom(AtomOp op, TermPtr l, TermPtr r) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Atom;
  f->op = op;
  f->lhs = std::move(l);
  f->rhs = std::move(r);
  return f;
}

FormulaPtr f_not(FormulaPtr x) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Not;
  f->a = std::move(x);
  return f;
}

namespace {
FormulaPtr mkbin(FormulaKind k, FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}
}  // namespace

FormulaPtr f_and(FormulaPtr a, FormulaPtr b) { return mkbin(FormulaKind::And, std::move(a), std::move(b)); }
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) { return mkbin(FormulaKind::Or, std::move(a), std::move(b)); }
FormulaPtr f_imp(FormulaPtr a, FormulaPtr b) { return mkbin(FormulaKind::Imp, std::move(a), std::move(b)); }

FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) {
  return f_and(f_imp(a, b), f_imp(b, a));
}

FormulaPtr f_forall(std::string binder, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Forall;
  f->binder = std::move(binder);
  f->a = std::move(body);
  return f;
}

// ---------------------------------------------------------------------------
// Sorts

Sort sort_of(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::IntLit: return Sort::Int;
    case TermKind::Var: return t->var_sort;
    case TermKind::Add:
    case TermKind::Sub:
    case TermKind::Mul:
    case TermKind::Div:
    case TermKind::Mod:
    case TermKind::Len:
    case TermKind::Idx:
    case TermKind::Card: return Sort::Int;
    case TermKind::Upd: return Sort::Vec;
    case TermKind::Union:
    case TermKind::Inter:
    case TermKind::Diff:
    case TermKind::SetLit: return Sort::Set;
  }
  throw BadSort("unknown term kind");
}

namespace {

bool check_term(const TermPtr& t, std::map<std::string, Sort>& sorts, std::string* why);

bool expect(const TermPtr& t, Sort want, std::map<std::string, Sort>& sorts, std::string* why) {
  if (!check_term(t, sorts, why)) return false;
  if (sort_of(t) != want) {
    if (why) *why = std::string("expected ") + sort_name(want) + ", found " + sort_name(sort_of(t));
    return false;
  }
  return true;
}

bool check_term(const TermPtr& t, std::map<std::string, Sort>& sorts, std::string* why) {
  switch (t->kind) {
    case TermKind::IntLit: return true;
    case TermKind::Var: {
      if (t->var_sort == Sort::Bool) {
        if (why) *why = "term variable " + t->var + " has sort bool";
        return false;
      }
      auto it = sorts.find(t->var);
      if (it == sorts.end()) {
        sorts.emplace(t->var, t->var_sort);
      } else if (it->second != t->var_sort) {
        if (why) *why = "variable " + t->var + " used at two sorts";
        return false;
      }
      return true;
    }
    case TermKind::Add:
    case TermKind::Sub:
    case TermKind::Mul:
    case TermKind::Div:
    case TermKind::Mod:
      return expect(t->args[0], Sort::Int, sorts, why) && expect(t->args[1], Sort::Int, sorts, why);
    case TermKind::Len: return expect(t->args[0], Sort::Vec, sorts, why);
    case TermKind::Idx:
      return expect(t->args[0], Sort::Vec, sorts, why) && expect(t->args[1], Sort::Int, sorts, why);
    case TermKind::Upd:
      return expect(t->args[0], Sort::Vec, sorts, why) && expect(t->args[1], Sort::Int, sorts, why) &&
             expect(t->args[2], Sort::Int, sorts, why);
    case TermKind::Card: return expect(t->args[0], Sort::Set, sorts, why);
    case TermKind::Union:
    case TermKind::Inter:
    case TermKind::Diff:
      return expect(t->args[0], Sort::Set, sorts, why) && expect(t->args[1], Sort::Set, sorts, why);
    case TermKind::SetLit:
      for (const auto& e : t->args)
        if (!expect(e, Sort::Int, sorts, why)) return false;
      return true;
  }
  return false;
}

bool check_formula(const FormulaPtr& f, std::map<std::string, Sort>& sorts, std::string* why) {
  switch (f->kind) {
    case FormulaKind::True:
    case FormulaKind::False: return true;
    case FormulaKind::Atom: {
      if (!check_term(f->lhs, sorts, why) || !check_term(f->rhs, sorts, why)) return false;
      Sort l = sort_of(f->lhs), r = sort_of(f->rhs);
      switch (f->op) {
        case AtomOp::Eq:
          if (l != r) {
            if (why) *why = "eq over mismatched sorts";
            return false;
          }
          return true;
        case AtomOp::Lt:
        case AtomOp::Le:
          if (l != Sort::Int || r != Sort::Int) {
            if (why) *why = "order atom over non-int terms";
            return false;
          }
          return true;
        case AtomOp::Mem:
          if (l != Sort::Int || r != Sort::Set) {
            if (why) *why = "mem expects int and set";
            return false;
          }
          return true;
        case AtomOp::Subset:
          if (l != Sort::Set || r != Sort::Set) {
            if (why) *why = "subset expects two sets";
            return false;
          }
          return true;
      }
      return false;
    }
    case FormulaKind::Not: return check_formula(f->a, sorts, why);
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp:
      return check_formula(f->a, sorts, why) && check_formula(f->b, sorts, why);
    case FormulaKind::Forall: {
      // The binder shadows any outer use of the same name; inside, it must
      // be Int-sorted.
      auto outer = sorts.find(f->binder);
      std::optional<Sort> saved;
      if (outer != sorts.end()) {
        saved = outer->second;
        sorts.erase(outer);
      }
      sorts.emplace(f->binder, Sort::Int);
      bool ok = check_formula(f->a, sorts, why);
      sorts.erase(f->binder);
      if (saved) sorts.emplace(f->binder, *saved);
      return ok;
    }
  }
  return false;
}

}  // namespace

bool well_sorted(const FormulaPtr& f, std::string* why) {
  std::map<std::string, Sort> sorts;
  return check_formula(f, sorts, why);
}

// ---------------------------------------------------------------------------
// Structural equality

bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::IntLit: return a->num == b->num;
    case TermKind::Var: return a->var == b->var && a->var_sort == b->var_sort;
    default: break;
  }
  if (a->args.size() != b->args.size()) return false;
  for (size_t k = 0; k < a->args.size(); ++k)
    if (!term_eq(a->args[k], b->args[k])) return false;
  return true;
}

bool formula_eq(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FormulaKind::True:
    case FormulaKind::False: return true;
    case FormulaKind::Atom:
      return a->op == b->op && term_eq(a->lhs, b->lhs) && term_eq(a->rhs, b->rhs);
    case FormulaKind::Not: return formula_eq(a->a, b->a);
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp:
      return formula_eq(a->a, b->a) && formula_eq(a->b, b->b);
    case FormulaKind::Forall:
      return a->binder == b->binder && formula_eq(a->a, b->a);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Free variables

void collect_free_vars(const TermPtr& t, std::map<std::string, Sort>& out) {
  if (t->kind == TermKind::Var) {
    auto it = out.find(t->var);
    if (it == out.end())
      out.emplace(t->var, t->var_sort);
    else if (it->second != t->var_sort)
      throw BadSort("variable " + t->var + " used at two sorts");
    return;
  }
  for (const auto& a : t->args) collect_free_vars(a, out);
}

namespace {
void collect_free(const FormulaPtr& f, std::set<std::string>& bound,
                  std::map<std::string, Sort>& out) {
  switch (f->kind) {
    case FormulaKind::True:
    case FormulaKind::False: return;
    case FormulaKind::Atom: {
      std::map<std::string, Sort> here;
      collect_free_vars(f->lhs, here);
      collect_free_vars(f->rhs, here);
      for (auto& [n, s] : here) {
        if (bound.count(n)) continue;
        auto it = out.find(n);
        if (it == out.end())
          out.emplace(n, s);
        else if (it->second != s)
          throw BadSort("variable " + n + " used at two sorts");
      }
      return;
    }
    case FormulaKind::Not: collect_free(f->a, bound, out); return;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp:
      collect_free(f->a, bound, out);
      collect_free(f->b, bound, out);
      return;
    case FormulaKind::Forall: {
      bool fresh = bound.insert(f->binder).second;
      collect_free(f->a, bound, out);
      if (fresh) bound.erase(f->binder);
      return;
    }
  }
}
}  // namespace

std::map<std::string, Sort> free_vars(const FormulaPtr& f) {
  std::set<std::string> bound;
  std::map<std::string, Sort> out;
  collect_free(f, bound, out);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

bool term_mentions(const TermPtr& t, const std::string& name) {
  if (t->kind == TermKind::Var) return t->var == name;
  for (const auto& a : t->args)
    if (term_mentions(a, name)) return true;
  return false;
}

TermPtr subst_term_map(const TermPtr& t, const std::map<std::string, TermPtr>& m) {
  if (t->kind == TermKind::Var) {
    auto it = m.find(t->var);
    if (it == m.end()) return t;
    if (sort_of(it->second) != t->var_sort)
      throw SortMismatch("substituting " + t->var + " with a term of different sort");
    return it->second;
  }
  if (t->args.empty()) return t;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  bool changed = false;
  for (const auto& a : t->args) {
    TermPtr na = subst_term_map(a, m);
    changed |= na.get() != a.get();
    args.push_back(std::move(na));
  }
  if (!changed) return t;
  auto nt = std::make_shared<Term>(*t);
  nt->args = std::move(args);
  return nt;
}

std::string pick_fresh(const std::string& base, const std::map<std::string, TermPtr>& m,
                       const FormulaPtr& body) {
  std::string cand = base;
  auto clashes = [&](const std::string& n) {
    for (const auto& [from, to] : m) {
      if (from == n) return true;
      if (term_mentions(to, n)) return true;
    }
    // avoid capturing a var free in the body under the new name
    try {
      auto fv = free_vars(body);
      if (fv.count(n)) return true;
    } catch (const BadSort&) {
      return true;
    }
    return false;
  };
  while (clashes(cand)) cand += "'";
  return cand;
}

FormulaPtr subst_map(const FormulaPtr& f, std::map<std::string, TermPtr> m) {
  if (m.empty()) return f;
  switch (f->kind) {
    case FormulaKind::True:
    case FormulaKind::False: return f;
    case FormulaKind::Atom:
      return f_atom(f->op, subst_term_map(f->lhs, m), subst_term_map(f->rhs, m));
    case FormulaKind::Not: return f_not(subst_map(f->a, m));
    case FormulaKind::And: return f_and(subst_map(f->a, m), subst_map(f->b, m));
    case FormulaKind::Or: return f_or(subst_map(f->a, m), subst_map(f->b, m));
    case FormulaKind::Imp: return f_imp(subst_map(f->a, m), subst_map(f->b, m));
    case FormulaKind::Forall: {
      m.erase(f->binder);  // bound occurrences untouched
      if (m.empty()) return f;
      bool capture = false;
      for (const auto& [from, to] : m)
        if (term_mentions(to, f->binder)) { capture = true; break; }
      if (!capture) return f_forall(f->binder, subst_map(f->a, m));
      std::string fresh = pick_fresh(f->binder, m, f->a);
      std::map<std::string, TermPtr> rn{{f->binder, t_var(fresh, Sort::Int)}};
      FormulaPtr body = subst_map(f->a, rn);
      return f_forall(fresh, subst_map(body, m));
    }
  }
  return f;
}

}  // namespace

TermPtr subst_term(const TermPtr& t, const std::string& var, const TermPtr& repl) {
  return subst_term_map(t, {{var, repl}});
}

FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const TermPtr& t) {
  return subst_map(f, {{var, t}});
}

FormulaPtr subst_parallel(const FormulaPtr& f, const std::map<std::string, TermPtr>& m) {
  return subst_map(f, m);
}

TermPtr subst_parallel_term(const TermPtr& t, const std::map<std::string, TermPtr>& m) {
  return subst_term_map(t, m);
}

FormulaPtr rename_free(const FormulaPtr& f, const std::map<std::string, std::string>& m) {
  // Sorts are preserved: look up each free name's sort before building the
  // replacement variable.
  std::map<std::string, TermPtr> tm;
  auto fv = free_vars(f);
  for (const auto& [from, to] : m) {
    auto it = fv.find(from);
    if (it == fv.end()) continue;
    tm.emplace(from, t_var(to, it->second));
  }
  return subst_map(f, tm);
}

}  // namespace liss::logic
