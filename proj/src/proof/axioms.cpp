// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0
//
// The axiom schema catalog (v1). Every schema is validated against the
// enumeration oracle in the test suite; nothing here is assumed.

#include "liss/proof.hpp"

#include <cctype>

namespace liss::proof {

using namespace liss::logic;

namespace {

TermPtr mv(const char* n, Sort s) { return t_var(n, s); }

std::vector<AxiomSchema> build_catalog() {
  std::vector<AxiomSchema> cat;
  auto add = [&](const char* id, std::map<std::string, Sort> mvs, FormulaPtr pattern) {
    AxiomSchema s;
    s.id = id;
    s.metavars = std::move(mvs);
    s.pattern = std::move(pattern);
    cat.push_back(std::move(s));
  };

  TermPtr x = mv("x", Sort::Int), y = mv("y", Sort::Int);
  TermPtr A = mv("A", Sort::Set), B = mv("B", Sort::Set);
  TermPtr v = mv("v", Sort::Vec);
  TermPtr i = mv("i", Sort::Int), j = mv("j", Sort::Int), e = mv("e", Sort::Int);
  TermPtr d = mv("d", Sort::Int);

  // set membership laws
  add("mem-union", {{"x", Sort::Int}, {"A", Sort::Set}, {"B", Sort::Set}},
      f_iff(f_atom(AtomOp::Mem, x, t_union(A, B)),
            f_or(f_atom(AtomOp::Mem, x, A), f_atom(AtomOp::Mem, x, B))));
  add("mem-inter", {{"x", Sort::Int}, {"A", Sort::Set}, {"B", Sort::Set}},
      f_iff(f_atom(AtomOp::Mem, x, t_inter(A, B)),
            f_and(f_atom(AtomOp::Mem, x, A), f_atom(AtomOp::Mem, x, B))));
  add("mem-diff", {{"x", Sort::Int}, {"A", Sort::Set}, {"B", Sort::Set}},
      f_iff(f_atom(AtomOp::Mem, x, t_diff(A, B)),
            f_and(f_atom(AtomOp::Mem, x, A), f_not(f_atom(AtomOp::Mem, x, B)))));
  add("mem-empty", {{"x", Sort::Int}}, f_not(f_atom(AtomOp::Mem, x, t_emptyset())));

  // mem-setlit is a variadic family; instances are built programmatically.
  {
    AxiomSchema s;
    s.id = "mem-setlit";
    s.metavars = {{"x", Sort::Int}};
    s.variadic = true;
    cat.push_back(std::move(s));
  }

  // subset as a bounded forall
  add("subset-def", {{"A", Sort::Set}, {"B", Sort::Set}},
      f_iff(f_atom(AtomOp::Subset, A, B),
            f_forall("u", f_imp(f_atom(AtomOp::Mem, t_var("u", Sort::Int), A),
                                f_atom(AtomOp::Mem, t_var("u", Sort::Int), B)))));

  // cardinality and length non-negativity
  add("card-nonneg", {{"A", Sort::Set}}, f_atom(AtomOp::Le, t_int(0), t_card(A)));
  add("len-nonneg", {{"v", Sort::Vec}}, f_atom(AtomOp::Le, t_int(0), t_len(v)));
  add("card-union-le", {{"A", Sort::Set}, {"B", Sort::Set}},
      f_atom(AtomOp::Le, t_card(t_union(A, B)), t_add(t_card(A), t_card(B))));

  // Vector select/store laws. Each is guarded by the bounds of the
  // indices it evaluates: idx/upd are partial, and the enumeration
  // semantics treats a faulting state as a refutation, so the unguarded
  // statements would not be valid formulas.
  auto in_bounds = [&](TermPtr k, TermPtr vec) {
    return f_and(f_atom(AtomOp::Le, t_int(0), k), f_atom(AtomOp::Lt, k, t_len(vec)));
  };
  add("sel-upd-eq",
      {{"v", Sort::Vec}, {"i", Sort::Int}, {"j", Sort::Int}, {"e", Sort::Int}},
      f_imp(f_and(in_bounds(i, v), f_atom(AtomOp::Eq, i, j)),
            f_atom(AtomOp::Eq, t_idx(t_upd(v, i, e), j), e)));
  add("sel-upd-neq",
      {{"v", Sort::Vec}, {"i", Sort::Int}, {"j", Sort::Int}, {"e", Sort::Int}},
      f_imp(f_and(f_and(in_bounds(i, v), in_bounds(j, v)), f_not(f_atom(AtomOp::Eq, i, j))),
            f_atom(AtomOp::Eq, t_idx(t_upd(v, i, e), j), t_idx(v, j))));
  add("len-upd", {{"v", Sort::Vec}, {"i", Sort::Int}, {"e", Sort::Int}},
      f_imp(in_bounds(i, v), f_atom(AtomOp::Eq, t_len(t_upd(v, i, e)), t_len(v))));

  // Euclidean div/mod, one schema per divisor sign
  {
    FormulaPtr decomp = f_atom(AtomOp::Eq, e, t_add(t_mul(d, t_div(e, d)), t_mod(e, d)));
    FormulaPtr nonneg = f_atom(AtomOp::Le, t_int(0), t_mod(e, d));
    add("divmod-pos", {{"e", Sort::Int}, {"d", Sort::Int}},
        f_imp(f_atom(AtomOp::Le, t_int(1), d),
              f_and(f_and(decomp, nonneg), f_atom(AtomOp::Lt, t_mod(e, d), d))));
    add("divmod-neg", {{"e", Sort::Int}, {"d", Sort::Int}},
        f_imp(f_atom(AtomOp::Le, d, t_int(-1)),
              f_and(f_and(decomp, nonneg),
                    f_atom(AtomOp::Lt, t_mod(e, d), t_sub(t_int(0), d)))));
  }

  // integer order facts the prover leans on
  add("int-neq-split", {{"x", Sort::Int}, {"y", Sort::Int}},
      f_imp(f_not(f_atom(AtomOp::Eq, x, y)),
            f_or(f_atom(AtomOp::Le, t_add(x, t_int(1)), y),
                 f_atom(AtomOp::Le, t_add(y, t_int(1)), x))));
  add("int-le-split", {{"x", Sort::Int}, {"y", Sort::Int}},
      f_imp(f_atom(AtomOp::Le, x, y),
            f_or(f_atom(AtomOp::Le, t_add(x, t_int(1)), y), f_atom(AtomOp::Eq, x, y))));
  add("int-antisym", {{"x", Sort::Int}, {"y", Sort::Int}},
      f_imp(f_and(f_atom(AtomOp::Le, x, y), f_atom(AtomOp::Le, y, x)),
            f_atom(AtomOp::Eq, x, y)));
  add("not-le-flip", {{"x", Sort::Int}, {"y", Sort::Int}},
      f_imp(f_not(f_atom(AtomOp::Le, x, y)), f_atom(AtomOp::Le, t_add(y, t_int(1)), x)));
  add("not-lt-flip", {{"x", Sort::Int}, {"y", Sort::Int}},
      f_imp(f_not(f_atom(AtomOp::Lt, x, y)), f_atom(AtomOp::Le, y, x)));

  return cat;
}

}  // namespace

const std::vector<AxiomSchema>& axiom_catalog() {
  static const std::vector<AxiomSchema> cat = build_catalog();
  return cat;
}

FormulaPtr instantiate_schema(const std::string& id,
                              const std::map<std::string, TermPtr>& inst) {
  const AxiomSchema* schema = nullptr;
  for (const auto& s : axiom_catalog())
    if (s.id == id) { schema = &s; break; }
  if (!schema) throw BadAxiomInstance("unknown schema id: " + id);

  if (schema->variadic) {
    // mem-setlit: x in {e0,...,ek-1} <-> x = e0 \/ (x = e1 \/ ...)
    auto xit = inst.find("x");
    if (xit == inst.end() || sort_of(xit->second) != Sort::Int)
      throw BadAxiomInstance("mem-setlit needs an int metavariable x");
    std::vector<TermPtr> elems;
    for (size_t k = 0;; ++k) {
      auto it = inst.find("e" + std::to_string(k));
      if (it == inst.end()) break;
      if (sort_of(it->second) != Sort::Int)
        throw BadAxiomInstance("mem-setlit elements must be int");
      elems.push_back(it->second);
    }
    if (elems.empty() || inst.size() != elems.size() + 1)
      throw BadAxiomInstance("mem-setlit needs contiguous e0..e{k-1} and nothing else");
    FormulaPtr rhs = f_atom(AtomOp::Eq, xit->second, elems.back());
    for (size_t k = elems.size() - 1; k-- > 0;)
      rhs = f_or(f_atom(AtomOp::Eq, xit->second, elems[k]), rhs);
    return f_iff(f_atom(AtomOp::Mem, xit->second, t_setlit(elems)), rhs);
  }

  if (inst.size() != schema->metavars.size())
    throw BadAxiomInstance("schema " + id + " expects " +
                           std::to_string(schema->metavars.size()) + " metavariables");
  std::map<std::string, TermPtr> sub;
  for (const auto& [name, sort] : schema->metavars) {
    auto it = inst.find(name);
    if (it == inst.end()) throw BadAxiomInstance("schema " + id + " missing metavariable " + name);
    if (sort_of(it->second) != sort)
      throw BadAxiomInstance("schema " + id + " metavariable " + name + " wants sort " +
                             sort_name(sort));
    sub.emplace(name, it->second);
  }
  return subst_parallel(schema->pattern, sub);
}

}  // namespace liss::proof
