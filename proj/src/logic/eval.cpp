// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0

#include "liss/logic.hpp"

#include <algorithm>

namespace liss::logic {

namespace {

// Wraparound 64-bit arithmetic: deterministic and UB-free. The interpreter,
// the VM and the evaluator all share these semantics.
long long wrap_add(long long a, long long b) {
  return (long long)((unsigned long long)a + (unsigned long long)b);
}
long long wrap_sub(long long a, long long b) {
  return (long long)((unsigned long long)a - (unsigned long long)b);
}
long long wrap_mul(long long a, long long b) {
  return (long long)((unsigned long long)a * (unsigned long long)b);
}

}  // namespace

Value eval_term(const TermPtr& t, const GroundState& s) {
  switch (t->kind) {
    case TermKind::IntLit: return Value::of_int(t->num);
    case TermKind::Var: {
      auto it = s.env.find(t->var);
      if (it == s.env.end()) throw NonGround("unbound variable " + t->var);
      return it->second;
    }
    case TermKind::Add:
      return Value::of_int(wrap_add(eval_term(t->args[0], s).i, eval_term(t->args[1], s).i));
    case TermKind::Sub:
      return Value::of_int(wrap_sub(eval_term(t->args[0], s).i, eval_term(t->args[1], s).i));
    case TermKind::Mul:
      return Value::of_int(wrap_mul(eval_term(t->args[0], s).i, eval_term(t->args[1], s).i));
    case TermKind::Div: {
      long long a = eval_term(t->args[0], s).i, d = eval_term(t->args[1], s).i;
      if (d == 0) throw EvalError(EvalError::Kind::DivByZero, "division by zero");
      return Value::of_int(euclid_div(a, d));
    }
    case TermKind::Mod: {
      long long a = eval_term(t->args[0], s).i, d = eval_term(t->args[1], s).i;
      if (d == 0) throw EvalError(EvalError::Kind::DivByZero, "modulo by zero");
      return Value::of_int(euclid_mod(a, d));
    }
    case TermKind::Len: return Value::of_int((long long)eval_term(t->args[0], s).elems.size());
    case TermKind::Idx: {
      Value v = eval_term(t->args[0], s);
      long long i = eval_term(t->args[1], s).i;
      if (i < 0 || (size_t)i >= v.elems.size())
        throw EvalError(EvalError::Kind::IdxOutOfBounds, "index out of bounds");
      return Value::of_int(v.elems[(size_t)i]);
    }
    case TermKind::Upd: {
      Value v = eval_term(t->args[0], s);
      long long i = eval_term(t->args[1], s).i;
      long long e = eval_term(t->args[2], s).i;
      if (i < 0 || (size_t)i >= v.elems.size())
        throw EvalError(EvalError::Kind::IdxOutOfBounds, "update index out of bounds");
      v.elems[(size_t)i] = e;
      return v;
    }
    case TermKind::Card: return Value::of_int((long long)eval_term(t->args[0], s).elems.size());
    case TermKind::Union: {
      Value a = eval_term(t->args[0], s), b = eval_term(t->args[1], s);
      std::vector<long long> out = a.elems;
      out.insert(out.end(), b.elems.begin(), b.elems.end());
      return Value::of_set(std::move(out));
    }
    case TermKind::Inter: {
      Value a = eval_term(t->args[0], s), b = eval_term(t->args[1], s);
      std::vector<long long> out;
      std::set_intersection(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
                            std::back_inserter(out));
      return Value::of_set(std::move(out));
    }
    case TermKind::Diff: {
      Value a = eval_term(t->args[0], s), b = eval_term(t->args[1], s);
      std::vector<long long> out;
      std::set_difference(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
                          std::back_inserter(out));
      return Value::of_set(std::move(out));
    }
    case TermKind::SetLit: {
      std::vector<long long> out;
      out.reserve(t->args.size());
      for (const auto& e : t->args) out.push_back(eval_term(e, s).i);
      return Value::of_set(std::move(out));
    }
  }
  throw NonGround("bad term");
}

namespace {

bool eval_atom(const Formula& f, const GroundState& s) {
  Value l = eval_term(f.lhs, s);
  Value r = eval_term(f.rhs, s);
  switch (f.op) {
    case AtomOp::Eq: return l == r;
    case AtomOp::Lt: return l.i < r.i;
    case AtomOp::Le: return l.i <= r.i;
    case AtomOp::Mem: return std::binary_search(r.elems.begin(), r.elems.end(), l.i);
    case AtomOp::Subset:
      return std::includes(r.elems.begin(), r.elems.end(), l.elems.begin(), l.elems.end());
  }
  return false;
}

}  // namespace

bool eval_ground(const FormulaPtr& f, const GroundState& s) {
  switch (f->kind) {
    case FormulaKind::True: return true;
    case FormulaKind::False: return false;
    case FormulaKind::Atom: return eval_atom(*f, s);
    case FormulaKind::Not: return !eval_ground(f->a, s);
    case FormulaKind::And: return eval_ground(f->a, s) && eval_ground(f->b, s);
    case FormulaKind::Or: return eval_ground(f->a, s) || eval_ground(f->b, s);
    case FormulaKind::Imp: return !eval_ground(f->a, s) || eval_ground(f->b, s);
    case FormulaKind::Forall:
      throw NonGround("quantifier in ground evaluation");
  }
  throw NonGround("bad formula");
}

}  // namespace liss::logic
