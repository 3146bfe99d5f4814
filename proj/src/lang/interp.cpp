// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0
//
// Big-step reference interpreter. Semantics shared with the VM: Euclidean
// div/mod, eager and/or, wraparound 64-bit arithmetic, value-semantics
// sets/vectors, traps as values.

#include "liss/lang.hpp"

#include <algorithm>

namespace liss::lang {

using namespace liss::logic;

const char* trap_name(TrapKind k) {
  switch (k) {
    case TrapKind::DivByZero: return "DivByZero";
    case TrapKind::OutOfBounds: return "OutOfBounds";
    case TrapKind::InputExhausted: return "InputExhausted";
    case TrapKind::AssertFailed: return "AssertFailed";
  }
  return "?";
}

namespace {

long long wrap_add(long long a, long long b) {
  return (long long)((unsigned long long)a + (unsigned long long)b);
}
long long wrap_sub(long long a, long long b) {
  return (long long)((unsigned long long)a - (unsigned long long)b);
}
long long wrap_mul(long long a, long long b) {
  return (long long)((unsigned long long)a * (unsigned long long)b);
}

struct TrapSignal {
  TrapKind kind;
  Location loc;
};

struct FuelOut {};

struct ReturnSignal {
  std::optional<Value> value;
};

class Interp {
 public:
  Interp(const TypedProgram& p, const std::vector<long long>& inputs, long long fuel)
      : prog_(p), inputs_(inputs), fuel_(fuel) {}

  Outcome run_entry(const std::string& entry) {
    Outcome out;
    const FunctionDecl* fn = prog_.find(entry);
    if (!fn) {
      out.status = Outcome::Status::Trap;
      out.trap = TrapKind::AssertFailed;
      return out;
    }
    try {
      std::map<std::string, Value> store;
      exec_function(*fn, {}, store);
      out.status = Outcome::Status::Ok;
      out.outputs = outputs_;
      out.final_store = std::move(store);
    } catch (const TrapSignal& t) {
      out.status = Outcome::Status::Trap;
      out.trap = t.kind;
      out.trap_loc = t.loc;
      out.outputs = outputs_;
    } catch (const FuelOut&) {
      out.status = Outcome::Status::OutOfFuel;
      out.outputs = outputs_;
    }
    return out;
  }

 private:
  const TypedProgram& prog_;
  const std::vector<long long>& inputs_;
  long long fuel_;
  size_t input_pos_ = 0;
  std::vector<long long> outputs_;

  void tick(Location loc) {
    (void)loc;
    if (--fuel_ <= 0) throw FuelOut{};
  }

  Value zero_of(Sort s) {
    switch (s) {
      case Sort::Int: return Value::of_int(0);
      case Sort::Bool: return Value::of_bool(false);
      case Sort::Set: return Value::of_set({});
      case Sort::Vec: return Value::of_vec({});
    }
    return Value::of_int(0);
  }

  std::optional<Value> exec_function(const FunctionDecl& fn, std::vector<Value> args,
                                     std::map<std::string, Value>& store) {
    for (size_t k = 0; k < fn.params.size(); ++k) store[fn.params[k].first] = std::move(args[k]);
    try {
      exec_block(fn.body, store);
    } catch (ReturnSignal& r) {
      return std::move(r.value);
    }
    return std::nullopt;
  }

  void exec_block(const std::vector<StmtPtr>& body, std::map<std::string, Value>& store) {
    for (const auto& st : body) exec_stmt(*st, store);
  }

  void exec_stmt(const Stmt& st, std::map<std::string, Value>& store) {
    tick(st.loc);
    switch (st.kind) {
      case StmtKind::VarDecl:
      case StmtKind::Assign:
        store[st.name] = eval(*st.e1, store);
        return;
      case StmtKind::VecStore: {
        Value idx = eval(*st.e1, store);
        Value val = eval(*st.e2, store);
        Value& v = store[st.name];
        if (idx.i < 0 || (size_t)idx.i >= v.elems.size())
          throw TrapSignal{TrapKind::OutOfBounds, st.loc};
        v.elems[(size_t)idx.i] = val.i;
        return;
      }
      case StmtKind::If: {
        Value c = eval(*st.e1, store);
        exec_block(c.as_bool() ? st.body : st.else_body, store);
        return;
      }
      case StmtKind::While:
        while (true) {
          tick(st.loc);
          Value c = eval(*st.e1, store);
          if (!c.as_bool()) break;
          exec_block(st.body, store);
        }
        return;
      case StmtKind::Assert: {
        // runtime checks cover the ground fragment; quantified asserts are
        // static-only
        GroundState gs;
        for (const auto& [n, v] : store) gs.env[n] = logical_value(v);
        try {
          if (!eval_ground(st.assert_f, gs)) throw TrapSignal{TrapKind::AssertFailed, st.loc};
        } catch (const NonGround&) {
          // quantifier or ghost: skip at runtime
        } catch (const EvalError& e) {
          throw TrapSignal{e.kind == EvalError::Kind::DivByZero ? TrapKind::DivByZero
                                                                : TrapKind::OutOfBounds,
                           st.loc};
        }
        return;
      }
      case StmtKind::Return: {
        ReturnSignal r;
        if (st.e1) r.value = eval(*st.e1, store);
        throw r;
      }
      case StmtKind::Print: {
        Value v = eval(*st.e1, store);
        outputs_.push_back(v.i);
        return;
      }
    }
  }

  Value eval(const Expr& e, std::map<std::string, Value>& store) {
    tick(e.loc);
    switch (e.kind) {
      case ExprKind::IntLit: return Value::of_int(e.num);
      case ExprKind::BoolLit: return Value::of_bool(e.bval);
      case ExprKind::VarRef: return store[e.name];
      case ExprKind::Add:
        return Value::of_int(wrap_add(eval(*e.args[0], store).i, eval(*e.args[1], store).i));
      case ExprKind::Sub:
        return Value::of_int(wrap_sub(eval(*e.args[0], store).i, eval(*e.args[1], store).i));
      case ExprKind::Mul:
        return Value::of_int(wrap_mul(eval(*e.args[0], store).i, eval(*e.args[1], store).i));
      case ExprKind::Div:
      case ExprKind::Mod: {
        long long a = eval(*e.args[0], store).i;
        long long d = eval(*e.args[1], store).i;
        if (d == 0) throw TrapSignal{TrapKind::DivByZero, e.loc};
        return Value::of_int(e.kind == ExprKind::Div ? euclid_div(a, d) : euclid_mod(a, d));
      }
      case ExprKind::Eq: {
        Value a = eval(*e.args[0], store);
        Value b = eval(*e.args[1], store);
        return Value::of_bool(a == b);
      }
      case ExprKind::Lt: case ExprKind::Le: {
        Value a = eval(*e.args[0], store);
        Value b = eval(*e.args[1], store);
        return Value::of_bool(e.kind == ExprKind::Lt ? a.i < b.i : a.i <= b.i);
      }
      case ExprKind::Not: return Value::of_bool(!eval(*e.args[0], store).as_bool());
      case ExprKind::And: case ExprKind::Or: {
        // eager, matching the VM's AND/OR opcodes
        Value a = eval(*e.args[0], store);
        Value b = eval(*e.args[1], store);
        bool r = e.kind == ExprKind::And ? (a.as_bool() && b.as_bool())
                                         : (a.as_bool() || b.as_bool());
        return Value::of_bool(r);
      }
      case ExprKind::SetLit: {
        std::vector<long long> elems;
        for (const auto& a : e.args) elems.push_back(eval(*a, store).i);
        return Value::of_set(std::move(elems));
      }
      case ExprKind::Union: case ExprKind::Inter: case ExprKind::Diff: {
        Value a = eval(*e.args[0], store);
        Value b = eval(*e.args[1], store);
        std::vector<long long> r;
        if (e.kind == ExprKind::Union) {
          r = a.elems;
          r.insert(r.end(), b.elems.begin(), b.elems.end());
        } else if (e.kind == ExprKind::Inter) {
          std::set_intersection(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
                                std::back_inserter(r));
        } else {
          std::set_difference(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
                              std::back_inserter(r));
        }
        return Value::of_set(std::move(r));
      }
      case ExprKind::Mem: {
        Value x = eval(*e.args[0], store);
        Value s = eval(*e.args[1], store);
        return Value::of_bool(std::binary_search(s.elems.begin(), s.elems.end(), x.i));
      }
      case ExprKind::Card:
        return Value::of_int((long long)eval(*e.args[0], store).elems.size());
      case ExprKind::NewVec: {
        Value n = eval(*e.args[0], store);
        if (n.i < 0 || n.i > 1'000'000) throw TrapSignal{TrapKind::OutOfBounds, e.loc};
        return Value::of_vec(std::vector<long long>((size_t)n.i, 0));
      }
      case ExprKind::Idx: {
        Value v = eval(*e.args[0], store);
        Value i = eval(*e.args[1], store);
        if (i.i < 0 || (size_t)i.i >= v.elems.size())
          throw TrapSignal{TrapKind::OutOfBounds, e.loc};
        return Value::of_int(v.elems[(size_t)i.i]);
      }
      case ExprKind::Len:
        return Value::of_int((long long)eval(*e.args[0], store).elems.size());
      case ExprKind::Call: {
        const FunctionDecl* callee = prog_.find(e.name);
        std::vector<Value> args;
        for (const auto& a : e.args) args.push_back(eval(*a, store));
        std::map<std::string, Value> callee_store;
        auto r = exec_function(*callee, std::move(args), callee_store);
        return r ? *r : Value::of_int(0);
      }
      case ExprKind::Read: {
        if (input_pos_ >= inputs_.size()) throw TrapSignal{TrapKind::InputExhausted, e.loc};
        return Value::of_int(inputs_[input_pos_++]);
      }
      default:
        // annotation-only nodes cannot appear in executed code (typecheck)
        throw TrapSignal{TrapKind::AssertFailed, e.loc};
    }
  }
};

}  // namespace

Outcome interpret_source(const TypedProgram& p, const std::string& entry,
                         const std::vector<long long>& inputs, long long fuel) {
  Interp interp(p, inputs, fuel);
  return interp.run_entry(entry);
}

}  // namespace liss::lang
