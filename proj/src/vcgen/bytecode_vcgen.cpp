// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0
//
// Bytecode wp over cut-point segments with a symbolic operand stack.
//
// Walk rules (mirrored exactly by the source generator):
//   - the store maps slots to terms (bools as 0/1 ints); LOAD of a bool
//     slot pushes the atom (value = 1);
//   - JZ inside a segment combines branches as (c -> wpF) /\ (!c -> wpJ)
//     and duplicates downstream side obligations into both branches;
//   - a loop-head segment starts with a pure condition spine ending in a
//     JZ whose condition joins the hypothesis: (inv /\ c) -> ... and
//     (inv /\ !c) -> ...;
//   - CALL: precondition side, then the callee's ensures wraps everything
//     downstream; NEWVEC: 0 <= len side, then the length/zero fact wraps
//     downstream; READ: a fresh havoc variable;
//   - assert markers emit a side and wrap downstream with the asserted
//     formula;
//   - stores into bool slots case-split on the stored condition.

#include "liss/vcgen.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace liss::vcgen {

using namespace liss::logic;
using vm::BytecodeFunction;
using vm::BytecodeModule;
using vm::Instruction;
using vm::Opcode;

namespace {

struct SymVal {
  TermPtr term;     // set when the entry is int/set/vec sorted
  FormulaPtr form;  // set when the entry is bool sorted
};

struct SideOb {
  FormulaPtr f;
  Site site;
  int pc;
};

struct WalkResult {
  FormulaPtr f;
  std::vector<SideOb> sides;
};

using Store = std::map<int, TermPtr>;

struct FnContext {
  const BytecodeModule& m;
  const BytecodeFunction& fn;
  std::map<int, int> read_idx, call_idx, new_idx;  // pc -> havoc index
  std::vector<std::string> ghosts;                 // old_* names used by ensures, slot order
  long long steps = 0;

  [[noreturn]] void fail(const std::string& what) { throw VcgenError(what, fn.name); }

  void tick() {
    if (++steps > 2'000'000) fail("segment walk exceeds the complexity budget");
  }

  std::string slot_name(int k) const {
    auto it = fn.table.varmap.find(k);
    if (it != fn.table.varmap.end()) return it->second;
    return "s" + std::to_string(k);  // uncovered slots get positional names
  }

  Sort slot_sort(int k) const {
    auto it = fn.table.sortmap.find(k);
    return it == fn.table.sortmap.end() ? Sort::Int : it->second;
  }

  Store initial_store() const {
    Store st;
    for (int k = 0; k < fn.slot_count(); ++k) {
      Sort s = slot_sort(k);
      st[k] = t_var(slot_name(k), s == Sort::Bool ? Sort::Int : s);
    }
    return st;
  }

  FormulaPtr subst_store(const FormulaPtr& f, const Store& st) const {
    std::map<std::string, TermPtr> m2;
    for (const auto& [k, t] : st) m2[slot_name(k)] = t;
    return subst_parallel(f, m2);
  }

  // terminal postcondition at RET/HALT
  FormulaPtr exit_formula(const Store& st, const std::optional<TermPtr>& result) const {
    std::map<std::string, TermPtr> m2;
    for (const auto& [k, t] : st) m2[slot_name(k)] = t;
    if (result) m2["result"] = *result;
    return subst_parallel(fn.table.ensures_f, m2);
  }

  FormulaPtr entry_hypothesis() const {
    std::vector<FormulaPtr> eqs;
    for (const auto& g : ghosts) {
      std::string base = g.substr(4);  // strip old_
      Sort s = Sort::Int;
      for (const auto& [k, n] : fn.table.varmap)
        if (n == base) s = slot_sort(k) == Sort::Bool ? Sort::Int : slot_sort(k);
      eqs.push_back(f_atom(AtomOp::Eq, t_var(g, s), t_var(base, s)));
    }
    return and_fold(fn.table.requires_f, eqs);
  }
};

FormulaPtr wrap_imp(const FormulaPtr& hyp, const FormulaPtr& body) { return f_imp(hyp, body); }

std::vector<SideOb> wrap_sides(const FormulaPtr& hyp, std::vector<SideOb> sides) {
  for (auto& s : sides) s.f = wrap_imp(hyp, s.f);
  return sides;
}

struct Walker {
  FnContext& cx;
  const std::map<int, FormulaPtr>& cuts;  // invariant labels

  WalkResult walk(int pc, Store store, std::vector<SymVal> stack, bool at_start,
                  bool marker_done = false) {
    cx.tick();
    if ((size_t)pc >= cx.fn.code.size()) cx.fail("walk fell off the code");
    if (!at_start && !marker_done) {
      auto am = cx.fn.table.asserts.find(pc);
      if (am != cx.fn.table.asserts.end()) {
        FormulaPtr fa = cx.subst_store(am->second, store);
        WalkResult rest = walk(pc, std::move(store), std::move(stack), false, true);
        WalkResult out;
        out.f = wrap_imp(fa, rest.f);
        out.sides.push_back({fa, Site::Assert, pc});
        for (auto& s : rest.sides) s.f = wrap_imp(fa, s.f);
        out.sides.insert(out.sides.end(), rest.sides.begin(), rest.sides.end());
        return out;
      }
    }
    if (!at_start) {
      auto cut = cuts.find(pc);
      if (cut != cuts.end()) return {cx.subst_store(cut->second, store), {}};
    }

    const Instruction& ins = cx.fn.code[(size_t)pc];
    auto pop_term = [&](std::vector<SymVal>& st) -> TermPtr {
      if (st.empty() || !st.back().term) cx.fail("symbolic stack mismatch (term expected)");
      TermPtr t = st.back().term;
      st.pop_back();
      return t;
    };
    auto pop_form = [&](std::vector<SymVal>& st) -> FormulaPtr {
      if (st.empty() || !st.back().form) cx.fail("symbolic stack mismatch (bool expected)");
      FormulaPtr f = st.back().form;
      st.pop_back();
      return f;
    };
    auto next = [&](Store st, std::vector<SymVal> sk) {
      return walk(pc + 1, std::move(st), std::move(sk), false);
    };

    switch (ins.op) {
      case Opcode::PUSH:
        stack.push_back({t_int(ins.imm), nullptr});
        return next(std::move(store), std::move(stack));
      case Opcode::LOAD: {
        int k = (int)ins.imm;
        if (cx.slot_sort(k) == Sort::Bool)
          stack.push_back({nullptr, f_atom(AtomOp::Eq, store[k], t_int(1))});
        else
          stack.push_back({store[k], nullptr});
        return next(std::move(store), std::move(stack));
      }
      case Opcode::STORE: {
        int k = (int)ins.imm;
        if (stack.empty()) cx.fail("symbolic stack underflow at STORE");
        SymVal v = stack.back();
        stack.pop_back();
        if (v.term) {
          store[k] = v.term;
          return next(std::move(store), std::move(stack));
        }
        // bool store: case split on the condition
        Store st1 = store, st0 = std::move(store);
        st1[k] = t_int(1);
        st0[k] = t_int(0);
        WalkResult r1 = walk(pc + 1, std::move(st1), stack, false);
        WalkResult r0 = walk(pc + 1, std::move(st0), std::move(stack), false);
        WalkResult out;
        out.f = f_and(wrap_imp(v.form, r1.f), wrap_imp(f_not(v.form), r0.f));
        out.sides = wrap_sides(v.form, std::move(r1.sides));
        auto s0 = wrap_sides(f_not(v.form), std::move(r0.sides));
        out.sides.insert(out.sides.end(), s0.begin(), s0.end());
        return out;
      }
      case Opcode::ADD: case Opcode::SUB: case Opcode::MUL: {
        TermPtr b = pop_term(stack), a = pop_term(stack);
        TermPtr r = ins.op == Opcode::ADD ? t_add(a, b)
                    : ins.op == Opcode::SUB ? t_sub(a, b)
                                            : t_mul(a, b);
        stack.push_back({r, nullptr});
        return next(std::move(store), std::move(stack));
      }
      case Opcode::DIV: case Opcode::MOD: {
        TermPtr b = pop_term(stack), a = pop_term(stack);
        stack.push_back({ins.op == Opcode::DIV ? t_div(a, b) : t_mod(a, b), nullptr});
        WalkResult rest = next(std::move(store), std::move(stack));
        WalkResult out;
        out.f = rest.f;
        out.sides.push_back({guard_div(b), Site::SafetyDivByZero, pc});
        out.sides.insert(out.sides.end(), rest.sides.begin(), rest.sides.end());
        return out;
      }
      case Opcode::EQ: {
        if (stack.size() >= 2 && stack.back().form) {
          FormulaPtr b = pop_form(stack), a = pop_form(stack);
          stack.push_back({nullptr, f_iff(a, b)});
        } else {
          TermPtr b = pop_term(stack), a = pop_term(stack);
          stack.push_back({nullptr, f_atom(AtomOp::Eq, a, b)});
        }
        return next(std::move(store), std::move(stack));
      }
      case Opcode::LT: case Opcode::LE: {
        TermPtr b = pop_term(stack), a = pop_term(stack);
        stack.push_back({nullptr, f_atom(ins.op == Opcode::LT ? AtomOp::Lt : AtomOp::Le, a, b)});
        return next(std::move(store), std::move(stack));
      }
      case Opcode::NOT: {
        FormulaPtr a = pop_form(stack);
        stack.push_back({nullptr, f_not(a)});
        return next(std::move(store), std::move(stack));
      }
      case Opcode::AND: case Opcode::OR: {
        FormulaPtr b = pop_form(stack), a = pop_form(stack);
        stack.push_back({nullptr, ins.op == Opcode::AND ? f_and(a, b) : f_or(a, b)});
        return next(std::move(store), std::move(stack));
      }
      case Opcode::JMP:
        return walk(ins.target, std::move(store), std::move(stack), false);
      case Opcode::JZ: {
        FormulaPtr c = pop_form(stack);
        WalkResult rf = walk(pc + 1, store, stack, false);
        WalkResult rj = walk(ins.target, std::move(store), std::move(stack), false);
        WalkResult out;
        out.f = f_and(wrap_imp(c, rf.f), wrap_imp(f_not(c), rj.f));
        out.sides = wrap_sides(c, std::move(rf.sides));
        auto sj = wrap_sides(f_not(c), std::move(rj.sides));
        out.sides.insert(out.sides.end(), sj.begin(), sj.end());
        return out;
      }
      case Opcode::NEWVEC: {
        TermPtr len = pop_term(stack);
        TermPtr nv = t_var(havoc_name("new", cx.new_idx.at(pc)), Sort::Vec);
        stack.push_back({nv, nullptr});
        WalkResult rest = next(std::move(store), std::move(stack));
        WalkResult out;
        FormulaPtr fact = newvec_fact(nv, len);
        out.f = wrap_imp(fact, rest.f);
        out.sides.push_back({guard_newvec(len), Site::SafetyOutOfBounds, pc});
        auto wrapped = wrap_sides(fact, std::move(rest.sides));
        out.sides.insert(out.sides.end(), wrapped.begin(), wrapped.end());
        return out;
      }
      case Opcode::GETIDX: {
        TermPtr i = pop_term(stack), v = pop_term(stack);
        stack.push_back({t_idx(v, i), nullptr});
        WalkResult rest = next(std::move(store), std::move(stack));
        WalkResult out;
        out.f = rest.f;
        out.sides.push_back({guard_bounds(i, v), Site::SafetyOutOfBounds, pc});
        out.sides.insert(out.sides.end(), rest.sides.begin(), rest.sides.end());
        return out;
      }
      case Opcode::SETIDX: {
        TermPtr e = pop_term(stack), i = pop_term(stack), v = pop_term(stack);
        stack.push_back({t_upd(v, i, e), nullptr});
        WalkResult rest = next(std::move(store), std::move(stack));
        WalkResult out;
        out.f = rest.f;
        out.sides.push_back({guard_bounds(i, v), Site::SafetyOutOfBounds, pc});
        out.sides.insert(out.sides.end(), rest.sides.begin(), rest.sides.end());
        return out;
      }
      case Opcode::VLEN: {
        TermPtr v = pop_term(stack);
        stack.push_back({t_len(v), nullptr});
        return next(std::move(store), std::move(stack));
      }
      case Opcode::NEWSET:
        stack.push_back({t_emptyset(), nullptr});
        return next(std::move(store), std::move(stack));
      case Opcode::SINS: {
        TermPtr e = pop_term(stack), s = pop_term(stack);
        // literal bases extend in place so compiled set literals stay
        // structurally equal to the source term
        if (s->kind == TermKind::SetLit) {
          std::vector<TermPtr> elems = s->args;
          elems.push_back(e);
          stack.push_back({t_setlit(std::move(elems)), nullptr});
        } else {
          stack.push_back({t_union(s, t_setlit({e})), nullptr});
        }
        return next(std::move(store), std::move(stack));
      }
      case Opcode::SUNION: case Opcode::SINTER: case Opcode::SDIFF: {
        TermPtr b = pop_term(stack), a = pop_term(stack);
        TermPtr r = ins.op == Opcode::SUNION ? t_union(a, b)
                    : ins.op == Opcode::SINTER ? t_inter(a, b)
                                               : t_diff(a, b);
        stack.push_back({r, nullptr});
        return next(std::move(store), std::move(stack));
      }
      case Opcode::SMEM: {
        TermPtr s = pop_term(stack), x = pop_term(stack);
        stack.push_back({nullptr, f_atom(AtomOp::Mem, x, s)});
        return next(std::move(store), std::move(stack));
      }
      case Opcode::SCARD: {
        TermPtr s = pop_term(stack);
        stack.push_back({t_card(s), nullptr});
        return next(std::move(store), std::move(stack));
      }
      case Opcode::CALL: {
        const BytecodeFunction* callee = cx.m.find(ins.symbol);
        if (!callee) cx.fail("call to unknown function");
        std::vector<TermPtr> args((size_t)callee->param_count);
        for (int k = callee->param_count - 1; k >= 0; --k) args[(size_t)k] = pop_term(stack);
        // modular reasoning against the callee's spec
        std::map<std::string, TermPtr> req_map, ens_map;
        for (int k = 0; k < callee->param_count; ++k) {
          auto it = callee->table.varmap.find(k);
          std::string pname = it != callee->table.varmap.end() ? it->second
                                                               : "s" + std::to_string(k);
          req_map[pname] = args[(size_t)k];
          ens_map["old_" + pname] = args[(size_t)k];
        }
        std::optional<TermPtr> rvar;
        if (callee->ret) {
          Sort rs = *callee->ret == Sort::Bool ? Sort::Int : *callee->ret;
          rvar = t_var(havoc_name("call", cx.call_idx.at(pc)), rs);
          ens_map["result"] = *rvar;
        }
        for (const auto& [name, _] : free_vars(callee->table.ensures_f))
          if (!ens_map.count(name))
            cx.fail("callee ensures mentions " + name + " which is not call-instantiable");
        FormulaPtr req_inst = subst_parallel(callee->table.requires_f, req_map);
        FormulaPtr ens_inst = subst_parallel(callee->table.ensures_f, ens_map);
        if (rvar) {
          Sort rs = *callee->ret == Sort::Bool ? Sort::Int : *callee->ret;
          if (rs == Sort::Int && *callee->ret == Sort::Bool)
            stack.push_back({nullptr, f_atom(AtomOp::Eq, *rvar, t_int(1))});
          else
            stack.push_back({*rvar, nullptr});
        }
        WalkResult rest = next(std::move(store), std::move(stack));
        WalkResult out;
        out.f = wrap_imp(ens_inst, rest.f);
        out.sides.push_back({req_inst, Site::PreconditionEntailment, pc});
        auto wrapped = wrap_sides(ens_inst, std::move(rest.sides));
        out.sides.insert(out.sides.end(), wrapped.begin(), wrapped.end());
        return out;
      }
      case Opcode::RET: {
        std::optional<TermPtr> rv;
        if (cx.fn.ret) {
          if (*cx.fn.ret == Sort::Bool) {
            if (!stack.empty() && stack.back().form) {
              FormulaPtr c = pop_form(stack);
              FormulaPtr f1 = cx.exit_formula(store, t_int(1));
              FormulaPtr f0 = cx.exit_formula(store, t_int(0));
              return {f_and(wrap_imp(c, f1), wrap_imp(f_not(c), f0)), {}};
            }
            cx.fail("symbolic stack mismatch at bool RET");
          }
          rv = pop_term(stack);
        }
        return {cx.exit_formula(store, rv), {}};
      }
      case Opcode::HALT:
        return {cx.exit_formula(store, std::nullopt), {}};
      case Opcode::READ: {
        stack.push_back({t_var(havoc_name("read", cx.read_idx.at(pc)), Sort::Int), nullptr});
        return next(std::move(store), std::move(stack));
      }
      case Opcode::PRINT: {
        pop_term(stack);
        return next(std::move(store), std::move(stack));
      }
    }
    cx.fail("unknown opcode in walk");
  }
};

// cycle coverage: every CFG cycle must pass through an annotated label
void check_cut_coverage(const FnContext& cx, const std::map<int, FormulaPtr>& cuts) {
  const auto& code = cx.fn.code;
  std::vector<int> color(code.size(), 0);  // 0 white, 1 grey, 2 black
  std::vector<int> path;
  std::function<void(int)> dfs = [&](int pc) {
    color[(size_t)pc] = 1;
    path.push_back(pc);
    auto succ = [&](int t) {
      if (cuts.count(t)) return;  // cycles through cuts are covered
      if (color[(size_t)t] == 1) {
        auto it = std::find(path.begin(), path.end(), t);
        throw UncoveredCycle(cx.fn.name, std::vector<int>(it, path.end()));
      }
      if (color[(size_t)t] == 0) dfs(t);
    };
    const Instruction& ins = code[(size_t)pc];
    switch (ins.op) {
      case Opcode::JMP: succ(ins.target); break;
      case Opcode::JZ:
        succ(pc + 1);
        succ(ins.target);
        break;
      case Opcode::RET:
      case Opcode::HALT: break;
      default:
        if ((size_t)(pc + 1) < code.size()) succ(pc + 1);
        break;
    }
    color[(size_t)pc] = 2;
    path.pop_back();
  };
  for (size_t pc = 0; pc < code.size(); ++pc)
    if (color[pc] == 0) dfs((int)pc);
}

std::vector<Obligation> gen_function(const BytecodeModule& m, const BytecodeFunction& fn) {
  FnContext cx{m, fn, {}, {}, {}, {}, 0};
  int nread = 0, ncall = 0, nnew = 0;
  for (size_t pc = 0; pc < fn.code.size(); ++pc) {
    switch (fn.code[pc].op) {
      case Opcode::READ: cx.read_idx[(int)pc] = nread++; break;
      case Opcode::CALL: cx.call_idx[(int)pc] = ncall++; break;
      case Opcode::NEWVEC: cx.new_idx[(int)pc] = nnew++; break;
      default: break;
    }
  }
  // ghosts: old_* names free in ensures, in slot order
  auto efv = free_vars(fn.table.ensures_f);
  for (const auto& [slot, name] : fn.table.varmap) {
    (void)slot;
    if (efv.count("old_" + name)) cx.ghosts.push_back("old_" + name);
  }

  const std::map<int, FormulaPtr>& cuts = fn.table.invariants;
  check_cut_coverage(cx, cuts);

  Walker w{cx, cuts};
  std::vector<Obligation> out;
  bool has_loops = !cuts.empty();
  auto emit = [&](FormulaPtr f, Site site, int pc) {
    Obligation ob;
    ob.formula = std::move(f);
    ob.id = obligation_id(ob.formula);
    ob.level = Level::Bytecode;
    ob.function = fn.name;
    ob.site = site;
    ob.location = "pc " + std::to_string(pc);
    out.push_back(std::move(ob));
  };

  // entry segment
  {
    FormulaPtr hyp = cx.entry_hypothesis();
    WalkResult r = w.walk(0, cx.initial_store(), {}, true);
    emit(wrap_imp(hyp, r.f),
         has_loops ? Site::InvariantEstablishment : Site::Postcondition, 0);
    for (const auto& s : r.sides) emit(wrap_imp(hyp, s.f), s.site, s.pc);
  }

  // loop-head segments, by pc
  for (const auto& [head, inv] : cuts) {
    // pure condition spine up to the loop's JZ; falls back to a single
    // obligation when the shape is unusual
    Store store = cx.initial_store();
    std::vector<SymVal> stack;
    std::vector<FormulaPtr> wrappers;  // ensures/newvec facts opened on the spine
    std::vector<SideOb> spine_sides;
    auto wrap_all = [&](FormulaPtr f) {
      for (auto it = wrappers.rbegin(); it != wrappers.rend(); ++it) f = wrap_imp(*it, f);
      return f;
    };
    auto add_spine_side = [&](FormulaPtr f, Site site, int pc) {
      spine_sides.push_back({wrap_all(std::move(f)), site, pc});
    };
    int pos = head;
    bool split_done = false;
    while (true) {
      cx.tick();
      if ((size_t)pos >= fn.code.size()) break;
      if (fn.table.asserts.count(pos) && pos != head) break;  // unusual; fall back
      const Instruction& ins = fn.code[(size_t)pos];
      bool simple = true;
      switch (ins.op) {
        case Opcode::PUSH: stack.push_back({t_int(ins.imm), nullptr}); break;
        case Opcode::LOAD: {
          int k = (int)ins.imm;
          if (cx.slot_sort(k) == Sort::Bool)
            stack.push_back({nullptr, f_atom(AtomOp::Eq, store[k], t_int(1))});
          else
            stack.push_back({store[k], nullptr});
          break;
        }
        case Opcode::ADD: case Opcode::SUB: case Opcode::MUL: {
          if (stack.size() < 2 || !stack[stack.size() - 1].term || !stack[stack.size() - 2].term) {
            simple = false;
            break;
          }
          TermPtr b = stack.back().term; stack.pop_back();
          TermPtr a = stack.back().term; stack.pop_back();
          stack.push_back({ins.op == Opcode::ADD ? t_add(a, b)
                           : ins.op == Opcode::SUB ? t_sub(a, b)
                                                   : t_mul(a, b),
                           nullptr});
          break;
        }
        case Opcode::DIV: case Opcode::MOD: {
          if (stack.size() < 2) { simple = false; break; }
          TermPtr b = stack.back().term; stack.pop_back();
          TermPtr a = stack.back().term; stack.pop_back();
          if (!a || !b) { simple = false; break; }
          add_spine_side(guard_div(b), Site::SafetyDivByZero, pos);
          stack.push_back({ins.op == Opcode::DIV ? t_div(a, b) : t_mod(a, b), nullptr});
          break;
        }
        case Opcode::EQ: {
          if (stack.size() < 2) { simple = false; break; }
          if (stack.back().form) {
            FormulaPtr b = stack.back().form; stack.pop_back();
            FormulaPtr a = stack.back().form; stack.pop_back();
            if (!a) { simple = false; break; }
            stack.push_back({nullptr, f_iff(a, b)});
          } else {
            TermPtr b = stack.back().term; stack.pop_back();
            TermPtr a = stack.back().term; stack.pop_back();
            if (!a) { simple = false; break; }
            stack.push_back({nullptr, f_atom(AtomOp::Eq, a, b)});
          }
          break;
        }
        case Opcode::LT: case Opcode::LE: {
          if (stack.size() < 2) { simple = false; break; }
          TermPtr b = stack.back().term; stack.pop_back();
          TermPtr a = stack.back().term; stack.pop_back();
          if (!a || !b) { simple = false; break; }
          stack.push_back({nullptr, f_atom(ins.op == Opcode::LT ? AtomOp::Lt : AtomOp::Le, a, b)});
          break;
        }
        case Opcode::NOT: {
          if (stack.empty() || !stack.back().form) { simple = false; break; }
          FormulaPtr a = stack.back().form; stack.pop_back();
          stack.push_back({nullptr, f_not(a)});
          break;
        }
        case Opcode::AND: case Opcode::OR: {
          if (stack.size() < 2 || !stack.back().form) { simple = false; break; }
          FormulaPtr b = stack.back().form; stack.pop_back();
          FormulaPtr a = stack.back().form; stack.pop_back();
          if (!a) { simple = false; break; }
          stack.push_back({nullptr, ins.op == Opcode::AND ? f_and(a, b) : f_or(a, b)});
          break;
        }
        case Opcode::GETIDX: {
          if (stack.size() < 2) { simple = false; break; }
          TermPtr i = stack.back().term; stack.pop_back();
          TermPtr v = stack.back().term; stack.pop_back();
          if (!i || !v) { simple = false; break; }
          add_spine_side(guard_bounds(i, v), Site::SafetyOutOfBounds, pos);
          stack.push_back({t_idx(v, i), nullptr});
          break;
        }
        case Opcode::VLEN: {
          if (stack.empty() || !stack.back().term) { simple = false; break; }
          TermPtr v = stack.back().term; stack.pop_back();
          stack.push_back({t_len(v), nullptr});
          break;
        }
        case Opcode::SMEM: {
          if (stack.size() < 2) { simple = false; break; }
          TermPtr s = stack.back().term; stack.pop_back();
          TermPtr x = stack.back().term; stack.pop_back();
          if (!s || !x) { simple = false; break; }
          stack.push_back({nullptr, f_atom(AtomOp::Mem, x, s)});
          break;
        }
        case Opcode::SCARD: {
          if (stack.empty() || !stack.back().term) { simple = false; break; }
          TermPtr s = stack.back().term; stack.pop_back();
          stack.push_back({t_card(s), nullptr});
          break;
        }
        case Opcode::READ:
          stack.push_back({t_var(havoc_name("read", cx.read_idx.at(pos)), Sort::Int), nullptr});
          break;
        case Opcode::NEWVEC: {
          if (stack.empty() || !stack.back().term) { simple = false; break; }
          TermPtr len = stack.back().term; stack.pop_back();
          TermPtr nv = t_var(havoc_name("new", cx.new_idx.at(pos)), Sort::Vec);
          add_spine_side(guard_newvec(len), Site::SafetyOutOfBounds, pos);
          wrappers.push_back(newvec_fact(nv, len));
          stack.push_back({nv, nullptr});
          break;
        }
        case Opcode::CALL: {
          const BytecodeFunction* callee = cx.m.find(ins.symbol);
          if (!callee || (int)stack.size() < callee->param_count) { simple = false; break; }
          std::vector<TermPtr> args((size_t)callee->param_count);
          bool ok = true;
          for (int k = callee->param_count - 1; k >= 0; --k) {
            if (!stack.back().term) { ok = false; break; }
            args[(size_t)k] = stack.back().term;
            stack.pop_back();
          }
          if (!ok) { simple = false; break; }
          std::map<std::string, TermPtr> req_map, ens_map;
          for (int k = 0; k < callee->param_count; ++k) {
            auto it = callee->table.varmap.find(k);
            std::string pname =
                it != callee->table.varmap.end() ? it->second : "s" + std::to_string(k);
            req_map[pname] = args[(size_t)k];
            ens_map["old_" + pname] = args[(size_t)k];
          }
          if (callee->ret) {
            Sort rs = *callee->ret == Sort::Bool ? Sort::Int : *callee->ret;
            TermPtr rvar = t_var(havoc_name("call", cx.call_idx.at(pos)), rs);
            ens_map["result"] = rvar;
            if (*callee->ret == Sort::Bool)
              stack.push_back({nullptr, f_atom(AtomOp::Eq, rvar, t_int(1))});
            else
              stack.push_back({rvar, nullptr});
          }
          bool instantiable = true;
          for (const auto& [name, _] : free_vars(callee->table.ensures_f))
            if (!ens_map.count(name)) instantiable = false;
          if (!instantiable) { simple = false; break; }
          add_spine_side(subst_parallel(callee->table.requires_f, req_map),
                         Site::PreconditionEntailment, pos);
          wrappers.push_back(subst_parallel(callee->table.ensures_f, ens_map));
          break;
        }
        case Opcode::JZ: {
          if (stack.empty() || !stack.back().form) { simple = false; break; }
          FormulaPtr c = stack.back().form;
          stack.pop_back();
          WalkResult rf = w.walk(pos + 1, store, stack, false);
          WalkResult rj = w.walk(ins.target, store, stack, false);
          emit(wrap_all(wrap_imp(f_and(inv, c), rf.f)), Site::InvariantPreservation, head);
          for (const auto& s : rf.sides)
            emit(wrap_all(wrap_imp(f_and(inv, c), s.f)), s.site, s.pc);
          emit(wrap_all(wrap_imp(f_and(inv, f_not(c)), rj.f)), Site::Postcondition, head);
          for (const auto& s : rj.sides)
            emit(wrap_all(wrap_imp(f_and(inv, f_not(c)), s.f)), s.site, s.pc);
          for (const auto& s : spine_sides) emit(wrap_imp(inv, s.f), s.site, s.pc);
          split_done = true;
          break;
        }
        default:
          simple = false;
          break;
      }
      if (split_done || !simple) break;
      ++pos;
    }
    if (!split_done) {
      // generic fallback: one obligation from the invariant
      WalkResult r = w.walk(head, cx.initial_store(), {}, true);
      emit(wrap_imp(inv, r.f), Site::InvariantPreservation, head);
      for (const auto& s : r.sides) emit(wrap_imp(inv, s.f), s.site, s.pc);
      for (const auto& s : spine_sides) emit(wrap_imp(inv, s.f), s.site, s.pc);
    }
  }
  return out;
}

}  // namespace

std::vector<Obligation> generate_bytecode_obligations(const BytecodeModule& m) {
  std::vector<Obligation> out;
  for (const auto& fn : m.functions) {
    auto obs = gen_function(m, fn);
    out.insert(out.end(), obs.begin(), obs.end());
  }
  return out;
}

}  // namespace liss::vcgen
