// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0
//
// The loader gate. A module that passes verify_module cannot underflow or
// overflow the operand stack at runtime and never applies an opcode to the
// wrong value sort: stack height and stack sorts are computed by a
// fixed-point dataflow over the CFG and must agree on every join.

#include "liss/vm.hpp"

#include <deque>
#include <set>

namespace liss::vm {

using namespace liss::logic;

namespace {

struct StackState {
  bool reached = false;
  std::vector<Sort> sorts;  // bottom..top
};

const char* here(const BytecodeFunction& fn, size_t pc) {
  static thread_local std::string buf;
  buf = fn.name + ":" + std::to_string(pc);
  return buf.c_str();
}

struct Analysis {
  const BytecodeModule& m;
  const BytecodeFunction& fn;
  std::vector<StackState> at;  // indexed by pc (plus one-past-end unused)

  Analysis(const BytecodeModule& mod, const BytecodeFunction& f)
      : m(mod), fn(f), at(f.code.size() + 1) {}

  [[noreturn]] void fail(size_t pc, const std::string& what) {
    throw MalformedModule(what, here(fn, pc));
  }

  Sort pop(std::vector<Sort>& s, size_t pc, const char* who) {
    if (s.empty()) fail(pc, std::string("stack underflow at ") + who);
    Sort top = s.back();
    s.pop_back();
    return top;
  }

  void need(std::vector<Sort>& s, size_t pc, const char* who, Sort want) {
    Sort got = pop(s, pc, who);
    if (got != want)
      fail(pc, std::string(who) + " expects " + sort_name(want) + ", stack has " + sort_name(got));
  }

  void merge_into(size_t pc, const std::vector<Sort>& sorts, std::deque<size_t>& work) {
    if (pc > fn.code.size()) fail(pc, "control falls off the end");
    if (pc == fn.code.size()) fail(pc, "control reaches the end without RET or HALT");
    StackState& st = at[pc];
    if (!st.reached) {
      st.reached = true;
      st.sorts = sorts;
      work.push_back(pc);
      return;
    }
    if (st.sorts != sorts) fail(pc, "stack mismatch at join (height or sorts)");
  }

  Sort slot_sort(size_t pc, long long slot) {
    if (slot < 0 || slot >= fn.slot_count()) fail(pc, "slot out of range");
    auto it = fn.table.sortmap.find((int)slot);
    return it == fn.table.sortmap.end() ? Sort::Int : it->second;
  }

  void run() {
    if (fn.code.empty()) fail(0, "empty function body");
    std::deque<size_t> work;
    at[0].reached = true;
    work.push_back(0);
    while (!work.empty()) {
      size_t pc = work.front();
      work.pop_front();
      std::vector<Sort> s = at[pc].sorts;
      const Instruction& ins = fn.code[pc];
      switch (ins.op) {
        case Opcode::PUSH:
          s.push_back(Sort::Int);
          merge_into(pc + 1, s, work);
          break;
        case Opcode::LOAD:
          s.push_back(slot_sort(pc, ins.imm));
          merge_into(pc + 1, s, work);
          break;
        case Opcode::STORE: {
          Sort want = slot_sort(pc, ins.imm);
          need(s, pc, "STORE", want);
          merge_into(pc + 1, s, work);
          break;
        }
        case Opcode::ADD: case Opcode::SUB: case Opcode::MUL:
        case Opcode::DIV: case Opcode::MOD:
          need(s, pc, opcode_name(ins.op), Sort::Int);
          need(s, pc, opcode_name(ins.op), Sort::Int);
          s.push_back(Sort::Int);
          merge_into(pc + 1, s, work);
          break;
        case Opcode::LT: case Opcode::LE:
          need(s, pc, opcode_name(ins.op), Sort::Int);
          need(s, pc, opcode_name(ins.op), Sort::Int);
          s.push_back(Sort::Bool);
          merge_into(pc + 1, s, work);
          break;
        case Opcode::EQ: {
          Sort r = pop(s, pc, "EQ");
          Sort l = pop(s, pc, "EQ");
          if (l != r) fail(pc, "EQ over mismatched sorts");
          s.push_back(Sort::Bool);
          merge_into(pc + 1, s, work);
          break;
        }
        case Opcode::NOT:
          need(s, pc, "NOT", Sort::Bool);
          s.push_back(Sort::Bool);
          merge_into(pc + 1, s, work);
          break;
        case Opcode::AND: case Opcode::OR:
          need(s, pc, opcode_name(ins.op), Sort::Bool);
          need(s, pc, opcode_name(ins.op), Sort::Bool);
          s.push_back(Sort::Bool);
          merge_into(pc + 1, s, work);
          break;
        case Opcode::JMP:
          if (ins.target < 0 || (size_t)ins.target >= fn.code.size())
            fail(pc, "jump target out of range");
          merge_into((size_t)ins.target, s, work);
          break;
        case Opcode::JZ:
          if (ins.target < 0 || (size_t)ins.target >= fn.code.size())
            fail(pc, "jump target out of range");
          need(s, pc, "JZ", Sort::Bool);
          merge_into(pc + 1, s, work);
          merge_into((size_t)ins.target, s, work);
          break;
        case Opcode::NEWVEC:
          need(s, pc, "NEWVEC", Sort::Int);
          s.push_back(Sort::Vec);
          merge_into(pc + 1, s, work);
          break;
        case Opcode::GETIDX:
          need(s, pc, "GETIDX", Sort::Int);
          need(s, pc, "GETIDX", Sort::Vec);
          s.push_back(Sort::Int);
          merge_into(pc + 1, s, work);
          break;
        case Opcode::SETIDX:
          need(s, pc, "SETIDX", Sort::Int);   // value
          need(s, pc, "SETIDX", Sort::Int);   // index
          need(s, pc, "SETIDX", Sort::Vec);
          s.push_back(Sort::Vec);
          merge_into(pc + 1, s, work);
          break;
        case Opcode::VLEN:
          need(s, pc, "VLEN", Sort::Vec);
          s.push_back(Sort::Int);
          merge_into(pc + 1, s, work);
          break;
        case Opcode::NEWSET:
          s.push_back(Sort::Set);
          merge_into(pc + 1, s, work);
          break;
        case Opcode::SINS:
          need(s, pc, "SINS", Sort::Int);
          need(s, pc, "SINS", Sort::Set);
          s.push_back(Sort::Set);
          merge_into(pc + 1, s, work);
          break;
        case Opcode::SUNION: case Opcode::SINTER: case Opcode::SDIFF:
          need(s, pc, opcode_name(ins.op), Sort::Set);
          need(s, pc, opcode_name(ins.op), Sort::Set);
          s.push_back(Sort::Set);
          merge_into(pc + 1, s, work);
          break;
        case Opcode::SMEM:
          need(s, pc, "SMEM", Sort::Set);
          need(s, pc, "SMEM", Sort::Int);
          s.push_back(Sort::Bool);
          merge_into(pc + 1, s, work);
          break;
        case Opcode::SCARD:
          need(s, pc, "SCARD", Sort::Set);
          s.push_back(Sort::Int);
          merge_into(pc + 1, s, work);
          break;
        case Opcode::CALL: {
          const BytecodeFunction* callee = m.find(ins.symbol);
          if (!callee) fail(pc, "CALL to unknown function " + ins.symbol);
          for (int k = callee->param_count - 1; k >= 0; --k) {
            auto it = callee->table.sortmap.find(k);
            Sort want = it == callee->table.sortmap.end() ? Sort::Int : it->second;
            need(s, pc, "CALL argument", want);
          }
          if (callee->ret) s.push_back(*callee->ret);
          merge_into(pc + 1, s, work);
          break;
        }
        case Opcode::RET: {
          if (fn.ret) need(s, pc, "RET", *fn.ret);
          if (!s.empty()) fail(pc, "RET with a non-empty stack");
          break;
        }
        case Opcode::READ:
          s.push_back(Sort::Int);
          merge_into(pc + 1, s, work);
          break;
        case Opcode::PRINT:
          need(s, pc, "PRINT", Sort::Int);
          merge_into(pc + 1, s, work);
          break;
        case Opcode::HALT:
          if (!s.empty()) fail(pc, "HALT with a non-empty stack");
          break;
      }
    }
  }
};

void check_table(const BytecodeFunction& fn) {
  // varmap: injective logical names; sortmap keys subset of slots
  std::set<std::string> names;
  for (const auto& [slot, name] : fn.table.varmap) {
    if (slot < 0 || slot >= fn.slot_count())
      throw MalformedModule("varmap slot out of range", fn.name);
    if (!names.insert(name).second)
      throw MalformedModule("varmap is not injective (" + name + ")", fn.name);
  }
  for (const auto& [slot, _] : fn.table.sortmap)
    if (slot < 0 || slot >= fn.slot_count())
      throw MalformedModule("sortmap slot out of range", fn.name);

  auto slot_names = [&](bool params_only) {
    std::set<std::string> out;
    for (const auto& [slot, name] : fn.table.varmap)
      if (!params_only || slot < fn.param_count) out.insert(name);
    return out;
  };
  auto check_vars = [&](const FormulaPtr& f, const std::set<std::string>& allowed,
                        const char* where) {
    if (!f) throw MalformedModule(std::string("missing ") + where, fn.name);
    std::map<std::string, Sort> fv;
    try {
      fv = free_vars(f);
    } catch (const BadSort& e) {
      throw MalformedModule(std::string(where) + ": " + e.what(), fn.name);
    }
    for (const auto& [n, _] : fv)
      if (!allowed.count(n))
        throw MalformedModule(std::string(where) + " mentions uncovered variable " + n, fn.name);
  };

  std::set<std::string> current = slot_names(false);
  std::set<std::string> entry = slot_names(true);
  std::set<std::string> exit_names = current;
  for (const auto& [slot, name] : fn.table.varmap)
    if (slot < fn.param_count) exit_names.insert("old_" + name);
  if (fn.ret) exit_names.insert("result");

  check_vars(fn.table.requires_f, entry, "requires");
  check_vars(fn.table.ensures_f, exit_names, "ensures");
  for (const auto& [pc, f] : fn.table.invariants) {
    if (pc < 0 || (size_t)pc >= fn.code.size())
      throw MalformedModule("invariant at bad pc", fn.name);
    check_vars(f, current, "invariant");
  }
  for (const auto& [pc, f] : fn.table.asserts) {
    if (pc < 0 || (size_t)pc >= fn.code.size())
      throw MalformedModule("assert marker at bad pc", fn.name);
    check_vars(f, current, "assert");
  }
}

}  // namespace

void verify_module(const BytecodeModule& m) {
  std::set<std::string> fn_names;
  for (const auto& fn : m.functions)
    if (!fn_names.insert(fn.name).second)
      throw MalformedModule("duplicate function " + fn.name);
  for (const auto& fn : m.functions) {
    check_table(fn);
    Analysis a(m, fn);
    a.run();
    // annotated labels must sit at empty-stack program points: the VC
    // generator roots obligations there
    for (const auto& [pc, _] : fn.table.invariants) {
      if (!a.at[(size_t)pc].reached)
        throw MalformedModule("invariant label is unreachable", here(fn, (size_t)pc));
      if (!a.at[(size_t)pc].sorts.empty())
        throw MalformedModule("invariant label with a non-empty stack", here(fn, (size_t)pc));
    }
  }
}

std::vector<int> stack_depths(const BytecodeFunction& fn, const BytecodeModule& m) {
  Analysis a(m, fn);
  a.run();
  std::vector<int> out(fn.code.size(), -1);
  for (size_t pc = 0; pc < fn.code.size(); ++pc)
    if (a.at[pc].reached) out[pc] = (int)a.at[pc].sorts.size();
  return out;
}

}  // namespace liss::vm
