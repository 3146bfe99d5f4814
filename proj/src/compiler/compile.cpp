// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0

#include "liss/compiler.hpp"

#include <cctype>
#include <sstream>

namespace liss::compiler {

using namespace liss::logic;
using namespace liss::lang;
using vm::BytecodeFunction;
using vm::BytecodeModule;
using vm::Instruction;
using vm::Opcode;

namespace {

bool havoc_or_result_name(const std::string& n) {
  if (n == "result") return true;
  auto digits_after = [&](const char* prefix, size_t len) {
    if (n.size() <= len || n.compare(0, len, prefix) != 0) return false;
    for (size_t k = len; k < n.size(); ++k)
      if (!std::isdigit((unsigned char)n[k])) return false;
    return true;
  };
  return digits_after("call", 4) || digits_after("read", 4) || digits_after("new", 3);
}

struct FnCompiler {
  const TypedProgram& tp;
  const FunctionDecl& fn;
  const VarMap& vm_;
  BytecodeFunction out;
  LoweringTrace::FnTrace trace;
  int label_counter = 0;
  const Stmt* current_stmt = nullptr;

  int here() const { return (int)out.code.size(); }

  void emit(Opcode op, long long imm = 0) {
    Instruction ins;
    ins.op = op;
    ins.imm = imm;
    out.code.push_back(std::move(ins));
    trace.per_pc.push_back(current_stmt);
  }

  int emit_jump(Opcode op) {
    emit(op);
    return here() - 1;
  }

  void patch(int at, int target) { out.code[(size_t)at].target = target; }

  int slot(const std::string& name) const { return vm_.slot_of.at(name); }

  std::string fresh_label() { return "L" + std::to_string(label_counter++); }

  void place_label(const std::string& name, int pc) { out.labels[pc] = name; }

  void expr(const Expr& e) {
    switch (e.kind) {
      case ExprKind::IntLit: emit(Opcode::PUSH, e.num); return;
      case ExprKind::BoolLit:
        emit(Opcode::PUSH, e.bval ? 1 : 0);
        emit(Opcode::PUSH, 1);
        emit(Opcode::EQ);
        return;
      case ExprKind::VarRef: emit(Opcode::LOAD, slot(e.name)); return;
      case ExprKind::Add: case ExprKind::Sub: case ExprKind::Mul:
      case ExprKind::Div: case ExprKind::Mod: {
        expr(*e.args[0]);
        expr(*e.args[1]);
        Opcode op = e.kind == ExprKind::Add   ? Opcode::ADD
                    : e.kind == ExprKind::Sub ? Opcode::SUB
                    : e.kind == ExprKind::Mul ? Opcode::MUL
                    : e.kind == ExprKind::Div ? Opcode::DIV
                                              : Opcode::MOD;
        emit(op);
        return;
      }
      case ExprKind::Eq: case ExprKind::Lt: case ExprKind::Le: {
        expr(*e.args[0]);
        expr(*e.args[1]);
        emit(e.kind == ExprKind::Eq ? Opcode::EQ
             : e.kind == ExprKind::Lt ? Opcode::LT
                                      : Opcode::LE);
        return;
      }
      case ExprKind::Not:
        expr(*e.args[0]);
        emit(Opcode::NOT);
        return;
      case ExprKind::And: case ExprKind::Or:
        expr(*e.args[0]);
        expr(*e.args[1]);
        emit(e.kind == ExprKind::And ? Opcode::AND : Opcode::OR);
        return;
      case ExprKind::SetLit:
        emit(Opcode::NEWSET);
        for (const auto& a : e.args) {
          expr(*a);
          emit(Opcode::SINS);
        }
        return;
      case ExprKind::Union: case ExprKind::Inter: case ExprKind::Diff:
        expr(*e.args[0]);
        expr(*e.args[1]);
        emit(e.kind == ExprKind::Union ? Opcode::SUNION
             : e.kind == ExprKind::Inter ? Opcode::SINTER
                                         : Opcode::SDIFF);
        return;
      case ExprKind::Mem:
        expr(*e.args[0]);
        expr(*e.args[1]);
        emit(Opcode::SMEM);
        return;
      case ExprKind::Card:
        expr(*e.args[0]);
        emit(Opcode::SCARD);
        return;
      case ExprKind::NewVec:
        expr(*e.args[0]);
        emit(Opcode::NEWVEC);
        return;
      case ExprKind::Idx:
        expr(*e.args[0]);
        expr(*e.args[1]);
        emit(Opcode::GETIDX);
        return;
      case ExprKind::Len:
        expr(*e.args[0]);
        emit(Opcode::VLEN);
        return;
      case ExprKind::Call: {
        for (const auto& a : e.args) expr(*a);
        Instruction ins;
        ins.op = Opcode::CALL;
        ins.symbol = e.name;
        out.code.push_back(std::move(ins));
        trace.per_pc.push_back(current_stmt);
        return;
      }
      case ExprKind::Read: emit(Opcode::READ); return;
      default:
        throw std::logic_error("annotation node reached the compiler");
    }
  }

  void stmts(const std::vector<StmtPtr>& body) {
    for (const auto& s : body) stmt(*s);
  }

  void stmt(const Stmt& st) {
    const Stmt* saved = current_stmt;
    current_stmt = &st;
    switch (st.kind) {
      case StmtKind::VarDecl:
      case StmtKind::Assign:
        expr(*st.e1);
        emit(Opcode::STORE, slot(st.name));
        break;
      case StmtKind::VecStore:
        emit(Opcode::LOAD, slot(st.name));
        expr(*st.e1);
        expr(*st.e2);
        emit(Opcode::SETIDX);
        emit(Opcode::STORE, slot(st.name));
        break;
      case StmtKind::If: {
        expr(*st.e1);
        int jz = emit_jump(Opcode::JZ);
        stmts(st.body);
        if (st.else_body.empty()) {
          patch(jz, here());
          std::string lend = fresh_label();
          place_label(lend, here());
        } else {
          int jend = emit_jump(Opcode::JMP);
          patch(jz, here());
          place_label(fresh_label(), here());
          stmts(st.else_body);
          patch(jend, here());
          place_label(fresh_label(), here());
        }
        break;
      }
      case StmtKind::While: {
        int head = here();
        std::string lhead = fresh_label();
        place_label(lhead, head);
        trace.loop_heads[&st] = head;
        out.table.invariants[head] = translate_formula(st.invariant_f, vm_);
        expr(*st.e1);
        int jz = emit_jump(Opcode::JZ);
        stmts(st.body);
        Instruction jmp;
        jmp.op = Opcode::JMP;
        jmp.target = head;
        out.code.push_back(std::move(jmp));
        trace.per_pc.push_back(&st);
        patch(jz, here());
        place_label(fresh_label(), here());
        break;
      }
      case StmtKind::Assert:
        // no runtime check: verification replaces dynamic checking
        out.table.asserts[here()] = translate_formula(st.assert_f, vm_);
        break;
      case StmtKind::Return:
        if (st.e1) expr(*st.e1);
        emit(Opcode::RET);
        break;
      case StmtKind::Print:
        expr(*st.e1);
        emit(Opcode::PRINT);
        break;
    }
    current_stmt = saved;
  }

  void run() {
    const FnInfo& info = tp.info.at(fn.name);
    out.name = fn.name;
    out.param_count = info.param_count;
    out.local_count = (int)info.slots.size() - info.param_count;
    out.ret = fn.ret;
    for (size_t k = 0; k < info.slots.size(); ++k) {
      out.table.varmap[(int)k] = "s" + std::to_string(k);
      out.table.sortmap[(int)k] = info.slots[k].second;
    }
    out.table.requires_f = translate_formula(fn.requires_f, vm_);
    out.table.ensures_f = translate_formula(fn.ensures_f, vm_);
    stmts(fn.body);
    // functions without a trailing return get a synthetic exit; main is
    // the program entry and halts the machine
    if (fn.body.empty() || fn.body.back()->kind != StmtKind::Return) {
      Instruction ins;
      ins.op = fn.name == "main" ? Opcode::HALT : Opcode::RET;
      out.code.push_back(std::move(ins));
      trace.per_pc.push_back(fn.body.empty() ? nullptr : fn.body.back().get());
    }
    trace.function = fn.name;
  }
};

}  // namespace

VarMap build_varmap(const TypedProgram& tp, const std::string& fname) {
  VarMap vm;
  const FnInfo& info = tp.info.at(fname);
  for (size_t k = 0; k < info.slots.size(); ++k) {
    const std::string& name = info.slots[k].first;
    vm.slot_of[name] = (int)k;
    vm.rename[name] = "s" + std::to_string(k);
    if ((int)k < info.param_count) vm.rename["old_" + name] = "old_s" + std::to_string(k);
  }
  return vm;
}

FormulaPtr translate_formula(const FormulaPtr& f, const VarMap& vm) {
  std::map<std::string, std::string> m = vm.rename;
  for (const auto& [name, sort] : free_vars(f)) {
    (void)sort;
    if (m.count(name)) continue;
    if (havoc_or_result_name(name)) {
      m[name] = name;  // shared between the two levels
      continue;
    }
    throw UnmappedVariable("variable " + name + " is not covered by the varmap");
  }
  return rename_free(f, m);
}

CompileResult compile(const TypedProgram& tp) {
  CompileResult result;
  for (const auto& name : tp.fn_order) {
    const FunctionDecl* fn = tp.find(name);
    result.varmaps[name] = build_varmap(tp, name);
    FnCompiler fc{tp, *fn, result.varmaps[name], {}, {}, 0, nullptr};
    fc.run();
    result.module.functions.push_back(std::move(fc.out));
    result.trace.functions.push_back(std::move(fc.trace));
  }
  return result;
}

std::string trace_table(const LoweringTrace& t, const BytecodeModule& m) {
  std::ostringstream out;
  for (size_t f = 0; f < t.functions.size(); ++f) {
    const auto& ft = t.functions[f];
    const auto& fn = m.functions[f];
    out << "fn " << ft.function << "\n";
    for (size_t pc = 0; pc < ft.per_pc.size(); ++pc) {
      const Stmt* st = ft.per_pc[pc];
      out << "  " << pc << "\t" << vm::opcode_name(fn.code[pc].op) << "\t";
      if (st)
        out << "line " << st->loc.line;
      else
        out << "(implicit exit)";
      out << "\n";
    }
    for (const auto& [st, pc] : ft.loop_heads)
      out << "  while@line " << st->loc.line << " -> head pc " << pc << "\n";
  }
  return out.str();
}

}  // namespace liss::compiler
