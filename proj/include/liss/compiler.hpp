// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0
//
// Lowers typed LISS to bytecode and carries the annotations down with it:
// loop invariants land at loop-head labels, requires/ensures become the
// entry/exit specs, asserts become proof-obligation markers (no runtime
// check: verification replaces dynamic checking). Instruction selection is
// one-to-one and unoptimized so bytecode VCs mirror source VCs exactly.

#pragma once

#include "liss/lang.hpp"
#include "liss/vm.hpp"

#include <map>
#include <string>
#include <vector>

namespace liss::compiler {

// Per function: source name -> slot, plus the full logical renaming used
// to translate annotations and obligations (x -> s<slot>, old_x ->
// old_s<slot>, result and havoc names to themselves).
struct VarMap {
  std::map<std::string, int> slot_of;
  std::map<std::string, std::string> rename;
};

struct UnmappedVariable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

VarMap build_varmap(const lang::TypedProgram& tp, const std::string& fn);

// Pure renaming; structure preserved node for node.
logic::FormulaPtr translate_formula(const logic::FormulaPtr& f, const VarMap& vm);

// Maps every emitted instruction to the innermost source statement it
// implements, and every while to its loop-head label.
struct LoweringTrace {
  struct FnTrace {
    std::string function;
    std::vector<const lang::Stmt*> per_pc;        // nullptr only for a bare implicit RET/HALT
    std::map<const lang::Stmt*, int> loop_heads;  // While -> label pc
  };
  std::vector<FnTrace> functions;
};

struct CompileResult {
  vm::BytecodeModule module;
  LoweringTrace trace;
  std::map<std::string, VarMap> varmaps;
};

CompileResult compile(const lang::TypedProgram& tp);

std::string trace_table(const LoweringTrace& t, const vm::BytecodeModule& m);

}  // namespace liss::compiler
