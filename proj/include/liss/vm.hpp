// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0
//
// The sequential stack-based virtual machine: bytecode model, annotation
// table, loader (structural verification gate), interpreter, and the two
// serializations (.lbc assembly text and the binary form bundles hash).

#pragma once

#include "liss/logic.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace liss::vm {

enum class Opcode : uint8_t {
  PUSH, LOAD, STORE,
  ADD, SUB, MUL, DIV, MOD,
  EQ, LT, LE, NOT, AND, OR,
  JMP, JZ,
  NEWVEC, GETIDX, SETIDX, VLEN,
  NEWSET, SINS, SUNION, SINTER, SDIFF, SMEM, SCARD,
  CALL, RET, READ, PRINT, HALT,
};

const char* opcode_name(Opcode op);

struct Instruction {
  Opcode op;
  long long imm = 0;    // PUSH value, LOAD/STORE slot
  int target = -1;      // JMP/JZ resolved instruction index
  std::string symbol;   // CALL callee name
};

// Bytecode-level carrier of specs: formulas are over slot logical names
// (varmap), `old_<name>` entry ghosts, and `result`.
struct AnnotationTable {
  logic::FormulaPtr requires_f;
  logic::FormulaPtr ensures_f;
  std::map<int, logic::FormulaPtr> invariants;  // instruction index -> formula
  std::map<int, logic::FormulaPtr> asserts;     // instruction index -> proof obligation marker
  std::map<int, std::string> varmap;            // slot -> logical name
  std::map<int, logic::Sort> sortmap;           // slot -> sort
};

struct BytecodeFunction {
  std::string name;
  int param_count = 0;
  int local_count = 0;  // slots beyond the parameters
  std::optional<logic::Sort> ret;
  std::vector<Instruction> code;
  AnnotationTable table;
  std::map<int, std::string> labels;  // printing only; not part of the binary form

  int slot_count() const { return param_count + local_count; }
};

struct BytecodeModule {
  std::vector<BytecodeFunction> functions;
  const BytecodeFunction* find(const std::string& name) const;
};

struct MalformedModule : std::runtime_error {
  std::string location;
  MalformedModule(const std::string& what, std::string loc = "")
      : std::runtime_error(what), location(std::move(loc)) {}
};

// ---------------------------------------------------------------------------
// Text form (.lbc)

BytecodeModule parse_assembly(const std::string& text);
std::string print_assembly(const BytecodeModule& m);

// ---------------------------------------------------------------------------
// Binary form (the bytes the bundle manifest hashes; byte-exact spec in
// docs/formats.md)

std::vector<uint8_t> encode_module(const BytecodeModule& m);
BytecodeModule decode_module(const std::vector<uint8_t>& bytes);

// ---------------------------------------------------------------------------
// Loader gate: resolvable labels/slots/callees, stack-balanced along all
// paths (fixed-point height + sort analysis), type-consistent opcode use,
// empty stack at annotated labels and at RET/HALT. Throws MalformedModule.

void verify_module(const BytecodeModule& m);

// Per-pc stack depth (after verification); used by debug assertions and the
// bytecode VC generator.
std::vector<int> stack_depths(const BytecodeFunction& f, const BytecodeModule& m);

BytecodeModule load_module_text(const std::string& text);
BytecodeModule load_module_binary(const std::vector<uint8_t>& bytes);

// ---------------------------------------------------------------------------
// Execution

enum class TrapKind { DivByZero, OutOfBounds, InputExhausted };
const char* trap_name(TrapKind k);

struct RunResult {
  enum class Status { Ok, Trap, OutOfFuel };
  Status status = Status::Ok;
  std::vector<long long> outputs;
  // Trap details
  TrapKind trap = TrapKind::DivByZero;
  std::string trap_function;
  int trap_pc = 0;
  // exit state of the entry frame (empty unless status == Ok)
  std::vector<logic::Value> final_locals;
  std::optional<logic::Value> returned;
};

// Deterministic small-step execution with a fuel budget. Traps are values;
// the host never fails. `entry` must name a parameterless function.
RunResult run(const BytecodeModule& m, const std::string& entry,
              const std::vector<long long>& inputs, long long fuel);

}  // namespace liss::vm
