// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0
//
// LISS front end: lexer, parser, type checker, canonical pretty-printer,
// and the reference source-level interpreter (the oracle the compiler and
// VM are differentially tested against).
//
// Surface syntax (Pascal-flavored):
//
//   fun max3(v: vec): int
//     requires 1 <= len(v)
//     ensures  forall i. (0 <= i and i < len(v)) ==> v[i] <= \result
//   {
//     var m: int := v[0];
//     var k: int := 1;
//     while k < len(v) invariant 1 <= k and k <= len(v) {
//       if m < v[k] { m := v[k]; }
//       k := k + 1;
//     }
//     return m;
//   }
//
// Annotations reuse the expression grammar plus forall/==>/<==>/subset,
// \result, and \old(x). Declarations are function-scoped and unique per
// function; `and`/`or` are eager (matching the VM's AND/OR).

#pragma once

#include "liss/logic.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace liss::lang {

struct Location {
  int line = 0;
  int col = 0;
};

// ---------------------------------------------------------------------------
// AST

enum class ExprKind {
  IntLit, BoolLit, VarRef,
  Add, Sub, Mul, Div, Mod,
  Eq, Lt, Le, Not, And, Or,
  SetLit, Union, Inter, Diff, Mem, Card,
  NewVec, Idx, Len,
  Call, Read,
  // annotation-only forms
  Imp, Iff, Forall, Subset, Result, Old,
};

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

struct Expr {
  ExprKind kind;
  Location loc;
  long long num = 0;          // IntLit
  bool bval = false;          // BoolLit
  std::string name;           // VarRef, Call, Forall binder, Old target
  std::vector<ExprPtr> args;
  logic::Sort type = logic::Sort::Int;  // filled by typecheck
};

enum class StmtKind { VarDecl, Assign, VecStore, If, While, Assert, Return, Print };

struct Stmt;
using StmtPtr = std::shared_ptr<Stmt>;

struct Stmt {
  StmtKind kind;
  Location loc;
  std::string name;                     // VarDecl/Assign/VecStore target
  logic::Sort decl_type = logic::Sort::Int;  // VarDecl
  ExprPtr e1;                           // init / value / cond / index / return / print
  ExprPtr e2;                           // VecStore value
  ExprPtr invariant;                    // While (annotation expression)
  std::vector<StmtPtr> body;            // If-then / While body
  std::vector<StmtPtr> else_body;       // If
  // filled by typecheck:
  logic::FormulaPtr invariant_f;        // While
  logic::FormulaPtr assert_f;           // Assert
};

struct FunctionDecl {
  std::string name;
  Location loc;
  std::vector<std::pair<std::string, logic::Sort>> params;
  std::optional<logic::Sort> ret;
  ExprPtr requires_e;  // null = true
  ExprPtr ensures_e;   // null = true
  std::vector<StmtPtr> body;
  // filled by typecheck (formulas over source variable names):
  logic::FormulaPtr requires_f;
  logic::FormulaPtr ensures_f;  // \old(x) and plain parameters both as old_<x> ghosts
};

struct SourceProgram {
  std::vector<FunctionDecl> functions;
};

// ---------------------------------------------------------------------------
// Errors

struct SyntaxError : std::runtime_error {
  Location loc;
  std::string expected;  // expected-token summary
  SyntaxError(Location l, const std::string& what, std::string exp = "")
      : std::runtime_error(what), loc(l), expected(std::move(exp)) {}
};

struct TypeError {
  Location loc;
  std::string message;
};

struct TypeErrors : std::runtime_error {
  std::vector<TypeError> errors;
  explicit TypeErrors(std::vector<TypeError> errs)
      : std::runtime_error(errs.empty() ? "type error" : errs.front().message),
        errors(std::move(errs)) {}
};

// ---------------------------------------------------------------------------
// Operations

SourceProgram parse_program(const std::string& text);

// Per-function slot layout: parameters first, then locals in declaration
// order. The compiler and both VC generators share this.
struct FnInfo {
  std::vector<std::pair<std::string, logic::Sort>> slots;
  std::optional<logic::Sort> ret;
  int param_count = 0;
};

struct TypedProgram {
  std::shared_ptr<SourceProgram> prog;
  std::map<std::string, FnInfo> info;
  std::vector<std::string> fn_order;  // declaration order

  const FunctionDecl* find(const std::string& name) const;
};

// Types every node, lowers annotations to formulas, checks the call graph
// is a DAG, rejects reserved names. Deterministic; throws TypeErrors with
// everything it found.
TypedProgram typecheck(const SourceProgram& p);

// Canonical source form: two-space indent, one statement per line.
// parse(pretty(p)) is structurally equal to p.
std::string pretty_print(const SourceProgram& p);

// ---------------------------------------------------------------------------
// Reference interpreter (test oracle)

enum class TrapKind { DivByZero, OutOfBounds, InputExhausted, AssertFailed };
const char* trap_name(TrapKind k);

struct Outcome {
  enum class Status { Ok, Trap, OutOfFuel };
  Status status = Status::Ok;
  std::vector<long long> outputs;
  TrapKind trap = TrapKind::DivByZero;
  Location trap_loc;
  std::map<std::string, logic::Value> final_store;  // entry function's variables
};

// Big-step evaluation with the same Euclidean div/mod, eager and/or, and
// trap semantics as the VM. Never aborts the host: traps and fuel
// exhaustion are values. Quantified asserts are checked statically only
// (the runtime checks the ground fragment).
Outcome interpret_source(const TypedProgram& p, const std::string& entry,
                         const std::vector<long long>& inputs, long long fuel = 10'000'000);

}  // namespace liss::lang
