// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0
//
// Obligations and the bytecode-level weakest-precondition generator.
//
// Obligation shapes are pinned jointly with the source-level generator
// (src/svcgen) and the compiler: the two levels must produce equal formula
// multisets after variable translation. Change shapes here only together
// with the source generator.

#pragma once

#include "liss/logic.hpp"
#include "liss/vm.hpp"

#include <string>
#include <vector>

namespace liss::vcgen {

enum class Site {
  PreconditionEntailment,
  InvariantEstablishment,
  InvariantPreservation,
  Postcondition,
  Assert,
  SafetyDivByZero,
  SafetyOutOfBounds,
};

const char* site_name(Site s);

enum class Level { Source, Bytecode };

struct Obligation {
  std::string id;  // sha-256 hex of the canonical formula text
  logic::FormulaPtr formula;
  Level level = Level::Bytecode;
  std::string function;
  Site site = Site::Postcondition;
  std::string location;  // "line L" / "pc N"
};

// id = hash of canonical text; free program variables read as implicitly
// universally quantified, so the open formula's text is the identity.
std::string obligation_id(const logic::FormulaPtr& f);

struct VcgenError : std::runtime_error {
  std::string function;
  VcgenError(const std::string& what, std::string fn = "")
      : std::runtime_error(what), function(std::move(fn)) {}
};

struct UncoveredCycle : VcgenError {
  std::vector<int> cycle;  // pc witness
  UncoveredCycle(std::string fn, std::vector<int> pcs)
      : VcgenError("cycle without an annotated cut point", std::move(fn)), cycle(std::move(pcs)) {}
};

// --- shared formula shapes (both generators build exactly these) -----------

logic::FormulaPtr guard_div(const logic::TermPtr& divisor);
logic::FormulaPtr guard_bounds(const logic::TermPtr& index, const logic::TermPtr& vec);
logic::FormulaPtr guard_newvec(const logic::TermPtr& len);
// len(nv) = n  /\  forall u. (0 <= u /\ u < len(nv)) -> nv[u] = 0
logic::FormulaPtr newvec_fact(const logic::TermPtr& nv, const logic::TermPtr& len);
// left fold: ((requires /\ g1) /\ g2) ...
logic::FormulaPtr and_fold(logic::FormulaPtr head, const std::vector<logic::FormulaPtr>& rest);
// ghost names shared by both levels
std::string havoc_name(const char* prefix, int index);

// ---------------------------------------------------------------------------

// Regenerates all obligations of a loaded module: builds the cut-point
// graph per function (entry, exit, annotated labels), rejects uncovered
// cycles, and runs wp backward over each acyclic segment with a symbolic
// operand stack. Deterministic order: functions as listed; per function
// the entry segment first, then loop-head segments by pc.
std::vector<Obligation> generate_bytecode_obligations(const vm::BytecodeModule& m);

}  // namespace liss::vcgen
