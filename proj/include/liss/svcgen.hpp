// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0
//
// Source-level weakest preconditions. Obligation shapes are pinned
// jointly with src/vcgen/bytecode_vcgen.cpp — the two generators must
// produce equal formula multisets after variable translation.

#pragma once

#include "liss/lang.hpp"
#include "liss/vcgen.hpp"

namespace liss::vcgen {

struct WpResult {
  logic::FormulaPtr pre;
  // side obligations pending at the start of the statement list (safety
  // guards, asserts, call preconditions), transformed backward like `pre`
  std::vector<Obligation> sides;
  // obligations already rooted at a cut (loop preservation/exit and
  // everything emitted under them)
  std::vector<Obligation> rooted;
};

// wp over a statement list of function `fn` with postcondition `post`.
WpResult wp_source(const lang::TypedProgram& tp, const std::string& fn,
                   const std::vector<lang::StmtPtr>& stmts, logic::FormulaPtr post);

// Per function, in declaration order: the entry obligation
// requires (+ ghost snapshots) -> wp(body, ensures), then entry-rooted
// sides, then loop-rooted obligations.
std::vector<Obligation> generate_source_obligations(const lang::TypedProgram& tp);

}  // namespace liss::vcgen
