// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0

#include "liss/vcgen.hpp"

#include "liss/sha256.hpp"

namespace liss::vcgen {

using namespace liss::logic;

const char* site_name(Site s) {
  switch (s) {
    case Site::PreconditionEntailment: return "precondition-entailment";
    case Site::InvariantEstablishment: return "invariant-establishment";
    case Site::InvariantPreservation: return "invariant-preservation";
    case Site::Postcondition: return "postcondition";
    case Site::Assert: return "assert";
    case Site::SafetyDivByZero: return "safety(DivByZero)";
    case Site::SafetyOutOfBounds: return "safety(OutOfBounds)";
  }
  return "?";
}

std::string obligation_id(const FormulaPtr& f) { return sha256_hex(canonical_text(f)); }

FormulaPtr guard_div(const TermPtr& divisor) {
  return f_not(f_atom(AtomOp::Eq, divisor, t_int(0)));
}

FormulaPtr guard_bounds(const TermPtr& index, const TermPtr& vec) {
  return f_and(f_atom(AtomOp::Le, t_int(0), index), f_atom(AtomOp::Lt, index, t_len(vec)));
}

FormulaPtr guard_newvec(const TermPtr& len) { return f_atom(AtomOp::Le, t_int(0), len); }

FormulaPtr newvec_fact(const TermPtr& nv, const TermPtr& len) {
  TermPtr u = t_var("u", Sort::Int);
  return f_and(f_atom(AtomOp::Eq, t_len(nv), len),
               f_forall("u", f_imp(guard_bounds(u, nv), f_atom(AtomOp::Eq, t_idx(nv, u), t_int(0)))));
}

FormulaPtr and_fold(FormulaPtr head, const std::vector<FormulaPtr>& rest) {
  for (const auto& g : rest) head = f_and(head, g);
  return head;
}

std::string havoc_name(const char* prefix, int index) {
  return std::string(prefix) + std::to_string(index);
}

}  // namespace liss::vcgen
