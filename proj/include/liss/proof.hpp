// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0
//
// The certificate calculus and its checker. check_certificate is the
// consumer's trusted kernel: total on arbitrary input, no proof search,
// no dependency on the prover, compiler, VM, or front end.

#pragma once

#include "liss/logic.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace liss::proof {

// Exact rational with checked 64-bit arithmetic; overflow surfaces as a
// rejection, never wraparound. No floating point anywhere in the checker.
struct Rational {
  long long num = 0;
  long long den = 1;  // > 0, gcd(|num|, den) == 1

  static Rational of(long long n) { return {n, 1}; }
  static Rational make(long long n, long long d);  // throws CheckOverflow
  bool is_zero() const { return num == 0; }
  bool negative() const { return num < 0; }
};

struct CheckOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational rat_add(const Rational& a, const Rational& b);
Rational rat_sub(const Rational& a, const Rational& b);
Rational rat_mul(const Rational& a, const Rational& b);
bool rat_eq(const Rational& a, const Rational& b);
// a > b
bool rat_gt(const Rational& a, const Rational& b);
std::string rat_text(const Rational& r);

// ---------------------------------------------------------------------------
// Certificates

enum class CertKind {
  Hyp, AndI, AndE1, AndE2, OrI1, OrI2, OrE,
  ImpI, ImpE, NotI, NotE, Contra, ForallI, ForallE,
  Refl, Rewrite, Eval, Lia, Axiom,
};

struct Certificate;
using CertPtr = std::shared_ptr<const Certificate>;

struct Certificate {
  CertKind kind;
  size_t hyp_index = 0;              // Hyp: 0 = innermost hypothesis
  logic::FormulaPtr formula;         // ImpI/NotI: antecedent; OrI1/OrI2: the other disjunct; Eval: the atom
  logic::TermPtr term;               // ForallE: witness; Refl: the term
  std::string var;                   // ForallI: the fresh variable
  std::vector<CertPtr> kids;
  std::vector<Rational> coeffs;      // Lia: one per normalized premise row
  std::vector<std::vector<int>> positions;  // Rewrite: occurrence paths
  std::string schema_id;             // Axiom
  std::map<std::string, logic::TermPtr> inst;  // Axiom: metavar -> term
};

CertPtr c_hyp(size_t i);
CertPtr c_andI(CertPtr a, CertPtr b);
CertPtr c_andE1(CertPtr c);
CertPtr c_andE2(CertPtr c);
CertPtr c_orI1(CertPtr c, logic::FormulaPtr other);
CertPtr c_orI2(CertPtr c, logic::FormulaPtr other);
CertPtr c_orE(CertPtr disj, CertPtr left, CertPtr right);
CertPtr c_impI(logic::FormulaPtr antecedent, CertPtr body);
CertPtr c_impE(CertPtr imp, CertPtr arg);
CertPtr c_notI(logic::FormulaPtr hyp, CertPtr derives_false);
// from proofs of !F and F, concludes False
CertPtr c_notE(CertPtr neg, CertPtr pos);
CertPtr c_contra(CertPtr double_neg);
CertPtr c_forallI(std::string fresh, CertPtr body);
CertPtr c_forallE(CertPtr all, logic::TermPtr witness);
CertPtr c_refl(logic::TermPtr t);
CertPtr c_rewrite(CertPtr eq, CertPtr target, std::vector<std::vector<int>> positions);
CertPtr c_eval(logic::FormulaPtr atom);
CertPtr c_lia(std::vector<Rational> coeffs, std::vector<CertPtr> premises);
CertPtr c_axiom(std::string schema_id, std::map<std::string, logic::TermPtr> inst);

// ---------------------------------------------------------------------------
// Axiom schemas

struct AxiomSchema {
  std::string id;
  // metavariable name -> required sort; variadic families ("mem-setlit")
  // additionally take e0..e{k-1} element terms.
  std::map<std::string, logic::Sort> metavars;
  bool variadic = false;
  // pattern over metavariables as free vars; null for variadic families,
  // whose instances are built programmatically.
  logic::FormulaPtr pattern;
};

// The fixed, versioned catalog (v1). Closed: unknown ids are rejected.
const std::vector<AxiomSchema>& axiom_catalog();

struct BadAxiomInstance : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Builds the instance formula; throws BadAxiomInstance on unknown id,
// missing/extra metavariables, or sort mismatch.
logic::FormulaPtr instantiate_schema(const std::string& id,
                                     const std::map<std::string, logic::TermPtr>& inst);

// ---------------------------------------------------------------------------
// Checking

struct CheckResult {
  bool accepted = false;
  std::string reason;      // first failure, empty on accept
  std::vector<int> path;   // child-index path from the root to the failing node

  static CheckResult ok() { return {true, "", {}}; }
};

// Accept iff cert is a well-formed derivation whose root conclusion equals
// goal up to canonical text. Total: malformed and adversarial certificates
// produce Reject, never an escape of control.
CheckResult check_certificate(const logic::FormulaPtr& goal, const CertPtr& cert);

// ---------------------------------------------------------------------------
// Certificate text (.prf)

struct CertSyntaxError : std::runtime_error {
  size_t position;
  CertSyntaxError(size_t pos, const std::string& what)
      : std::runtime_error(what), position(pos) {}
};

std::string certificate_text(const CertPtr& c);
CertPtr parse_certificate(const std::string& text,
                          const std::map<std::string, logic::Sort>& sort_hints = {});

// Renames free program variables inside every formula/term embedded in a
// certificate (the certificate-translation step: a renamed derivation
// proves the renamed goal).
CertPtr rename_certificate(const CertPtr& c, const std::map<std::string, std::string>& m);

}  // namespace liss::proof
