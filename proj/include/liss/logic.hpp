// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0
//
// First-order formulas over integers, finite integer sets, and integer
// vectors. This is the shared language of annotations, verification
// conditions, and certificates. Everything here is immutable and
// value-semantic; shared subtrees are fine.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace liss::logic {

// ---------------------------------------------------------------------------
// Sorts and runtime values

enum class Sort { Int, Bool, Set, Vec };

const char* sort_name(Sort s);

// A runtime value: machine integers, booleans, finite int sets (kept sorted
// and deduplicated), and fixed-length int vectors. Shared between the ground
// evaluator, the source interpreter, and the VM so all three agree.
struct Value {
  Sort sort = Sort::Int;
  long long i = 0;                 // Int payload, or Bool as 0/1
  std::vector<long long> elems;    // Set (sorted, unique) or Vec payload

  static Value of_int(long long n) { return {Sort::Int, n, {}}; }
  static Value of_bool(bool b) { return {Sort::Bool, b ? 1 : 0, {}}; }
  static Value of_set(std::vector<long long> es);  // sorts + dedups
  static Value of_vec(std::vector<long long> es) { return {Sort::Vec, 0, std::move(es)}; }

  bool as_bool() const { return i != 0; }
  bool operator==(const Value& o) const { return sort == o.sort && i == o.i && elems == o.elems; }
};

std::string value_text(const Value& v);

// Bool program values enter the logic as 0/1 integers (terms have no bool
// sort); identity on everything else.
Value logical_value(const Value& v);

// Euclidean division: remainder is always in [0, |d|). Shared by the
// interpreter, the VM, and ground evaluation so all levels agree.
long long euclid_div(long long a, long long d);
long long euclid_mod(long long a, long long d);

// ---------------------------------------------------------------------------
// Terms

enum class TermKind {
  IntLit, Var,
  Add, Sub, Mul, Div, Mod,
  Len, Idx, Upd,
  Card, Union, Inter, Diff, SetLit,
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermKind kind;
  long long num = 0;          // IntLit
  std::string var;            // Var
  Sort var_sort = Sort::Int;  // Var
  std::vector<TermPtr> args;
};

TermPtr t_int(long long n);
TermPtr t_var(std::string name, Sort sort);
TermPtr t_add(TermPtr a, TermPtr b);
TermPtr t_sub(TermPtr a, TermPtr b);
TermPtr t_mul(TermPtr a, TermPtr b);
TermPtr t_div(TermPtr a, TermPtr b);
TermPtr t_mod(TermPtr a, TermPtr b);
TermPtr t_len(TermPtr v);
TermPtr t_idx(TermPtr v, TermPtr i);
TermPtr t_upd(TermPtr v, TermPtr i, TermPtr e);
TermPtr t_card(TermPtr s);
TermPtr t_union(TermPtr a, TermPtr b);
TermPtr t_inter(TermPtr a, TermPtr b);
TermPtr t_diff(TermPtr a, TermPtr b);
TermPtr t_setlit(std::vector<TermPtr> elems);  // empty list = empty set
TermPtr t_emptyset();

// Sort of a term; throws BadSort if the node is internally inconsistent.
Sort sort_of(const TermPtr& t);
bool term_eq(const TermPtr& a, const TermPtr& b);

// ---------------------------------------------------------------------------
// Formulas

enum class AtomOp { Eq, Lt, Le, Mem, Subset };
enum class FormulaKind { True, False, Atom, Not, And, Or, Imp, Forall };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind;
  AtomOp op = AtomOp::Eq;  // Atom
  TermPtr lhs, rhs;        // Atom
  FormulaPtr a, b;         // Not(a); And/Or/Imp(a,b); Forall(a = body)
  std::string binder;      // Forall; binders are always Int-sorted
};

FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_atom(AtomOp op, TermPtr l, TermPtr r);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_imp(FormulaPtr a, FormulaPtr b);
// Iff is surface sugar: (a -> b) /\ (b -> a). There is no Iff node.
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b);
FormulaPtr f_forall(std::string binder, FormulaPtr body);

bool formula_eq(const FormulaPtr& a, const FormulaPtr& b);  // structural

// Free variables with their sorts. Throws BadSort if one name is used at
// two different sorts.
std::map<std::string, Sort> free_vars(const FormulaPtr& f);
void collect_free_vars(const TermPtr& t, std::map<std::string, Sort>& out);

// Sort-correctness of every node (Idx takes a Vec and an Int, Mem an Int and
// a Set, quantified variables are Int-sorted, one sort per free name, ...).
bool well_sorted(const FormulaPtr& f, std::string* why = nullptr);

// ---------------------------------------------------------------------------
// Substitution

struct SortMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Capture-avoiding substitution of a single variable. Binders that would
// capture free variables of `t` are renamed (name', name'', ...).
FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const TermPtr& t);
TermPtr subst_term(const TermPtr& t, const std::string& var, const TermPtr& repl);

// Simultaneous substitution; needed wherever the replaced names overlap the
// replacement terms' free names (callee spec instantiation).
FormulaPtr subst_parallel(const FormulaPtr& f, const std::map<std::string, TermPtr>& m);
TermPtr subst_parallel_term(const TermPtr& t, const std::map<std::string, TermPtr>& m);

// Uniform renaming of free variables (used by annotation translation).
FormulaPtr rename_free(const FormulaPtr& f, const std::map<std::string, std::string>& m);

// ---------------------------------------------------------------------------
// Ground evaluation

struct GroundState {
  std::map<std::string, Value> env;
};

struct NonGround : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EvalError : std::runtime_error {
  enum class Kind { DivByZero, IdxOutOfBounds };
  Kind kind;
  EvalError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

// Classical two-valued evaluation of the quantifier-free fragment.
// Connectives short-circuit left to right, so guarded partial terms
// (i < len(v) -> v[i] >= 0) never fault. Quantifiers and unbound free
// variables raise NonGround; div by zero / bad index raise EvalError.
bool eval_ground(const FormulaPtr& f, const GroundState& s);
Value eval_term(const TermPtr& t, const GroundState& s);

// ---------------------------------------------------------------------------
// Bounded-enumeration validity oracle (test-side ground truth)

struct EnumLimits {
  long long bound = 3;       // ints range over [-bound, bound]
  int set_cap = 3;           // |set| <= set_cap, elements in [-bound, bound]
  int vec_cap = 3;           // len(vec) <= vec_cap, elements in [-bound, bound]
  unsigned long long state_ceiling = 2'000'000ULL;
};

enum class EnumStatus { Valid, CounterModel, TooLarge };

struct EnumResult {
  EnumStatus status;
  GroundState model;  // set when status == CounterModel
};

// Exhaustively enumerates assignments to the free variables of f:
//   - variables are ordered by name; enumeration is an odometer with the
//     lexicographically last variable cycling fastest;
//   - Int values ascend -bound..bound;
//   - sets are enumerated by size 0..set_cap, then lexicographically over
//     the ascending universe;
//   - vectors by length 0..vec_cap, then row-major with the last element
//     fastest, each element ascending -bound..bound.
// Quantifiers are instantiated over [-bound, bound]. A state on which
// evaluation faults (unguarded partial term) counts as a counter-model.
// Returns the first counter-model in this order, else Valid.
EnumResult enumerate_validity(const FormulaPtr& f, const EnumLimits& lim);
EnumResult enumerate_validity(const FormulaPtr& f, long long bound, int set_cap, int vec_cap);

// ---------------------------------------------------------------------------
// Canonical serialization

// Fully parenthesized prefix text with binders renamed q0, q1, ... by
// nesting depth; stable across runs and platforms. Free variables print
// as-is, so names matching q[0-9]+ are reserved for binders and rejected
// by the parsers.
std::string canonical_text(const FormulaPtr& f);
std::string canonical_term_text(const TermPtr& t);

// Equality up to canonical form (binder names).
bool canonical_eq(const FormulaPtr& a, const FormulaPtr& b);

struct FormulaSyntaxError : std::runtime_error {
  size_t position;
  FormulaSyntaxError(size_t pos, const std::string& what)
      : std::runtime_error(what), position(pos) {}
};

// Parses canonical text back into a formula. Sorts of free variables are
// inferred from use sites (idx/len force Vec, mem/card force Set, ...);
// unconstrained names default to Int unless pinned by `sort_hints`.
FormulaPtr parse_formula(const std::string& text,
                         const std::map<std::string, Sort>& sort_hints = {});
TermPtr parse_term(const std::string& text,
                   const std::map<std::string, Sort>& sort_hints = {});

struct BadSort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace liss::logic
