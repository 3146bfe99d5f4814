// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0
//
// Typing, name resolution, annotation lowering. Conventions pinned here:
//   - declarations are function-scoped, unique, visible from their textual
//     point on; parameters are assignable;
//   - in ensures, a plain parameter denotes its entry value: both `p` and
//     `\old(p)` lower to the ghost old_p (the JML by-value reading);
//   - bool values live in the logic as 0/1 integers: a bool variable used
//     as an annotation atom becomes (b = 1), bool equality becomes iff;
//   - `return` must be the last statement of the function body;
//   - reserved variable shapes: q<N>, s<N>, call<N>, read<N>, new<N>,
//     old_*, result (they name binders, slots, and ghosts elsewhere).

#include "liss/lang.hpp"

#include <cctype>
#include <cstring>
#include <functional>
#include <set>

namespace liss::lang {

using namespace liss::logic;

namespace {

bool reserved_var_name(const std::string& n) {
  if (n == "result") return true;
  if (n.rfind("old_", 0) == 0) return true;
  auto digits_after = [&](const char* prefix) {
    size_t len = strlen(prefix);
    if (n.size() <= len || n.compare(0, len, prefix) != 0) return false;
    for (size_t k = len; k < n.size(); ++k)
      if (!std::isdigit((unsigned char)n[k])) return false;
    return true;
  };
  return digits_after("q") || digits_after("s") || digits_after("call") ||
         digits_after("read") || digits_after("new");
}

Sort logical_sort(Sort s) { return s == Sort::Bool ? Sort::Int : s; }

enum class Mode { Program, Annotation, EnsuresAnnotation };

struct Ctx {
  const SourceProgram& prog;
  FunctionDecl* fn = nullptr;
  std::map<std::string, Sort> vars;       // declared so far (flat scope)
  std::set<std::string> binders;          // forall binders in scope (int)
  std::vector<TypeError>* errors;
  Mode mode = Mode::Program;

  void error(Location loc, const std::string& msg) { errors->push_back({loc, msg}); }
};

const char* sn(Sort s) { return sort_name(s); }

// ---------------------------------------------------------------------------
// Typing pass: fills Expr::type; reports errors; returns the node's sort
// (garbage on error, but errors are recorded).

Sort type_expr(Ctx& ctx, Expr& e);

Sort expect_sort(Ctx& ctx, Expr& e, Sort want, const char* what) {
  Sort got = type_expr(ctx, e);
  if (got != want)
    ctx.error(e.loc, std::string(what) + ": expected " + sn(want) + ", found " + sn(got));
  return got;
}

Sort type_expr(Ctx& ctx, Expr& e) {
  auto set = [&](Sort s) {
    e.type = s;
    return s;
  };
  switch (e.kind) {
    case ExprKind::IntLit: return set(Sort::Int);
    case ExprKind::BoolLit: return set(Sort::Bool);
    case ExprKind::VarRef: {
      if (ctx.binders.count(e.name)) return set(Sort::Int);
      auto it = ctx.vars.find(e.name);
      if (it == ctx.vars.end()) {
        ctx.error(e.loc, "undefined variable " + e.name);
        return set(Sort::Int);
      }
      return set(it->second);
    }
    case ExprKind::Add: case ExprKind::Sub: case ExprKind::Mul:
    case ExprKind::Div: case ExprKind::Mod:
      expect_sort(ctx, *e.args[0], Sort::Int, "arithmetic");
      expect_sort(ctx, *e.args[1], Sort::Int, "arithmetic");
      return set(Sort::Int);
    case ExprKind::Eq: {
      Sort l = type_expr(ctx, *e.args[0]);
      Sort r = type_expr(ctx, *e.args[1]);
      if (l != r) ctx.error(e.loc, std::string("'=' over mismatched types: ") + sn(l) + " and " + sn(r));
      return set(Sort::Bool);
    }
    case ExprKind::Lt: case ExprKind::Le:
      expect_sort(ctx, *e.args[0], Sort::Int, "comparison");
      expect_sort(ctx, *e.args[1], Sort::Int, "comparison");
      return set(Sort::Bool);
    case ExprKind::Not:
      expect_sort(ctx, *e.args[0], Sort::Bool, "'not'");
      return set(Sort::Bool);
    case ExprKind::And: case ExprKind::Or:
      expect_sort(ctx, *e.args[0], Sort::Bool, "boolean operator");
      expect_sort(ctx, *e.args[1], Sort::Bool, "boolean operator");
      return set(Sort::Bool);
    case ExprKind::SetLit:
      for (auto& a : e.args) expect_sort(ctx, *a, Sort::Int, "set element");
      return set(Sort::Set);
    case ExprKind::Union: case ExprKind::Inter: case ExprKind::Diff:
      expect_sort(ctx, *e.args[0], Sort::Set, "set operator");
      expect_sort(ctx, *e.args[1], Sort::Set, "set operator");
      return set(Sort::Set);
    case ExprKind::Mem:
      expect_sort(ctx, *e.args[0], Sort::Int, "'in'");
      expect_sort(ctx, *e.args[1], Sort::Set, "'in'");
      return set(Sort::Bool);
    case ExprKind::Card:
      expect_sort(ctx, *e.args[0], Sort::Set, "card");
      return set(Sort::Int);
    case ExprKind::NewVec:
      if (ctx.mode != Mode::Program) ctx.error(e.loc, "newvec is not allowed in annotations");
      expect_sort(ctx, *e.args[0], Sort::Int, "newvec");
      return set(Sort::Vec);
    case ExprKind::Idx:
      expect_sort(ctx, *e.args[0], Sort::Vec, "indexing");
      expect_sort(ctx, *e.args[1], Sort::Int, "index");
      return set(Sort::Int);
    case ExprKind::Len:
      expect_sort(ctx, *e.args[0], Sort::Vec, "len");
      return set(Sort::Int);
    case ExprKind::Call: {
      if (ctx.mode != Mode::Program) {
        ctx.error(e.loc, "function calls are not allowed in annotations");
        return set(Sort::Int);
      }
      const FunctionDecl* callee = nullptr;
      for (const auto& f : ctx.prog.functions)
        if (f.name == e.name) callee = &f;
      if (!callee) {
        ctx.error(e.loc, "call to undefined function " + e.name);
        return set(Sort::Int);
      }
      if (callee->params.size() != e.args.size()) {
        ctx.error(e.loc, "call to " + e.name + " expects " +
                             std::to_string(callee->params.size()) + " arguments, got " +
                             std::to_string(e.args.size()));
      }
      for (size_t k = 0; k < e.args.size() && k < callee->params.size(); ++k)
        expect_sort(ctx, *e.args[k], callee->params[k].second, "call argument");
      if (!callee->ret) {
        ctx.error(e.loc, "call to " + e.name + " which returns nothing, used as a value");
        return set(Sort::Int);
      }
      return set(*callee->ret);
    }
    case ExprKind::Read:
      if (ctx.mode != Mode::Program) ctx.error(e.loc, "read() is not allowed in annotations");
      return set(Sort::Int);
    case ExprKind::Imp: case ExprKind::Iff:
      if (ctx.mode == Mode::Program) ctx.error(e.loc, "==>/<==> are annotation-only");
      expect_sort(ctx, *e.args[0], Sort::Bool, "implication");
      expect_sort(ctx, *e.args[1], Sort::Bool, "implication");
      return set(Sort::Bool);
    case ExprKind::Subset:
      if (ctx.mode == Mode::Program) ctx.error(e.loc, "subset is annotation-only");
      expect_sort(ctx, *e.args[0], Sort::Set, "subset");
      expect_sort(ctx, *e.args[1], Sort::Set, "subset");
      return set(Sort::Bool);
    case ExprKind::Forall: {
      if (ctx.mode == Mode::Program) ctx.error(e.loc, "forall is annotation-only");
      if (reserved_var_name(e.name)) ctx.error(e.loc, "reserved variable name " + e.name);
      if (ctx.vars.count(e.name) || ctx.binders.count(e.name))
        ctx.error(e.loc, "quantified variable " + e.name + " shadows an existing name");
      ctx.binders.insert(e.name);
      expect_sort(ctx, *e.args[0], Sort::Bool, "forall body");
      ctx.binders.erase(e.name);
      return set(Sort::Bool);
    }
    case ExprKind::Result: {
      if (ctx.mode != Mode::EnsuresAnnotation) {
        ctx.error(e.loc, "\\result is only allowed in ensures");
        return set(Sort::Int);
      }
      if (!ctx.fn->ret) {
        ctx.error(e.loc, "\\result in a function that returns nothing");
        return set(Sort::Int);
      }
      return set(*ctx.fn->ret);
    }
    case ExprKind::Old: {
      if (ctx.mode != Mode::EnsuresAnnotation) {
        ctx.error(e.loc, "\\old is only allowed in ensures");
        return set(Sort::Int);
      }
      for (const auto& [pn, ps] : ctx.fn->params)
        if (pn == e.name) return set(ps);
      ctx.error(e.loc, "\\old(" + e.name + ") must name a parameter");
      return set(Sort::Int);
    }
  }
  return set(Sort::Int);
}

// ---------------------------------------------------------------------------
// Lowering typed annotation expressions to formulas

struct Lower {
  const FunctionDecl& fn;
  bool ensures_mode;
  std::set<std::string> binders;

  bool is_param(const std::string& n) const {
    for (const auto& [pn, _] : fn.params)
      if (pn == n) return true;
    return false;
  }

  TermPtr term(const Expr& e) {
    switch (e.kind) {
      case ExprKind::IntLit: return t_int(e.num);
      case ExprKind::VarRef: {
        if (binders.count(e.name)) return t_var(e.name, Sort::Int);
        // in ensures, plain parameters read as their entry value
        if (ensures_mode && is_param(e.name)) return t_var("old_" + e.name, logical_sort(e.type));
        return t_var(e.name, logical_sort(e.type));
      }
      case ExprKind::Add: return t_add(term(*e.args[0]), term(*e.args[1]));
      case ExprKind::Sub: return t_sub(term(*e.args[0]), term(*e.args[1]));
      case ExprKind::Mul: return t_mul(term(*e.args[0]), term(*e.args[1]));
      case ExprKind::Div: return t_div(term(*e.args[0]), term(*e.args[1]));
      case ExprKind::Mod: return t_mod(term(*e.args[0]), term(*e.args[1]));
      case ExprKind::SetLit: {
        std::vector<TermPtr> elems;
        for (const auto& a : e.args) elems.push_back(term(*a));
        return t_setlit(std::move(elems));
      }
      case ExprKind::Union: return t_union(term(*e.args[0]), term(*e.args[1]));
      case ExprKind::Inter: return t_inter(term(*e.args[0]), term(*e.args[1]));
      case ExprKind::Diff: return t_diff(term(*e.args[0]), term(*e.args[1]));
      case ExprKind::Card: return t_card(term(*e.args[0]));
      case ExprKind::Idx: return t_idx(term(*e.args[0]), term(*e.args[1]));
      case ExprKind::Len: return t_len(term(*e.args[0]));
      case ExprKind::Result: return t_var("result", logical_sort(fn.ret.value_or(Sort::Int)));
      case ExprKind::Old: {
        Sort s = Sort::Int;
        for (const auto& [pn, ps] : fn.params)
          if (pn == e.name) s = ps;
        return t_var("old_" + e.name, logical_sort(s));
      }
      default:
        throw std::logic_error("annotation term lowering reached a non-term node");
    }
  }

  FormulaPtr formula(const Expr& e) {
    switch (e.kind) {
      case ExprKind::BoolLit: return e.bval ? f_true() : f_false();
      case ExprKind::Not: return f_not(formula(*e.args[0]));
      case ExprKind::And: return f_and(formula(*e.args[0]), formula(*e.args[1]));
      case ExprKind::Or: return f_or(formula(*e.args[0]), formula(*e.args[1]));
      case ExprKind::Imp: return f_imp(formula(*e.args[0]), formula(*e.args[1]));
      case ExprKind::Iff: return f_iff(formula(*e.args[0]), formula(*e.args[1]));
      case ExprKind::Eq:
        if (e.args[0]->type == Sort::Bool)
          return f_iff(formula(*e.args[0]), formula(*e.args[1]));
        return f_atom(AtomOp::Eq, term(*e.args[0]), term(*e.args[1]));
      case ExprKind::Lt: return f_atom(AtomOp::Lt, term(*e.args[0]), term(*e.args[1]));
      case ExprKind::Le: return f_atom(AtomOp::Le, term(*e.args[0]), term(*e.args[1]));
      case ExprKind::Mem: return f_atom(AtomOp::Mem, term(*e.args[0]), term(*e.args[1]));
      case ExprKind::Subset: return f_atom(AtomOp::Subset, term(*e.args[0]), term(*e.args[1]));
      case ExprKind::Forall: {
        binders.insert(e.name);
        FormulaPtr body = formula(*e.args[0]);
        binders.erase(e.name);
        return f_forall(e.name, body);
      }
      case ExprKind::VarRef:
      case ExprKind::Result:
      case ExprKind::Old:
        // a bool-typed value used as an atom: encode as (v = 1)
        return f_atom(AtomOp::Eq, term(e), t_int(1));
      default:
        throw std::logic_error("annotation formula lowering reached a non-formula node");
    }
  }
};

// ---------------------------------------------------------------------------
// Statement checking

struct FnChecker {
  Ctx& ctx;
  FunctionDecl& fn;
  FnInfo& info;

  void declare(Location loc, const std::string& name, Sort s) {
    if (reserved_var_name(name)) ctx.error(loc, "reserved variable name " + name);
    if (ctx.vars.count(name)) {
      ctx.error(loc, "duplicate declaration of " + name + " (names are unique per function)");
      return;
    }
    ctx.vars.emplace(name, s);
    info.slots.emplace_back(name, s);
  }

  FormulaPtr lower_annotation(ExprPtr e, Mode mode) {
    if (!e) return f_true();
    Mode saved = ctx.mode;
    ctx.mode = mode;
    Sort s = type_expr(ctx, *e);
    ctx.mode = saved;
    if (s != Sort::Bool) {
      ctx.error(e->loc, "annotation must be boolean");
      return f_true();
    }
    if (!ctx.errors->empty()) return f_true();  // don't lower broken trees
    Lower lower{fn, mode == Mode::EnsuresAnnotation, {}};
    return lower.formula(*e);
  }

  void check_stmts(std::vector<StmtPtr>& body, bool top_level) {
    for (size_t k = 0; k < body.size(); ++k) {
      Stmt& st = *body[k];
      bool is_last_top = top_level && k + 1 == body.size();
      if (st.kind == StmtKind::Return && !is_last_top) {
        ctx.error(st.loc, "return must be the last statement of the function body");
      }
      check_stmt(st);
    }
  }

  void check_stmt(Stmt& st) {
    switch (st.kind) {
      case StmtKind::VarDecl: {
        expect_sort(ctx, *st.e1, st.decl_type, "initializer");
        declare(st.loc, st.name, st.decl_type);
        break;
      }
      case StmtKind::Assign: {
        auto it = ctx.vars.find(st.name);
        if (it == ctx.vars.end()) {
          ctx.error(st.loc, "assignment to undefined variable " + st.name);
          type_expr(ctx, *st.e1);
          break;
        }
        expect_sort(ctx, *st.e1, it->second, "assignment");
        break;
      }
      case StmtKind::VecStore: {
        auto it = ctx.vars.find(st.name);
        if (it == ctx.vars.end() || it->second != Sort::Vec)
          ctx.error(st.loc, st.name + " is not a vector variable");
        expect_sort(ctx, *st.e1, Sort::Int, "index");
        expect_sort(ctx, *st.e2, Sort::Int, "stored value");
        break;
      }
      case StmtKind::If:
        expect_sort(ctx, *st.e1, Sort::Bool, "if condition");
        check_stmts(st.body, false);
        check_stmts(st.else_body, false);
        break;
      case StmtKind::While:
        expect_sort(ctx, *st.e1, Sort::Bool, "while condition");
        st.invariant_f = lower_annotation(st.invariant, Mode::Annotation);
        check_stmts(st.body, false);
        break;
      case StmtKind::Assert:
        st.assert_f = lower_annotation(st.e1, Mode::Annotation);
        break;
      case StmtKind::Return: {
        if (fn.ret) {
          if (!st.e1) ctx.error(st.loc, "return without a value in a value-returning function");
          else expect_sort(ctx, *st.e1, *fn.ret, "return value");
        } else if (st.e1) {
          ctx.error(st.loc, "return with a value in a function that returns nothing");
        }
        break;
      }
      case StmtKind::Print:
        expect_sort(ctx, *st.e1, Sort::Int, "print");
        break;
    }
  }

  void run() {
    for (const auto& [pn, ps] : fn.params) declare(fn.loc, pn, ps);
    info.param_count = (int)fn.params.size();
    info.ret = fn.ret;

    fn.requires_f = lower_annotation(fn.requires_e, Mode::Annotation);
    check_stmts(fn.body, true);
    // ensures lowered after the body so \old coverage errors read naturally,
    // but its variables are the parameters and result only
    fn.ensures_f = lower_annotation(fn.ensures_e, Mode::EnsuresAnnotation);

    if (fn.ret) {
      if (fn.body.empty() || fn.body.back()->kind != StmtKind::Return)
        ctx.error(fn.loc, "value-returning function must end with return");
    }
  }
};

void check_call_dag(const SourceProgram& p, std::vector<TypeError>& errors) {
  std::map<std::string, std::set<std::string>> calls;
  std::function<void(const std::string&, const Expr&)> scan_expr =
      [&](const std::string& fn, const Expr& e) {
        if (e.kind == ExprKind::Call) calls[fn].insert(e.name);
        for (const auto& a : e.args) scan_expr(fn, *a);
      };
  std::function<void(const std::string&, const Stmt&)> scan_stmt =
      [&](const std::string& fn, const Stmt& st) {
        if (st.e1) scan_expr(fn, *st.e1);
        if (st.e2) scan_expr(fn, *st.e2);
        for (const auto& s : st.body) scan_stmt(fn, *s);
        for (const auto& s : st.else_body) scan_stmt(fn, *s);
      };
  for (const auto& f : p.functions)
    for (const auto& s : f.body) scan_stmt(f.name, *s);

  std::map<std::string, int> state;  // 0 unseen, 1 on stack, 2 done
  std::function<bool(const std::string&)> dfs = [&](const std::string& f) {
    state[f] = 1;
    for (const auto& callee : calls[f]) {
      if (state[callee] == 1) return false;
      if (state[callee] == 0 && !dfs(callee)) return false;
    }
    state[f] = 2;
    return true;
  };
  for (const auto& f : p.functions)
    if (state[f.name] == 0 && !dfs(f.name))
      errors.push_back({f.loc, "recursion detected involving " + f.name});
}

}  // namespace

const FunctionDecl* TypedProgram::find(const std::string& name) const {
  for (const auto& f : prog->functions)
    if (f.name == name) return &f;
  return nullptr;
}

TypedProgram typecheck(const SourceProgram& p) {
  TypedProgram tp;
  tp.prog = std::make_shared<SourceProgram>(p);
  std::vector<TypeError> errors;

  std::set<std::string> names;
  for (const auto& f : tp.prog->functions) {
    if (!names.insert(f.name).second)
      errors.push_back({f.loc, "duplicate function name " + f.name});
  }
  check_call_dag(*tp.prog, errors);

  for (auto& f : tp.prog->functions) {
    Ctx ctx{*tp.prog, &f, {}, {}, &errors, Mode::Program};
    FnInfo info;
    FnChecker checker{ctx, f, info};
    checker.run();
    tp.info[f.name] = std::move(info);
    tp.fn_order.push_back(f.name);
  }
  if (!errors.empty()) throw TypeErrors(std::move(errors));
  return tp;
}

}  // namespace liss::lang
