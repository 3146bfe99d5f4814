// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0
//
// Canonical prefix serialization and its parser. The text form is the
// stable identity of an obligation (bundle certificate keys hash it), so
// the printer must never change behavior once released.

#include "liss/logic.hpp"

#include <cctype>
#include <sstream>

namespace liss::logic {

namespace {

bool is_reserved_binder_name(const std::string& n) {
  if (n.size() < 2 || n[0] != 'q') return false;
  for (size_t k = 1; k < n.size(); ++k)
    if (!std::isdigit((unsigned char)n[k])) return false;
  return true;
}

struct Printer {
  std::ostringstream out;
  std::map<std::string, std::string> binder_names;  // source binder -> qN
  int depth = 0;

  void term(const TermPtr& t) {
    switch (t->kind) {
      case TermKind::IntLit: out << t->num; return;
      case TermKind::Var: {
        auto it = binder_names.find(t->var);
        out << (it == binder_names.end() ? t->var : it->second);
        return;
      }
      case TermKind::Add: node("add", t); return;
      case TermKind::Sub: node("sub", t); return;
      case TermKind::Mul: node("mul", t); return;
      case TermKind::Div: node("div", t); return;
      case TermKind::Mod: node("mod", t); return;
      case TermKind::Len: node("len", t); return;
      case TermKind::Idx: node("idx", t); return;
      case TermKind::Upd: node("upd", t); return;
      case TermKind::Card: node("card", t); return;
      case TermKind::Union: node("union", t); return;
      case TermKind::Inter: node("inter", t); return;
      case TermKind::Diff: node("diff", t); return;
      case TermKind::SetLit: node("set", t); return;
    }
  }

  void node(const char* tag, const TermPtr& t) {
    out << '(' << tag;
    for (const auto& a : t->args) {
      out << ' ';
      term(a);
    }
    out << ')';
  }

  void formula(const FormulaPtr& f) {
    switch (f->kind) {
      case FormulaKind::True: out << "true"; return;
      case FormulaKind::False: out << "false"; return;
      case FormulaKind::Atom: {
        const char* tag = "eq";
        switch (f->op) {
          case AtomOp::Eq: tag = "eq"; break;
          case AtomOp::Lt: tag = "lt"; break;
          case AtomOp::Le: tag = "le"; break;
          case AtomOp::Mem: tag = "mem"; break;
          case AtomOp::Subset: tag = "subset"; break;
        }
        out << '(' << tag << ' ';
        term(f->lhs);
        out << ' ';
        term(f->rhs);
        out << ')';
        return;
      }
      case FormulaKind::Not:
        out << "(not ";
        formula(f->a);
        out << ')';
        return;
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Imp: {
        const char* tag = f->kind == FormulaKind::And ? "and"
                          : f->kind == FormulaKind::Or ? "or"
                                                       : "imp";
        out << '(' << tag << ' ';
        formula(f->a);
        out << ' ';
        formula(f->b);
        out << ')';
        return;
      }
      case FormulaKind::Forall: {
        std::string qname = "q" + std::to_string(depth);
        auto it = binder_names.find(f->binder);
        std::optional<std::string> saved;
        if (it != binder_names.end()) saved = it->second;
        binder_names[f->binder] = qname;
        ++depth;
        out << "(forall " << qname << ' ';
        formula(f->a);
        out << ')';
        --depth;
        if (saved)
          binder_names[f->binder] = *saved;
        else
          binder_names.erase(f->binder);
        return;
      }
    }
  }
};

}  // namespace

std::string canonical_text(const FormulaPtr& f) {
  Printer p;
  p.formula(f);
  return p.out.str();
}

std::string canonical_term_text(const TermPtr& t) {
  Printer p;
  p.term(t);
  return p.out.str();
}

bool canonical_eq(const FormulaPtr& a, const FormulaPtr& b) {
  return canonical_text(a) == canonical_text(b);
}

// ---------------------------------------------------------------------------
// Parsing: s-expression reader + sort inference over free variables.

namespace {

struct SExpr {
  // atom if children empty and text nonempty
  std::string text;
  std::vector<SExpr> children;
  bool is_list = false;
  size_t pos = 0;
};

struct Reader {
  const std::string& s;
  size_t p = 0;
  explicit Reader(const std::string& str) : s(str) {}

  void skip_ws() {
    while (p < s.size() && std::isspace((unsigned char)s[p])) ++p;
  }

  SExpr read() {
    skip_ws();
    if (p >= s.size()) throw FormulaSyntaxError(p, "unexpected end of input");
    SExpr e;
    e.pos = p;
    if (s[p] == '(') {
      ++p;
      e.is_list = true;
      while (true) {
        skip_ws();
        if (p >= s.size()) throw FormulaSyntaxError(p, "missing ')'");
        if (s[p] == ')') { ++p; break; }
        e.children.push_back(read());
      }
      return e;
    }
    if (s[p] == ')') throw FormulaSyntaxError(p, "unexpected ')'");
    size_t start = p;
    while (p < s.size() && !std::isspace((unsigned char)s[p]) && s[p] != '(' && s[p] != ')') ++p;
    e.text = s.substr(start, p - start);
    return e;
  }
};

bool parse_int(const std::string& t, long long& out) {
  if (t.empty()) return false;
  size_t k = 0;
  if (t[0] == '-') {
    if (t.size() == 1) return false;
    k = 1;
  }
  for (; k < t.size(); ++k)
    if (!std::isdigit((unsigned char)t[k])) return false;
  try {
    out = std::stoll(t);
  } catch (...) {
    return false;
  }
  return true;
}

// Sort inference: a little union-find over variable names with an optional
// resolved sort per class. Operators pin sorts; eq links its two sides.
struct SortInfer {
  std::map<std::string, std::string> parent;
  std::map<std::string, std::optional<Sort>> sort;

  std::string find(const std::string& x) {
    auto it = parent.find(x);
    if (it == parent.end()) {
      parent[x] = x;
      sort[x] = std::nullopt;
      return x;
    }
    if (it->second == x) return x;
    std::string r = find(it->second);
    parent[x] = r;
    return r;
  }

  void pin(const std::string& x, Sort s, size_t pos) {
    std::string r = find(x);
    if (sort[r] && *sort[r] != s)
      throw FormulaSyntaxError(pos, "variable " + x + " used at two sorts");
    sort[r] = s;
  }

  void link(const std::string& x, const std::string& y, size_t pos) {
    std::string rx = find(x), ry = find(y);
    if (rx == ry) return;
    if (sort[rx] && sort[ry] && *sort[rx] != *sort[ry])
      throw FormulaSyntaxError(pos, "variables " + x + " and " + y + " used at clashing sorts");
    parent[rx] = ry;
    if (sort[rx] && !sort[ry]) sort[ry] = sort[rx];
  }

  Sort resolved(const std::string& x) {
    std::string r = find(x);
    return sort[r].value_or(Sort::Int);
  }
};

struct TermShape {
  // First pass result: term tree with unresolved variable sorts.
  enum class K { Int, Var, Node } k;
  long long num = 0;
  std::string name;
  TermKind kind = TermKind::Var;
  std::vector<TermShape> args;
  size_t pos = 0;
};

struct ParseCtx {
  SortInfer infer;
  std::vector<std::string> bound_stack;

  bool is_bound(const std::string& n) const {
    for (auto it = bound_stack.rbegin(); it != bound_stack.rend(); ++it)
      if (*it == n) return true;
    return false;
  }
};

struct TermOpInfo {
  TermKind kind;
  int arity;  // -1 = variadic (set)
};

const std::map<std::string, TermOpInfo>& term_ops() {
  static const std::map<std::string, TermOpInfo> ops = {
      {"add", {TermKind::Add, 2}},   {"sub", {TermKind::Sub, 2}},
      {"mul", {TermKind::Mul, 2}},   {"div", {TermKind::Div, 2}},
      {"mod", {TermKind::Mod, 2}},   {"len", {TermKind::Len, 1}},
      {"idx", {TermKind::Idx, 2}},   {"upd", {TermKind::Upd, 3}},
      {"card", {TermKind::Card, 1}}, {"union", {TermKind::Union, 2}},
      {"inter", {TermKind::Inter, 2}}, {"diff", {TermKind::Diff, 2}},
      {"set", {TermKind::SetLit, -1}},
  };
  return ops;
}

TermShape read_term(const SExpr& e, ParseCtx& ctx);

void constrain_term(const TermShape& t, Sort want, ParseCtx& ctx) {
  switch (t.k) {
    case TermShape::K::Int:
      if (want != Sort::Int) throw FormulaSyntaxError(t.pos, "integer literal where " + std::string(sort_name(want)) + " expected");
      return;
    case TermShape::K::Var:
      if (ctx.is_bound(t.name)) {
        if (want != Sort::Int) throw FormulaSyntaxError(t.pos, "bound variable " + t.name + " must be int");
        return;
      }
      ctx.infer.pin(t.name, want, t.pos);
      return;
    case TermShape::K::Node: {
      Sort produced;
      switch (t.kind) {
        case TermKind::Upd: produced = Sort::Vec; break;
        case TermKind::Union:
        case TermKind::Inter:
        case TermKind::Diff:
        case TermKind::SetLit: produced = Sort::Set; break;
        default: produced = Sort::Int; break;
      }
      if (produced != want)
        throw FormulaSyntaxError(t.pos, "operator produces " + std::string(sort_name(produced)) +
                                            " where " + sort_name(want) + " expected");
      return;
    }
  }
}

TermShape read_term(const SExpr& e, ParseCtx& ctx) {
  TermShape t;
  t.pos = e.pos;
  if (!e.is_list) {
    long long n;
    if (parse_int(e.text, n)) {
      t.k = TermShape::K::Int;
      t.num = n;
      return t;
    }
    t.k = TermShape::K::Var;
    t.name = e.text;
    if (!ctx.is_bound(e.text) && is_reserved_binder_name(e.text))
      throw FormulaSyntaxError(e.pos, "free variable name " + e.text + " is reserved for binders");
    return t;
  }
  if (e.children.empty() || e.children[0].is_list)
    throw FormulaSyntaxError(e.pos, "expected operator");
  const std::string& op = e.children[0].text;
  auto it = term_ops().find(op);
  if (it == term_ops().end()) throw FormulaSyntaxError(e.pos, "unknown term operator " + op);
  int argc = (int)e.children.size() - 1;
  if (it->second.arity >= 0 && argc != it->second.arity)
    throw FormulaSyntaxError(e.pos, op + " expects " + std::to_string(it->second.arity) + " arguments");
  t.k = TermShape::K::Node;
  t.kind = it->second.kind;
  for (int k = 0; k < argc; ++k) t.args.push_back(read_term(e.children[(size_t)k + 1], ctx));

  // pin argument sorts
  switch (t.kind) {
    case TermKind::Add: case TermKind::Sub: case TermKind::Mul:
    case TermKind::Div: case TermKind::Mod:
      constrain_term(t.args[0], Sort::Int, ctx);
      constrain_term(t.args[1], Sort::Int, ctx);
      break;
    case TermKind::Len:
      constrain_term(t.args[0], Sort::Vec, ctx);
      break;
    case TermKind::Idx:
      constrain_term(t.args[0], Sort::Vec, ctx);
      constrain_term(t.args[1], Sort::Int, ctx);
      break;
    case TermKind::Upd:
      constrain_term(t.args[0], Sort::Vec, ctx);
      constrain_term(t.args[1], Sort::Int, ctx);
      constrain_term(t.args[2], Sort::Int, ctx);
      break;
    case TermKind::Card:
      constrain_term(t.args[0], Sort::Set, ctx);
      break;
    case TermKind::Union: case TermKind::Inter: case TermKind::Diff:
      constrain_term(t.args[0], Sort::Set, ctx);
      constrain_term(t.args[1], Sort::Set, ctx);
      break;
    case TermKind::SetLit:
      for (auto& a : t.args) constrain_term(a, Sort::Int, ctx);
      break;
    default: break;
  }
  return t;
}

// Link both sides of a sort-polymorphic eq: if either side is a variable,
// its class joins the other side's pinned sort (or the two variables link).
void link_eq_sides(const TermShape& l, const TermShape& r, ParseCtx& ctx, size_t pos) {
  auto side_sort = [&](const TermShape& t) -> std::optional<Sort> {
    switch (t.k) {
      case TermShape::K::Int: return Sort::Int;
      case TermShape::K::Var:
        if (ctx.is_bound(t.name)) return Sort::Int;
        return std::nullopt;
      case TermShape::K::Node:
        switch (t.kind) {
          case TermKind::Upd: return Sort::Vec;
          case TermKind::Union: case TermKind::Inter:
          case TermKind::Diff: case TermKind::SetLit: return Sort::Set;
          default: return Sort::Int;
        }
    }
    return std::nullopt;
  };
  auto ls = side_sort(l), rs = side_sort(r);
  if (ls && rs) {
    if (*ls != *rs) throw FormulaSyntaxError(pos, "eq over mismatched sorts");
    return;
  }
  if (ls && !rs) { ctx.infer.pin(r.name, *ls, pos); return; }
  if (!ls && rs) { ctx.infer.pin(l.name, *rs, pos); return; }
  ctx.infer.link(l.name, r.name, pos);
}

struct FormulaShape {
  FormulaKind kind = FormulaKind::True;
  AtomOp op = AtomOp::Eq;
  TermShape lhs, rhs;
  std::vector<FormulaShape> sub;
  std::string binder;
  size_t pos = 0;
};

FormulaShape read_formula(const SExpr& e, ParseCtx& ctx) {
  FormulaShape f;
  f.pos = e.pos;
  if (!e.is_list) {
    if (e.text == "true") { f.kind = FormulaKind::True; return f; }
    if (e.text == "false") { f.kind = FormulaKind::False; return f; }
    throw FormulaSyntaxError(e.pos, "expected formula, found '" + e.text + "'");
  }
  if (e.children.empty() || e.children[0].is_list)
    throw FormulaSyntaxError(e.pos, "expected connective or atom");
  const std::string& op = e.children[0].text;
  auto expect_args = [&](size_t n) {
    if (e.children.size() != n + 1)
      throw FormulaSyntaxError(e.pos, op + " expects " + std::to_string(n) + " arguments");
  };
  if (op == "not") {
    expect_args(1);
    f.kind = FormulaKind::Not;
    f.sub.push_back(read_formula(e.children[1], ctx));
    return f;
  }
  if (op == "and" || op == "or" || op == "imp") {
    expect_args(2);
    f.kind = op == "and" ? FormulaKind::And : op == "or" ? FormulaKind::Or : FormulaKind::Imp;
    f.sub.push_back(read_formula(e.children[1], ctx));
    f.sub.push_back(read_formula(e.children[2], ctx));
    return f;
  }
  if (op == "forall") {
    expect_args(2);
    if (e.children[1].is_list) throw FormulaSyntaxError(e.children[1].pos, "binder must be a name");
    f.kind = FormulaKind::Forall;
    f.binder = e.children[1].text;
    ctx.bound_stack.push_back(f.binder);
    f.sub.push_back(read_formula(e.children[2], ctx));
    ctx.bound_stack.pop_back();
    return f;
  }
  AtomOp aop;
  if (op == "eq") aop = AtomOp::Eq;
  else if (op == "lt") aop = AtomOp::Lt;
  else if (op == "le") aop = AtomOp::Le;
  else if (op == "mem") aop = AtomOp::Mem;
  else if (op == "subset") aop = AtomOp::Subset;
  else throw FormulaSyntaxError(e.pos, "unknown formula operator " + op);
  expect_args(2);
  f.kind = FormulaKind::Atom;
  f.op = aop;
  f.lhs = read_term(e.children[1], ctx);
  f.rhs = read_term(e.children[2], ctx);
  switch (aop) {
    case AtomOp::Eq: link_eq_sides(f.lhs, f.rhs, ctx, e.pos); break;
    case AtomOp::Lt:
    case AtomOp::Le:
      constrain_term(f.lhs, Sort::Int, ctx);
      constrain_term(f.rhs, Sort::Int, ctx);
      break;
    case AtomOp::Mem:
      constrain_term(f.lhs, Sort::Int, ctx);
      constrain_term(f.rhs, Sort::Set, ctx);
      break;
    case AtomOp::Subset:
      constrain_term(f.lhs, Sort::Set, ctx);
      constrain_term(f.rhs, Sort::Set, ctx);
      break;
  }
  return f;
}

TermPtr build_term(const TermShape& t, ParseCtx& ctx, std::vector<std::string>& bound) {
  switch (t.k) {
    case TermShape::K::Int: return t_int(t.num);
    case TermShape::K::Var: {
      for (auto it = bound.rbegin(); it != bound.rend(); ++it)
        if (*it == t.name) return t_var(t.name, Sort::Int);
      return t_var(t.name, ctx.infer.resolved(t.name));
    }
    case TermShape::K::Node: {
      std::vector<TermPtr> args;
      for (const auto& a : t.args) args.push_back(build_term(a, ctx, bound));
      auto tm = std::make_shared<Term>();
      tm->kind = t.kind;
      tm->args = std::move(args);
      return tm;
    }
  }
  throw FormulaSyntaxError(t.pos, "bad term");
}

FormulaPtr build_formula(const FormulaShape& f, ParseCtx& ctx, std::vector<std::string>& bound) {
  switch (f.kind) {
    case FormulaKind::True: return f_true();
    case FormulaKind::False: return f_false();
    case FormulaKind::Atom:
      return f_atom(f.op, build_term(f.lhs, ctx, bound), build_term(f.rhs, ctx, bound));
    case FormulaKind::Not: return f_not(build_formula(f.sub[0], ctx, bound));
    case FormulaKind::And:
      return f_and(build_formula(f.sub[0], ctx, bound), build_formula(f.sub[1], ctx, bound));
    case FormulaKind::Or:
      return f_or(build_formula(f.sub[0], ctx, bound), build_formula(f.sub[1], ctx, bound));
    case FormulaKind::Imp:
      return f_imp(build_formula(f.sub[0], ctx, bound), build_formula(f.sub[1], ctx, bound));
    case FormulaKind::Forall: {
      bound.push_back(f.binder);
      FormulaPtr body = build_formula(f.sub[0], ctx, bound);
      bound.pop_back();
      return f_forall(f.binder, body);
    }
  }
  throw FormulaSyntaxError(f.pos, "bad formula");
}

}  // namespace

FormulaPtr parse_formula(const std::string& text, const std::map<std::string, Sort>& sort_hints) {
  Reader r(text);
  SExpr e = r.read();
  r.skip_ws();
  if (r.p != text.size()) throw FormulaSyntaxError(r.p, "trailing input");
  ParseCtx ctx;
  for (const auto& [n, s] : sort_hints) ctx.infer.pin(n, s, 0);
  FormulaShape shape = read_formula(e, ctx);
  std::vector<std::string> bound;
  FormulaPtr f = build_formula(shape, ctx, bound);
  std::string why;
  if (!well_sorted(f, &why)) throw FormulaSyntaxError(0, "ill-sorted formula: " + why);
  return f;
}

TermPtr parse_term(const std::string& text, const std::map<std::string, Sort>& sort_hints) {
  Reader r(text);
  SExpr e = r.read();
  r.skip_ws();
  if (r.p != text.size()) throw FormulaSyntaxError(r.p, "trailing input");
  ParseCtx ctx;
  for (const auto& [n, s] : sort_hints) ctx.infer.pin(n, s, 0);
  TermShape shape = read_term(e, ctx);
  std::vector<std::string> bound;
  return build_term(shape, ctx, bound);
}

}  // namespace liss::logic
