// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0
//
// Canonical source form: two-space indent, one statement per line, minimal
// parentheses re-derived from precedence. parse(pretty(p)) == p.

#include "liss/lang.hpp"

#include <sstream>

namespace liss::lang {

namespace {

// precedence levels, loosest first (must mirror the parser)
int prec(ExprKind k) {
  switch (k) {
    case ExprKind::Iff: return 0;
    case ExprKind::Imp: return 1;
    case ExprKind::Or: return 2;
    case ExprKind::And: return 3;
    case ExprKind::Not:
    case ExprKind::Forall: return 4;
    case ExprKind::Eq: case ExprKind::Lt: case ExprKind::Le:
    case ExprKind::Mem: case ExprKind::Subset: return 5;
    case ExprKind::Add: case ExprKind::Sub:
    case ExprKind::Union: case ExprKind::Inter: case ExprKind::Diff: return 6;
    case ExprKind::Mul: case ExprKind::Div: case ExprKind::Mod: return 7;
    default: return 9;  // atoms and call-like forms
  }
}

struct Printer {
  std::ostringstream out;

  void expr(const Expr& e, int parent_prec) {
    int my = prec(e.kind);
    bool paren = my < parent_prec;
    if (paren) out << '(';
    emit(e, my);
    if (paren) out << ')';
  }

  void binop(const Expr& e, const char* op, int my, bool right_assoc = false) {
    // left operand at my (left-assoc chains unparenthesized), right tighter
    expr(*e.args[0], right_assoc ? my + 1 : my);
    out << ' ' << op << ' ';
    expr(*e.args[1], right_assoc ? my : my + 1);
  }

  void emit(const Expr& e, int my) {
    switch (e.kind) {
      case ExprKind::IntLit: out << e.num; return;
      case ExprKind::BoolLit: out << (e.bval ? "true" : "false"); return;
      case ExprKind::VarRef: out << e.name; return;
      case ExprKind::Add: binop(e, "+", my); return;
      case ExprKind::Sub: binop(e, "-", my); return;
      case ExprKind::Mul: binop(e, "*", my); return;
      case ExprKind::Div: binop(e, "div", my); return;
      case ExprKind::Mod: binop(e, "mod", my); return;
      case ExprKind::Eq: binop(e, "=", my); return;
      case ExprKind::Lt: binop(e, "<", my); return;
      case ExprKind::Le: binop(e, "<=", my); return;
      case ExprKind::Not:
        out << "not ";
        expr(*e.args[0], my);
        return;
      case ExprKind::And: binop(e, "and", my); return;
      case ExprKind::Or: binop(e, "or", my); return;
      case ExprKind::Imp: binop(e, "==>", my, /*right_assoc=*/true); return;
      case ExprKind::Iff: binop(e, "<==>", my); return;
      case ExprKind::SetLit: {
        out << '{';
        for (size_t k = 0; k < e.args.size(); ++k) {
          if (k) out << ", ";
          expr(*e.args[k], 0);
        }
        out << '}';
        return;
      }
      case ExprKind::Union: binop(e, "union", my); return;
      case ExprKind::Inter: binop(e, "inter", my); return;
      case ExprKind::Diff: binop(e, "diff", my); return;
      case ExprKind::Mem: binop(e, "in", my); return;
      case ExprKind::Subset: binop(e, "subset", my); return;
      case ExprKind::Card:
        out << "card(";
        expr(*e.args[0], 0);
        out << ')';
        return;
      case ExprKind::NewVec:
        out << "newvec(";
        expr(*e.args[0], 0);
        out << ')';
        return;
      case ExprKind::Idx:
        expr(*e.args[0], my);
        out << '[';
        expr(*e.args[1], 0);
        out << ']';
        return;
      case ExprKind::Len:
        out << "len(";
        expr(*e.args[0], 0);
        out << ')';
        return;
      case ExprKind::Call: {
        out << e.name << '(';
        for (size_t k = 0; k < e.args.size(); ++k) {
          if (k) out << ", ";
          expr(*e.args[k], 0);
        }
        out << ')';
        return;
      }
      case ExprKind::Read: out << "read()"; return;
      case ExprKind::Forall:
        out << "forall " << e.name << ". ";
        expr(*e.args[0], 0);
        return;
      case ExprKind::Result: out << "\\result"; return;
      case ExprKind::Old: out << "\\old(" << e.name << ')'; return;
    }
  }

  void indent(int n) {
    for (int k = 0; k < n; ++k) out << "  ";
  }

  void stmt(const Stmt& st, int depth) {
    indent(depth);
    switch (st.kind) {
      case StmtKind::VarDecl:
        out << "var " << st.name << ": " << liss::logic::sort_name(st.decl_type) << " := ";
        expr(*st.e1, 0);
        out << ";\n";
        return;
      case StmtKind::Assign:
        out << st.name << " := ";
        expr(*st.e1, 0);
        out << ";\n";
        return;
      case StmtKind::VecStore:
        out << st.name << '[';
        expr(*st.e1, 0);
        out << "] := ";
        expr(*st.e2, 0);
        out << ";\n";
        return;
      case StmtKind::If:
        out << "if ";
        expr(*st.e1, 0);
        out << " {\n";
        for (const auto& s : st.body) stmt(*s, depth + 1);
        indent(depth);
        out << '}';
        if (!st.else_body.empty()) {
          out << " else {\n";
          for (const auto& s : st.else_body) stmt(*s, depth + 1);
          indent(depth);
          out << '}';
        }
        out << '\n';
        return;
      case StmtKind::While:
        out << "while ";
        expr(*st.e1, 0);
        out << " invariant ";
        expr(*st.invariant, 0);
        out << " {\n";
        for (const auto& s : st.body) stmt(*s, depth + 1);
        indent(depth);
        out << "}\n";
        return;
      case StmtKind::Assert:
        out << "assert ";
        expr(*st.e1, 0);
        out << ";\n";
        return;
      case StmtKind::Return:
        out << "return";
        if (st.e1) {
          out << ' ';
          expr(*st.e1, 0);
        }
        out << ";\n";
        return;
      case StmtKind::Print:
        out << "print ";
        expr(*st.e1, 0);
        out << ";\n";
        return;
    }
  }
};

}  // namespace

std::string pretty_print(const SourceProgram& p) {
  Printer pr;
  for (size_t fi = 0; fi < p.functions.size(); ++fi) {
    const auto& fn = p.functions[fi];
    if (fi) pr.out << '\n';
    pr.out << "fun " << fn.name << '(';
    for (size_t k = 0; k < fn.params.size(); ++k) {
      if (k) pr.out << ", ";
      pr.out << fn.params[k].first << ": " << liss::logic::sort_name(fn.params[k].second);
    }
    pr.out << ')';
    if (fn.ret) pr.out << ": " << liss::logic::sort_name(*fn.ret);
    pr.out << '\n';
    if (fn.requires_e) {
      pr.out << "  requires ";
      pr.expr(*fn.requires_e, 0);
      pr.out << '\n';
    }
    if (fn.ensures_e) {
      pr.out << "  ensures ";
      pr.expr(*fn.ensures_e, 0);
      pr.out << '\n';
    }
    pr.out << "{\n";
    for (const auto& s : fn.body) pr.stmt(*s, 1);
    pr.out << "}\n";
  }
  return pr.out.str();
}

}  // namespace liss::lang
