// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0
//
// Recursive-descent parser. Precedence, loosest first:
//   <==>  |  ==>(right)  |  or  |  and  |  not  |  comparisons (non-assoc)
//   | + - union inter diff  |  * div mod  |  unary -  |  postfix [i]
// Annotation-only forms (forall, ==>/<==>, subset, \result, \old) parse
// everywhere and are rejected by the type checker in program positions.

#include "src/lang/lexer.hpp"

namespace liss::lang {

using logic::Sort;

namespace {

struct Parser {
  std::vector<Token> toks;
  size_t p = 0;

  const Token& cur() const { return toks[p]; }
  const Token& next() { return toks[p++]; }
  bool at(TokKind k) const { return cur().kind == k; }

  bool accept(TokKind k) {
    if (!at(k)) return false;
    ++p;
    return true;
  }

  Token expect(TokKind k, const char* what) {
    if (!at(k))
      throw SyntaxError(cur().loc,
                        std::string("expected ") + what + ", found " +
                            (cur().kind == TokKind::Ident || cur().kind == TokKind::IntLit
                                 ? "'" + cur().text + "'"
                                 : token_name(cur().kind)),
                        what);
    return next();
  }

  ExprPtr mk(ExprKind k, Location loc) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->loc = loc;
    return e;
  }

  ExprPtr binary(ExprKind k, Location loc, ExprPtr a, ExprPtr b) {
    auto e = mk(k, loc);
    e->args = {std::move(a), std::move(b)};
    return e;
  }

  std::optional<Sort> sort_kw() {
    if (accept(TokKind::KwInt)) return Sort::Int;
    if (accept(TokKind::KwBool)) return Sort::Bool;
    if (accept(TokKind::KwSet)) return Sort::Set;
    if (accept(TokKind::KwVec)) return Sort::Vec;
    return std::nullopt;
  }

  Sort expect_sort() {
    auto s = sort_kw();
    if (!s) throw SyntaxError(cur().loc, "expected a type (int, bool, set, vec)", "type");
    return *s;
  }

  // --- expressions ---------------------------------------------------------

  ExprPtr expr() { return iff_expr(); }

  ExprPtr iff_expr() {
    ExprPtr a = imp_expr();
    while (at(TokKind::IffOp)) {
      Location loc = next().loc;
      a = binary(ExprKind::Iff, loc, a, imp_expr());
    }
    return a;
  }

  ExprPtr imp_expr() {
    ExprPtr a = or_expr();
    if (at(TokKind::Implies)) {
      Location loc = next().loc;
      return binary(ExprKind::Imp, loc, a, imp_expr());  // right associative
    }
    return a;
  }

  ExprPtr or_expr() {
    ExprPtr a = and_expr();
    while (at(TokKind::KwOr)) {
      Location loc = next().loc;
      a = binary(ExprKind::Or, loc, a, and_expr());
    }
    return a;
  }

  ExprPtr and_expr() {
    ExprPtr a = not_expr();
    while (at(TokKind::KwAnd)) {
      Location loc = next().loc;
      a = binary(ExprKind::And, loc, a, not_expr());
    }
    return a;
  }

  ExprPtr not_expr() {
    if (at(TokKind::KwNot)) {
      Location loc = next().loc;
      auto e = mk(ExprKind::Not, loc);
      e->args = {not_expr()};
      return e;
    }
    if (at(TokKind::KwForall)) {
      Location loc = next().loc;
      Token name = expect(TokKind::Ident, "quantified variable");
      expect(TokKind::Dot, "'.'");
      auto e = mk(ExprKind::Forall, loc);
      e->name = name.text;
      e->args = {iff_expr()};
      return e;
    }
    return cmp_expr();
  }

  ExprPtr cmp_expr() {
    ExprPtr a = add_expr();
    Location loc = cur().loc;
    switch (cur().kind) {
      case TokKind::Eq: next(); return binary(ExprKind::Eq, loc, a, add_expr());
      case TokKind::Ne: {
        next();
        auto eq = binary(ExprKind::Eq, loc, a, add_expr());
        auto no = mk(ExprKind::Not, loc);
        no->args = {eq};
        return no;
      }
      case TokKind::Lt: next(); return binary(ExprKind::Lt, loc, a, add_expr());
      case TokKind::Le: next(); return binary(ExprKind::Le, loc, a, add_expr());
      case TokKind::Gt: {
        next();
        ExprPtr b = add_expr();
        return binary(ExprKind::Lt, loc, b, a);
      }
      case TokKind::Ge: {
        next();
        ExprPtr b = add_expr();
        return binary(ExprKind::Le, loc, b, a);
      }
      case TokKind::KwIn: next(); return binary(ExprKind::Mem, loc, a, add_expr());
      case TokKind::KwSubset: next(); return binary(ExprKind::Subset, loc, a, add_expr());
      default: return a;
    }
  }

  ExprPtr add_expr() {
    ExprPtr a = mul_expr();
    while (true) {
      Location loc = cur().loc;
      if (accept(TokKind::Plus)) a = binary(ExprKind::Add, loc, a, mul_expr());
      else if (accept(TokKind::Minus)) a = binary(ExprKind::Sub, loc, a, mul_expr());
      else if (accept(TokKind::KwUnion)) a = binary(ExprKind::Union, loc, a, mul_expr());
      else if (accept(TokKind::KwInter)) a = binary(ExprKind::Inter, loc, a, mul_expr());
      else if (accept(TokKind::KwDiff)) a = binary(ExprKind::Diff, loc, a, mul_expr());
      else return a;
    }
  }

  ExprPtr mul_expr() {
    ExprPtr a = unary_expr();
    while (true) {
      Location loc = cur().loc;
      if (accept(TokKind::Star)) a = binary(ExprKind::Mul, loc, a, unary_expr());
      else if (accept(TokKind::KwDiv)) a = binary(ExprKind::Div, loc, a, unary_expr());
      else if (accept(TokKind::KwMod)) a = binary(ExprKind::Mod, loc, a, unary_expr());
      else return a;
    }
  }

  ExprPtr unary_expr() {
    if (at(TokKind::Minus)) {
      Location loc = next().loc;
      ExprPtr e = unary_expr();
      if (e->kind == ExprKind::IntLit) {
        e->num = -e->num;
        return e;
      }
      auto zero = mk(ExprKind::IntLit, loc);
      zero->num = 0;
      return binary(ExprKind::Sub, loc, zero, e);
    }
    return postfix_expr();
  }

  ExprPtr postfix_expr() {
    ExprPtr a = primary_expr();
    while (at(TokKind::LBracket)) {
      Location loc = next().loc;
      ExprPtr i = expr();
      expect(TokKind::RBracket, "']'");
      a = binary(ExprKind::Idx, loc, a, i);
    }
    return a;
  }

  ExprPtr primary_expr() {
    Location loc = cur().loc;
    switch (cur().kind) {
      case TokKind::IntLit: {
        auto e = mk(ExprKind::IntLit, loc);
        e->num = next().num;
        return e;
      }
      case TokKind::KwTrue: next(); { auto e = mk(ExprKind::BoolLit, loc); e->bval = true; return e; }
      case TokKind::KwFalse: next(); { auto e = mk(ExprKind::BoolLit, loc); e->bval = false; return e; }
      case TokKind::ResultTok: next(); return mk(ExprKind::Result, loc);
      case TokKind::OldTok: {
        next();
        expect(TokKind::LParen, "'('");
        Token name = expect(TokKind::Ident, "variable");
        expect(TokKind::RParen, "')'");
        auto e = mk(ExprKind::Old, loc);
        e->name = name.text;
        return e;
      }
      case TokKind::KwRead: {
        next();
        expect(TokKind::LParen, "'('");
        expect(TokKind::RParen, "')'");
        return mk(ExprKind::Read, loc);
      }
      case TokKind::KwNewvec: {
        next();
        expect(TokKind::LParen, "'('");
        ExprPtr n = expr();
        expect(TokKind::RParen, "')'");
        auto e = mk(ExprKind::NewVec, loc);
        e->args = {n};
        return e;
      }
      case TokKind::KwLen: {
        next();
        expect(TokKind::LParen, "'('");
        ExprPtr v = expr();
        expect(TokKind::RParen, "')'");
        auto e = mk(ExprKind::Len, loc);
        e->args = {v};
        return e;
      }
      case TokKind::KwCard: {
        next();
        expect(TokKind::LParen, "'('");
        ExprPtr s = expr();
        expect(TokKind::RParen, "')'");
        auto e = mk(ExprKind::Card, loc);
        e->args = {s};
        return e;
      }
      case TokKind::LBrace: {
        next();
        auto e = mk(ExprKind::SetLit, loc);
        if (!accept(TokKind::RBrace)) {
          e->args.push_back(expr());
          while (accept(TokKind::Comma)) e->args.push_back(expr());
          expect(TokKind::RBrace, "'}'");
        }
        return e;
      }
      case TokKind::LParen: {
        next();
        ExprPtr e = expr();
        expect(TokKind::RParen, "')'");
        return e;
      }
      case TokKind::Ident: {
        Token name = next();
        if (at(TokKind::LParen)) {
          next();
          auto e = mk(ExprKind::Call, loc);
          e->name = name.text;
          if (!accept(TokKind::RParen)) {
            e->args.push_back(expr());
            while (accept(TokKind::Comma)) e->args.push_back(expr());
            expect(TokKind::RParen, "')'");
          }
          return e;
        }
        auto e = mk(ExprKind::VarRef, loc);
        e->name = name.text;
        return e;
      }
      default:
        throw SyntaxError(loc,
                          std::string("expected an expression, found ") + token_name(cur().kind),
                          "expression");
    }
  }

  // --- statements ----------------------------------------------------------

  StmtPtr mkstmt(StmtKind k, Location loc) {
    auto s = std::make_shared<Stmt>();
    s->kind = k;
    s->loc = loc;
    return s;
  }

  std::vector<StmtPtr> block() {
    expect(TokKind::LBrace, "'{'");
    std::vector<StmtPtr> out;
    while (!accept(TokKind::RBrace)) out.push_back(stmt());
    return out;
  }

  StmtPtr stmt() {
    Location loc = cur().loc;
    switch (cur().kind) {
      case TokKind::KwVar: {
        next();
        Token name = expect(TokKind::Ident, "variable name");
        expect(TokKind::Colon, "':'");
        Sort s = expect_sort();
        expect(TokKind::Assign, "':='");
        ExprPtr init = expr();
        expect(TokKind::Semi, "';'");
        auto st = mkstmt(StmtKind::VarDecl, loc);
        st->name = name.text;
        st->decl_type = s;
        st->e1 = init;
        return st;
      }
      case TokKind::KwIf: {
        next();
        ExprPtr cond = expr();
        auto st = mkstmt(StmtKind::If, loc);
        st->e1 = cond;
        st->body = block();
        if (accept(TokKind::KwElse)) st->else_body = block();
        return st;
      }
      case TokKind::KwWhile: {
        next();
        ExprPtr cond = expr();
        expect(TokKind::KwInvariant, "'invariant'");
        ExprPtr inv = expr();
        auto st = mkstmt(StmtKind::While, loc);
        st->e1 = cond;
        st->invariant = inv;
        st->body = block();
        return st;
      }
      case TokKind::KwAssert: {
        next();
        ExprPtr e = expr();
        expect(TokKind::Semi, "';'");
        auto st = mkstmt(StmtKind::Assert, loc);
        st->e1 = e;
        return st;
      }
      case TokKind::KwReturn: {
        next();
        auto st = mkstmt(StmtKind::Return, loc);
        if (!accept(TokKind::Semi)) {
          st->e1 = expr();
          expect(TokKind::Semi, "';'");
        }
        return st;
      }
      case TokKind::KwPrint: {
        next();
        ExprPtr e = expr();
        expect(TokKind::Semi, "';'");
        auto st = mkstmt(StmtKind::Print, loc);
        st->e1 = e;
        return st;
      }
      case TokKind::Ident: {
        Token name = next();
        if (at(TokKind::LBracket)) {
          next();
          ExprPtr idx = expr();
          expect(TokKind::RBracket, "']'");
          expect(TokKind::Assign, "':='");
          ExprPtr val = expr();
          expect(TokKind::Semi, "';'");
          auto st = mkstmt(StmtKind::VecStore, loc);
          st->name = name.text;
          st->e1 = idx;
          st->e2 = val;
          return st;
        }
        expect(TokKind::Assign, "':='");
        ExprPtr val = expr();
        expect(TokKind::Semi, "';'");
        auto st = mkstmt(StmtKind::Assign, loc);
        st->name = name.text;
        st->e1 = val;
        return st;
      }
      default:
        throw SyntaxError(loc, std::string("expected a statement, found ") + token_name(cur().kind),
                          "statement");
    }
  }

  FunctionDecl function() {
    FunctionDecl fn;
    fn.loc = expect(TokKind::KwFun, "'fun'").loc;
    fn.name = expect(TokKind::Ident, "function name").text;
    expect(TokKind::LParen, "'('");
    if (!accept(TokKind::RParen)) {
      do {
        Token pname = expect(TokKind::Ident, "parameter name");
        expect(TokKind::Colon, "':'");
        fn.params.emplace_back(pname.text, expect_sort());
      } while (accept(TokKind::Comma));
      expect(TokKind::RParen, "')'");
    }
    if (accept(TokKind::Colon)) fn.ret = expect_sort();
    while (true) {
      if (accept(TokKind::KwRequires)) fn.requires_e = expr();
      else if (accept(TokKind::KwEnsures)) fn.ensures_e = expr();
      else break;
    }
    fn.body = block();
    return fn;
  }

  SourceProgram program() {
    SourceProgram prog;
    while (!at(TokKind::Eof)) prog.functions.push_back(function());
    return prog;
  }
};

}  // namespace

SourceProgram parse_program(const std::string& text) {
  Parser parser{lex(text)};
  return parser.program();
}

}  // namespace liss::lang
