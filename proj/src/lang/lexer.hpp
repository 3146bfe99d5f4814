// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "liss/lang.hpp"

namespace liss::lang {

enum class TokKind {
  Ident, IntLit,
  KwFun, KwVar, KwIf, KwElse, KwWhile, KwInvariant, KwRequires, KwEnsures,
  KwAssert, KwReturn, KwPrint, KwForall, KwTrue, KwFalse,
  KwInt, KwBool, KwSet, KwVec,
  KwIn, KwSubset, KwUnion, KwInter, KwDiff, KwDiv, KwMod, KwAnd, KwOr, KwNot,
  KwRead, KwNewvec, KwLen, KwCard,
  Assign, Eq, Ne, Lt, Le, Gt, Ge,
  Plus, Minus, Star,
  LParen, RParen, LBrace, RBrace, LBracket, RBracket,
  Comma, Semi, Colon, Dot,
  Implies, IffOp, ResultTok, OldTok,
  Eof,
};

struct Token {
  TokKind kind = TokKind::Eof;
  Location loc;
  std::string text;
  long long num = 0;
};

const char* token_name(TokKind k);
std::vector<Token> lex(const std::string& text);  // throws SyntaxError

}  // namespace liss::lang
