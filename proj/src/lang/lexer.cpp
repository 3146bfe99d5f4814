// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0

#include "src/lang/lexer.hpp"

#include <cctype>

namespace liss::lang {

namespace {

const std::map<std::string, TokKind>& keywords() {
  static const std::map<std::string, TokKind> kw = {
      {"fun", TokKind::KwFun},           {"var", TokKind::KwVar},
      {"if", TokKind::KwIf},             {"else", TokKind::KwElse},
      {"while", TokKind::KwWhile},       {"invariant", TokKind::KwInvariant},
      {"requires", TokKind::KwRequires}, {"ensures", TokKind::KwEnsures},
      {"assert", TokKind::KwAssert},     {"return", TokKind::KwReturn},
      {"print", TokKind::KwPrint},       {"forall", TokKind::KwForall},
      {"true", TokKind::KwTrue},         {"false", TokKind::KwFalse},
      {"int", TokKind::KwInt},           {"bool", TokKind::KwBool},
      {"set", TokKind::KwSet},           {"vec", TokKind::KwVec},
      {"in", TokKind::KwIn},             {"subset", TokKind::KwSubset},
      {"union", TokKind::KwUnion},       {"inter", TokKind::KwInter},
      {"diff", TokKind::KwDiff},         {"div", TokKind::KwDiv},
      {"mod", TokKind::KwMod},           {"and", TokKind::KwAnd},
      {"or", TokKind::KwOr},             {"not", TokKind::KwNot},
      {"read", TokKind::KwRead},         {"newvec", TokKind::KwNewvec},
      {"len", TokKind::KwLen},           {"card", TokKind::KwCard},
  };
  return kw;
}

}  // namespace

const char* token_name(TokKind k) {
  switch (k) {
    case TokKind::Ident: return "identifier";
    case TokKind::IntLit: return "integer";
    case TokKind::Assign: return "':='";
    case TokKind::Eq: return "'='";
    case TokKind::Ne: return "'!='";
    case TokKind::Lt: return "'<'";
    case TokKind::Le: return "'<='";
    case TokKind::Gt: return "'>'";
    case TokKind::Ge: return "'>='";
    case TokKind::Plus: return "'+'";
    case TokKind::Minus: return "'-'";
    case TokKind::Star: return "'*'";
    case TokKind::LParen: return "'('";
    case TokKind::RParen: return "')'";
    case TokKind::LBrace: return "'{'";
    case TokKind::RBrace: return "'}'";
    case TokKind::LBracket: return "'['";
    case TokKind::RBracket: return "']'";
    case TokKind::Comma: return "','";
    case TokKind::Semi: return "';'";
    case TokKind::Colon: return "':'";
    case TokKind::Dot: return "'.'";
    case TokKind::Implies: return "'==>'";
    case TokKind::IffOp: return "'<==>'";
    case TokKind::ResultTok: return "'\\result'";
    case TokKind::OldTok: return "'\\old'";
    case TokKind::Eof: return "end of input";
    default: return "keyword";
  }
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t p = 0;
  auto loc = [&] { return Location{line, col}; };
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (text[p + k] == '\n') { ++line; col = 1; }
      else ++col;
    }
    p += n;
  };

  while (p < text.size()) {
    char c = text[p];
    if (c == '\n' || std::isspace((unsigned char)c)) { advance(1); continue; }
    if (c == '/' && p + 1 < text.size() && text[p + 1] == '/') {
      while (p < text.size() && text[p] != '\n') advance(1);
      continue;
    }
    Token t;
    t.loc = loc();
    if (std::isdigit((unsigned char)c)) {
      size_t start = p;
      while (p < text.size() && std::isdigit((unsigned char)text[p])) advance(1);
      t.kind = TokKind::IntLit;
      t.text = text.substr(start, p - start);
      t.num = std::stoll(t.text);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t start = p;
      while (p < text.size() && (std::isalnum((unsigned char)text[p]) || text[p] == '_'))
        advance(1);
      t.text = text.substr(start, p - start);
      auto kw = keywords().find(t.text);
      t.kind = kw == keywords().end() ? TokKind::Ident : kw->second;
      out.push_back(std::move(t));
      continue;
    }
    if (c == '\\') {
      if (text.compare(p, 7, "\\result") == 0) {
        t.kind = TokKind::ResultTok;
        advance(7);
        out.push_back(std::move(t));
        continue;
      }
      if (text.compare(p, 4, "\\old") == 0) {
        t.kind = TokKind::OldTok;
        advance(4);
        out.push_back(std::move(t));
        continue;
      }
      throw SyntaxError(t.loc, "unknown escape; expected \\result or \\old");
    }
    auto two = text.substr(p, 2);
    auto three = text.substr(p, 3);
    if (text.compare(p, 4, "<==>") == 0) { t.kind = TokKind::IffOp; advance(4); }
    else if (three == "==>") { t.kind = TokKind::Implies; advance(3); }
    else if (two == ":=") { t.kind = TokKind::Assign; advance(2); }
    else if (two == "<=") { t.kind = TokKind::Le; advance(2); }
    else if (two == ">=") { t.kind = TokKind::Ge; advance(2); }
    else if (two == "!=") { t.kind = TokKind::Ne; advance(2); }
    else {
      switch (c) {
        case '=': t.kind = TokKind::Eq; break;
        case '<': t.kind = TokKind::Lt; break;
        case '>': t.kind = TokKind::Gt; break;
        case '+': t.kind = TokKind::Plus; break;
        case '-': t.kind = TokKind::Minus; break;
        case '*': t.kind = TokKind::Star; break;
        case '(': t.kind = TokKind::LParen; break;
        case ')': t.kind = TokKind::RParen; break;
        case '{': t.kind = TokKind::LBrace; break;
        case '}': t.kind = TokKind::RBrace; break;
        case '[': t.kind = TokKind::LBracket; break;
        case ']': t.kind = TokKind::RBracket; break;
        case ',': t.kind = TokKind::Comma; break;
        case ';': t.kind = TokKind::Semi; break;
        case ':': t.kind = TokKind::Colon; break;
        case '.': t.kind = TokKind::Dot; break;
        default:
          throw SyntaxError(t.loc, std::string("unexpected character '") + c + "'");
      }
      advance(1);
    }
    out.push_back(std::move(t));
  }
  Token eof;
  eof.kind = TokKind::Eof;
  eof.loc = loc();
  out.push_back(eof);
  return out;
}

}  // namespace liss::lang
