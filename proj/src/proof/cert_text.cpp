// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0
//
// Textual certificate format (.prf): parenthesized prefix notation with
// embedded formulas/terms in canonical text.
//
//   (hyp N) (andI c c) (andE1 c) (andE2 c) (orI1 c F) (orI2 c F)
//   (orE c c c) (impI F c) (impE c c) (notI F c) (contra c)
//   (forallI x c) (forallE c T) (refl T) (rewrite c c ((0 1) (1 0 2)))
//   (eval F) (lia (1 2/3) c ...) (axiom id ((x T) (A T) ...))

#include "liss/proof.hpp"

#include <cctype>
#include <sstream>

namespace liss::proof {

using namespace liss::logic;

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_cert(std::ostringstream& out, const CertPtr& c) {
  switch (c->kind) {
    case CertKind::Hyp: out << "(hyp " << c->hyp_index << ")"; return;
    case CertKind::AndI:
      out << "(andI ";
      print_cert(out, c->kids[0]);
      out << ' ';
      print_cert(out, c->kids[1]);
      out << ')';
      return;
    case CertKind::AndE1:
    case CertKind::AndE2:
      out << (c->kind == CertKind::AndE1 ? "(andE1 " : "(andE2 ");
      print_cert(out, c->kids[0]);
      out << ')';
      return;
    case CertKind::OrI1:
    case CertKind::OrI2:
      out << (c->kind == CertKind::OrI1 ? "(orI1 " : "(orI2 ");
      print_cert(out, c->kids[0]);
      out << ' ' << canonical_text(c->formula) << ')';
      return;
    case CertKind::OrE:
      out << "(orE ";
      print_cert(out, c->kids[0]);
      out << ' ';
      print_cert(out, c->kids[1]);
      out << ' ';
      print_cert(out, c->kids[2]);
      out << ')';
      return;
    case CertKind::ImpI:
      out << "(impI " << canonical_text(c->formula) << ' ';
      print_cert(out, c->kids[0]);
      out << ')';
      return;
    case CertKind::ImpE:
      out << "(impE ";
      print_cert(out, c->kids[0]);
      out << ' ';
      print_cert(out, c->kids[1]);
      out << ')';
      return;
    case CertKind::NotI:
      out << "(notI " << canonical_text(c->formula) << ' ';
      print_cert(out, c->kids[0]);
      out << ')';
      return;
    case CertKind::NotE:
      out << "(notE ";
      print_cert(out, c->kids[0]);
      out << ' ';
      print_cert(out, c->kids[1]);
      out << ')';
      return;
    case CertKind::Contra:
      out << "(contra ";
      print_cert(out, c->kids[0]);
      out << ')';
      return;
    case CertKind::ForallI:
      out << "(forallI " << c->var << ' ';
      print_cert(out, c->kids[0]);
      out << ')';
      return;
    case CertKind::ForallE:
      out << "(forallE ";
      print_cert(out, c->kids[0]);
      out << ' ' << canonical_term_text(c->term) << ')';
      return;
    case CertKind::Refl: out << "(refl " << canonical_term_text(c->term) << ')'; return;
    case CertKind::Rewrite: {
      out << "(rewrite ";
      print_cert(out, c->kids[0]);
      out << ' ';
      print_cert(out, c->kids[1]);
      out << " (";
      for (size_t k = 0; k < c->positions.size(); ++k) {
        if (k) out << ' ';
        out << '(';
        for (size_t j = 0; j < c->positions[k].size(); ++j) {
          if (j) out << ' ';
          out << c->positions[k][j];
        }
        out << ')';
      }
      out << "))";
      return;
    }
    case CertKind::Eval: out << "(eval " << canonical_text(c->formula) << ')'; return;
    case CertKind::Lia: {
      out << "(lia (";
      for (size_t k = 0; k < c->coeffs.size(); ++k) {
        if (k) out << ' ';
        out << rat_text(c->coeffs[k]);
      }
      out << ')';
      for (const auto& kid : c->kids) {
        out << ' ';
        print_cert(out, kid);
      }
      out << ')';
      return;
    }
    case CertKind::Axiom: {
      out << "(axiom " << c->schema_id << " (";
      bool first = true;
      for (const auto& [name, term] : c->inst) {
        if (!first) out << ' ';
        first = false;
        out << '(' << name << ' ' << canonical_term_text(term) << ')';
      }
      out << "))";
      return;
    }
  }
}

}  // namespace

std::string certificate_text(const CertPtr& c) {
  std::ostringstream out;
  print_cert(out, c);
  return out.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Cursor {
  const std::string& s;
  size_t p = 0;
  const std::map<std::string, Sort>& hints;

  void skip_ws() {
    while (p < s.size() && std::isspace((unsigned char)s[p])) ++p;
  }

  [[noreturn]] void err(const std::string& what) { throw CertSyntaxError(p, what); }

  void expect(char ch) {
    skip_ws();
    if (p >= s.size() || s[p] != ch) err(std::string("expected '") + ch + "'");
    ++p;
  }

  bool peek(char ch) {
    skip_ws();
    return p < s.size() && s[p] == ch;
  }

  std::string symbol() {
    skip_ws();
    size_t start = p;
    while (p < s.size() && !std::isspace((unsigned char)s[p]) && s[p] != '(' && s[p] != ')') ++p;
    if (p == start) err("expected a symbol");
    return s.substr(start, p - start);
  }

  // Extracts one balanced s-expression (or bare atom) as raw text.
  std::string balanced() {
    skip_ws();
    if (p >= s.size()) err("unexpected end of certificate");
    size_t start = p;
    if (s[p] != '(') return symbol();
    int depth = 0;
    while (p < s.size()) {
      if (s[p] == '(') ++depth;
      if (s[p] == ')') {
        --depth;
        if (depth == 0) { ++p; return s.substr(start, p - start); }
      }
      ++p;
    }
    err("unbalanced parentheses");
  }

  FormulaPtr formula() {
    std::string text = balanced();
    try {
      return parse_formula(text, hints);
    } catch (const FormulaSyntaxError& e) {
      err(std::string("embedded formula: ") + e.what());
    }
  }

  TermPtr term() {
    std::string text = balanced();
    try {
      return parse_term(text, hints);
    } catch (const FormulaSyntaxError& e) {
      err(std::string("embedded term: ") + e.what());
    }
  }

  long long integer() {
    std::string t = symbol();
    try {
      size_t used = 0;
      long long v = std::stoll(t, &used);
      if (used != t.size()) err("bad integer " + t);
      return v;
    } catch (const CertSyntaxError&) {
      throw;
    } catch (...) {
      err("bad integer " + t);
    }
  }

  Rational rational() {
    std::string t = symbol();
    size_t slash = t.find('/');
    try {
      if (slash == std::string::npos) return Rational::of(std::stoll(t));
      long long n = std::stoll(t.substr(0, slash));
      long long d = std::stoll(t.substr(slash + 1));
      return Rational::make(n, d);
    } catch (const CheckOverflow&) {
      err("bad rational " + t);
    } catch (...) {
      err("bad rational " + t);
    }
  }

  CertPtr cert(int depth) {
    if (depth > 2000) err("certificate nests too deeply");
    expect('(');
    std::string tag = symbol();
    CertPtr result;
    if (tag == "hyp") {
      long long n = integer();
      if (n < 0) err("negative hypothesis index");
      result = c_hyp((size_t)n);
    } else if (tag == "andI") {
      auto a = cert(depth + 1);
      auto b = cert(depth + 1);
      result = c_andI(a, b);
    } else if (tag == "andE1") {
      result = c_andE1(cert(depth + 1));
    } else if (tag == "andE2") {
      result = c_andE2(cert(depth + 1));
    } else if (tag == "orI1") {
      auto a = cert(depth + 1);
      result = c_orI1(a, formula());
    } else if (tag == "orI2") {
      auto a = cert(depth + 1);
      result = c_orI2(a, formula());
    } else if (tag == "orE") {
      auto d = cert(depth + 1);
      auto l = cert(depth + 1);
      auto r = cert(depth + 1);
      result = c_orE(d, l, r);
    } else if (tag == "impI") {
      auto f = formula();
      result = c_impI(f, cert(depth + 1));
    } else if (tag == "impE") {
      auto i = cert(depth + 1);
      auto a = cert(depth + 1);
      result = c_impE(i, a);
    } else if (tag == "notI") {
      auto f = formula();
      result = c_notI(f, cert(depth + 1));
    } else if (tag == "notE") {
      auto n = cert(depth + 1);
      auto a = cert(depth + 1);
      result = c_notE(n, a);
    } else if (tag == "contra") {
      result = c_contra(cert(depth + 1));
    } else if (tag == "forallI") {
      std::string v = symbol();
      result = c_forallI(v, cert(depth + 1));
    } else if (tag == "forallE") {
      auto a = cert(depth + 1);
      result = c_forallE(a, term());
    } else if (tag == "refl") {
      result = c_refl(term());
    } else if (tag == "rewrite") {
      auto eq = cert(depth + 1);
      auto tgt = cert(depth + 1);
      expect('(');
      std::vector<std::vector<int>> positions;
      while (!peek(')')) {
        expect('(');
        std::vector<int> pos;
        while (!peek(')')) pos.push_back((int)integer());
        expect(')');
        positions.push_back(std::move(pos));
      }
      expect(')');
      result = c_rewrite(eq, tgt, std::move(positions));
    } else if (tag == "eval") {
      result = c_eval(formula());
    } else if (tag == "lia") {
      expect('(');
      std::vector<Rational> coeffs;
      while (!peek(')')) coeffs.push_back(rational());
      expect(')');
      std::vector<CertPtr> kids;
      while (!peek(')')) kids.push_back(cert(depth + 1));
      result = c_lia(std::move(coeffs), std::move(kids));
    } else if (tag == "axiom") {
      std::string id = symbol();
      expect('(');
      std::map<std::string, TermPtr> inst;
      while (!peek(')')) {
        expect('(');
        std::string name = symbol();
        inst[name] = term();
        expect(')');
      }
      expect(')');
      result = c_axiom(std::move(id), std::move(inst));
    } else {
      err("unknown certificate tag " + tag);
    }
    expect(')');
    return result;
  }
};

}  // namespace

CertPtr parse_certificate(const std::string& text, const std::map<std::string, Sort>& sort_hints) {
  Cursor cur{text, 0, sort_hints};
  CertPtr c = cur.cert(0);
  cur.skip_ws();
  if (cur.p != text.size()) throw CertSyntaxError(cur.p, "trailing input after certificate");
  return c;
}

// ---------------------------------------------------------------------------
// Renaming (certificate translation)

CertPtr rename_certificate(const CertPtr& c, const std::map<std::string, std::string>& m) {
  auto n = std::make_shared<Certificate>(*c);
  if (n->formula) n->formula = rename_free(n->formula, m);
  if (n->term) {
    std::map<std::string, TermPtr> tm;
    std::map<std::string, Sort> fv;
    collect_free_vars(n->term, fv);
    for (const auto& [from, to] : m) {
      auto it = fv.find(from);
      if (it != fv.end()) tm.emplace(from, t_var(to, it->second));
    }
    if (!tm.empty()) n->term = subst_parallel_term(n->term, tm);
  }
  for (auto& [name, t] : n->inst) {
    std::map<std::string, TermPtr> tm;
    std::map<std::string, Sort> fv;
    collect_free_vars(t, fv);
    for (const auto& [from, to] : m) {
      auto it = fv.find(from);
      if (it != fv.end()) tm.emplace(from, t_var(to, it->second));
    }
    if (!tm.empty()) t = subst_parallel_term(t, tm);
  }
  for (auto& kid : n->kids) kid = rename_certificate(kid, m);
  return n;
}

}  // namespace liss::proof
