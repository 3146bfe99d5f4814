// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0
//
// .lbc assembly: one instruction per line (';' also separates), `label:`
// prefixes, pragmas #requires/#ensures/#invariant/#assert/#var with
// canonical formula text. A file without `fn` headers is a single
// parameterless `main`.

#include "liss/vm.hpp"

#include <cctype>
#include <sstream>

namespace liss::vm {

using namespace liss::logic;

namespace {

struct PendingFormula {
  enum class Kind { Requires, Ensures, Invariant, Assert } kind;
  std::string label;  // invariant
  int pc = 0;         // assert
  std::string text;
  int line = 0;
};

struct FnBuilder {
  BytecodeFunction fn;
  std::map<std::string, int> label_defs;          // label -> instruction index
  std::vector<std::pair<size_t, std::string>> fixups;  // instruction idx -> label
  std::vector<PendingFormula> pending;
  bool headerless = false;

  void finish(BytecodeModule& m) {
    // resolve jump labels
    for (auto& [idx, label] : fixups) {
      auto it = label_defs.find(label);
      if (it == label_defs.end())
        throw MalformedModule("undefined label " + label, fn.name);
      fn.code[idx].target = it->second;
    }
    if (headerless) {
      int max_slot = -1;
      for (const auto& ins : fn.code)
        if (ins.op == Opcode::LOAD || ins.op == Opcode::STORE)
          max_slot = std::max(max_slot, (int)ins.imm);
      fn.local_count = max_slot + 1;
      for (int s = 0; s <= max_slot; ++s) {
        fn.table.varmap[s] = "s" + std::to_string(s);
        fn.table.sortmap[s] = Sort::Int;
      }
    }
    // sort hints: slot names, ghosts, result
    std::map<std::string, Sort> hints;
    for (const auto& [slot, name] : fn.table.varmap) {
      auto s = fn.table.sortmap.count(slot) ? fn.table.sortmap.at(slot) : Sort::Int;
      Sort logical = s == Sort::Bool ? Sort::Int : s;  // bools are 0/1 in the logic
      hints[name] = logical;
      hints["old_" + name] = logical;
    }
    if (fn.ret) hints["result"] = *fn.ret == Sort::Bool ? Sort::Int : *fn.ret;

    auto parse_with = [&](const PendingFormula& p) -> FormulaPtr {
      try {
        return parse_formula(p.text, hints);
      } catch (const FormulaSyntaxError& e) {
        throw MalformedModule(std::string("bad formula in pragma (line ") +
                                  std::to_string(p.line) + "): " + e.what(),
                              fn.name);
      }
    };
    for (const auto& p : pending) {
      switch (p.kind) {
        case PendingFormula::Kind::Requires: fn.table.requires_f = parse_with(p); break;
        case PendingFormula::Kind::Ensures: fn.table.ensures_f = parse_with(p); break;
        case PendingFormula::Kind::Invariant: {
          auto it = label_defs.find(p.label);
          if (it == label_defs.end())
            throw MalformedModule("invariant names undefined label " + p.label, fn.name);
          fn.table.invariants[it->second] = parse_with(p);
          break;
        }
        case PendingFormula::Kind::Assert:
          if (p.pc < 0 || (size_t)p.pc > fn.code.size())
            throw MalformedModule("assert pragma at bad pc " + std::to_string(p.pc), fn.name);
          fn.table.asserts[p.pc] = parse_with(p);
          break;
      }
    }
    if (!fn.table.requires_f) fn.table.requires_f = f_true();
    if (!fn.table.ensures_f) fn.table.ensures_f = f_true();
    m.functions.push_back(std::move(fn));
  }
};

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::optional<Opcode> opcode_from(const std::string& s) {
  static const std::map<std::string, Opcode> names = [] {
    std::map<std::string, Opcode> m;
    for (int k = 0; k <= (int)Opcode::HALT; ++k)
      m[opcode_name((Opcode)k)] = (Opcode)k;
    return m;
  }();
  auto it = names.find(s);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

std::optional<Sort> sort_from(const std::string& s) {
  if (s == "int") return Sort::Int;
  if (s == "bool") return Sort::Bool;
  if (s == "set") return Sort::Set;
  if (s == "vec") return Sort::Vec;
  return std::nullopt;
}

long long to_int(const std::string& s, int line) {
  try {
    size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (...) {
    throw MalformedModule("bad integer operand '" + s + "'", "line " + std::to_string(line));
  }
}

}  // namespace

BytecodeModule parse_assembly(const std::string& text) {
  BytecodeModule m;
  std::optional<FnBuilder> cur;

  auto ensure_fn = [&]() -> FnBuilder& {
    if (!cur) {
      cur.emplace();
      cur->fn.name = "main";
      cur->headerless = true;
    }
    return *cur;
  };

  int line_no = 0;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    // ';' separates instructions within a line
    std::vector<std::string> pieces;
    size_t first_ch = raw.find_first_not_of(" \t\r");
    if (first_ch != std::string::npos && raw[first_ch] == '#') {
      pieces.push_back(raw);  // pragmas may contain formulas; never split them
    } else {
      std::string acc;
      for (char ch : raw) {
        if (ch == ';') { pieces.push_back(acc); acc.clear(); }
        else acc += ch;
      }
      pieces.push_back(acc);
    }

    for (std::string line : pieces) {
      size_t a = line.find_first_not_of(" \t\r");
      if (a == std::string::npos) continue;
      size_t b = line.find_last_not_of(" \t\r");
      line = line.substr(a, b - a + 1);
      if (line.empty() || line.rfind("//", 0) == 0) continue;

      if (line.rfind("fn ", 0) == 0) {
        if (cur) {
          if (cur->headerless)
            throw MalformedModule("fn header after headerless instructions",
                                  "line " + std::to_string(line_no));
          cur->finish(m);
          cur.reset();
        }
        auto fields = split_fields(line);
        // fn NAME params N locals M returns T
        if (fields.size() != 8 || fields[2] != "params" || fields[4] != "locals" ||
            fields[6] != "returns")
          throw MalformedModule("bad fn header", "line " + std::to_string(line_no));
        cur.emplace();
        cur->fn.name = fields[1];
        cur->fn.param_count = (int)to_int(fields[3], line_no);
        cur->fn.local_count = (int)to_int(fields[5], line_no);
        if (cur->fn.param_count < 0 || cur->fn.local_count < 0)
          throw MalformedModule("negative slot counts", "line " + std::to_string(line_no));
        if (fields[7] == "none")
          cur->fn.ret = std::nullopt;
        else if (auto s = sort_from(fields[7]))
          cur->fn.ret = s;
        else
          throw MalformedModule("bad return sort " + fields[7], "line " + std::to_string(line_no));
        continue;
      }
      if (line == "end") {
        if (!cur || cur->headerless)
          throw MalformedModule("stray 'end'", "line " + std::to_string(line_no));
        cur->finish(m);
        cur.reset();
        continue;
      }
      if (line[0] == '#') {
        FnBuilder& fb = ensure_fn();
        PendingFormula p;
        p.line = line_no;
        if (line.rfind("#requires ", 0) == 0) {
          p.kind = PendingFormula::Kind::Requires;
          p.text = line.substr(10);
        } else if (line.rfind("#ensures ", 0) == 0) {
          p.kind = PendingFormula::Kind::Ensures;
          p.text = line.substr(9);
        } else if (line.rfind("#invariant ", 0) == 0) {
          p.kind = PendingFormula::Kind::Invariant;
          std::istringstream ps(line.substr(11));
          ps >> p.label;
          std::getline(ps, p.text);
        } else if (line.rfind("#assert ", 0) == 0) {
          p.kind = PendingFormula::Kind::Assert;
          std::istringstream ps(line.substr(8));
          std::string pc_s;
          ps >> pc_s;
          p.pc = (int)to_int(pc_s, line_no);
          std::getline(ps, p.text);
        } else if (line.rfind("#var ", 0) == 0) {
          auto fields = split_fields(line.substr(5));
          if (fields.size() != 3)
            throw MalformedModule("bad #var pragma", "line " + std::to_string(line_no));
          int slot = (int)to_int(fields[0], line_no);
          auto s = sort_from(fields[2]);
          if (!s) throw MalformedModule("bad sort in #var", "line " + std::to_string(line_no));
          fb.fn.table.varmap[slot] = fields[1];
          fb.fn.table.sortmap[slot] = *s;
          continue;
        } else {
          throw MalformedModule("unknown pragma", "line " + std::to_string(line_no));
        }
        // trim leading space from formula text
        size_t fs = p.text.find_first_not_of(" \t");
        if (fs == std::string::npos)
          throw MalformedModule("pragma missing formula", "line " + std::to_string(line_no));
        p.text = p.text.substr(fs);
        fb.pending.push_back(std::move(p));
        continue;
      }

      FnBuilder& fb = ensure_fn();
      // labels: "name:" possibly followed by an instruction on the same line
      while (true) {
        size_t colon = line.find(':');
        size_t sp = line.find_first_of(" \t");
        if (colon != std::string::npos && (sp == std::string::npos || colon < sp)) {
          std::string label = line.substr(0, colon);
          if (label.empty())
            throw MalformedModule("empty label", "line " + std::to_string(line_no));
          if (fb.label_defs.count(label))
            throw MalformedModule("duplicate label " + label, "line " + std::to_string(line_no));
          fb.label_defs[label] = (int)fb.fn.code.size();
          fb.fn.labels[(int)fb.fn.code.size()] = label;
          line = line.substr(colon + 1);
          size_t c = line.find_first_not_of(" \t");
          if (c == std::string::npos) { line.clear(); break; }
          line = line.substr(c);
          continue;
        }
        break;
      }
      if (line.empty()) continue;

      auto fields = split_fields(line);
      auto op = opcode_from(fields[0]);
      if (!op) throw MalformedModule("unknown opcode " + fields[0], "line " + std::to_string(line_no));
      Instruction ins;
      ins.op = *op;
      switch (*op) {
        case Opcode::PUSH:
        case Opcode::LOAD:
        case Opcode::STORE:
          if (fields.size() != 2)
            throw MalformedModule(std::string(opcode_name(*op)) + " needs one operand",
                                  "line " + std::to_string(line_no));
          ins.imm = to_int(fields[1], line_no);
          break;
        case Opcode::JMP:
        case Opcode::JZ:
          if (fields.size() != 2)
            throw MalformedModule("jump needs a label", "line " + std::to_string(line_no));
          fb.fixups.emplace_back(fb.fn.code.size(), fields[1]);
          break;
        case Opcode::CALL:
          if (fields.size() != 2)
            throw MalformedModule("CALL needs a function name", "line " + std::to_string(line_no));
          ins.symbol = fields[1];
          break;
        default:
          if (fields.size() != 1)
            throw MalformedModule(std::string(opcode_name(*op)) + " takes no operand",
                                  "line " + std::to_string(line_no));
          break;
      }
      fb.fn.code.push_back(std::move(ins));
    }
  }
  if (cur) {
    if (!cur->headerless)
      throw MalformedModule("missing 'end' after fn " + cur->fn.name);
    cur->finish(m);
  }
  if (m.functions.empty()) throw MalformedModule("empty module");
  return m;
}

std::string print_assembly(const BytecodeModule& m) {
  std::ostringstream out;
  for (const auto& fn : m.functions) {
    // synthesize labels for targets that lack one
    std::map<int, std::string> labels = fn.labels;
    auto need_label = [&](int pc) {
      if (!labels.count(pc)) labels[pc] = "L" + std::to_string(pc);
    };
    for (const auto& ins : fn.code)
      if (ins.op == Opcode::JMP || ins.op == Opcode::JZ) need_label(ins.target);
    for (const auto& [pc, _] : fn.table.invariants) need_label(pc);

    out << "fn " << fn.name << " params " << fn.param_count << " locals " << fn.local_count
        << " returns " << (fn.ret ? sort_name(*fn.ret) : "none") << "\n";
    for (const auto& [slot, name] : fn.table.varmap) {
      out << "#var " << slot << ' ' << name << ' '
          << sort_name(fn.table.sortmap.count(slot) ? fn.table.sortmap.at(slot) : Sort::Int)
          << "\n";
    }
    out << "#requires " << canonical_text(fn.table.requires_f) << "\n";
    out << "#ensures " << canonical_text(fn.table.ensures_f) << "\n";
    for (const auto& [pc, f] : fn.table.invariants)
      out << "#invariant " << labels.at(pc) << ' ' << canonical_text(f) << "\n";
    for (const auto& [pc, f] : fn.table.asserts)
      out << "#assert " << pc << ' ' << canonical_text(f) << "\n";
    for (size_t pc = 0; pc <= fn.code.size(); ++pc) {
      auto lit = labels.find((int)pc);
      if (lit != labels.end()) out << lit->second << ":\n";
      if (pc == fn.code.size()) break;
      const auto& ins = fn.code[pc];
      out << "  " << opcode_name(ins.op);
      switch (ins.op) {
        case Opcode::PUSH:
        case Opcode::LOAD:
        case Opcode::STORE: out << ' ' << ins.imm; break;
        case Opcode::JMP:
        case Opcode::JZ: out << ' ' << labels.at(ins.target); break;
        case Opcode::CALL: out << ' ' << ins.symbol; break;
        default: break;
      }
      out << "\n";
    }
    out << "end\n";
  }
  return out.str();
}

}  // namespace liss::vm
