// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0
//
// Binary module form. Byte-exact layout (docs/formats.md): all integers
// little-endian 64-bit two's complement, strings length-prefixed UTF-8,
// formulas as canonical text. The bundle manifest hashes these bytes, so
// the encoder must be deterministic and the decoder strict.

#include "liss/vm.hpp"

namespace liss::vm {

using namespace liss::logic;

namespace {

constexpr uint64_t kModuleMagic = 0x31434246'5353494CULL;  // "LISSFBC1" little-endian

struct Writer {
  std::vector<uint8_t> out;

  void u64(uint64_t v) {
    for (int k = 0; k < 8; ++k) out.push_back((uint8_t)(v >> (8 * k)));
  }
  void i64(long long v) { u64((uint64_t)v); }
  void u8(uint8_t v) { out.push_back(v); }
  void str(const std::string& s) {
    u64(s.size());
    out.insert(out.end(), s.begin(), s.end());
  }
  void formula(const FormulaPtr& f) { str(canonical_text(f)); }
};

struct ReaderBin {
  const std::vector<uint8_t>& in;
  size_t p = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw MalformedModule(what, "byte " + std::to_string(p));
  }

  uint64_t u64() {
    if (p + 8 > in.size()) fail("truncated integer");
    uint64_t v = 0;
    for (int k = 0; k < 8; ++k) v |= (uint64_t)in[p + (size_t)k] << (8 * k);
    p += 8;
    return v;
  }
  long long i64() { return (long long)u64(); }
  uint8_t u8() {
    if (p >= in.size()) fail("truncated byte");
    return in[p++];
  }
  std::string str() {
    uint64_t n = u64();
    if (n > in.size() - p) fail("truncated string");
    std::string s((const char*)in.data() + p, (size_t)n);
    p += (size_t)n;
    return s;
  }
  FormulaPtr formula(const std::map<std::string, Sort>& hints) {
    std::string text = str();
    try {
      return parse_formula(text, hints);
    } catch (const FormulaSyntaxError& e) {
      fail(std::string("bad formula: ") + e.what());
    }
  }
  Sort sort() {
    switch (u8()) {
      case 0: return Sort::Int;
      case 1: return Sort::Bool;
      case 2: return Sort::Set;
      case 3: return Sort::Vec;
      default: fail("bad sort tag");
    }
  }
};

uint8_t sort_tag(Sort s) {
  switch (s) {
    case Sort::Int: return 0;
    case Sort::Bool: return 1;
    case Sort::Set: return 2;
    case Sort::Vec: return 3;
  }
  return 0;
}

std::map<std::string, Sort> table_hints(const BytecodeFunction& fn) {
  std::map<std::string, Sort> hints;
  for (const auto& [slot, name] : fn.table.varmap) {
    Sort s = fn.table.sortmap.count(slot) ? fn.table.sortmap.at(slot) : Sort::Int;
    Sort logical = s == Sort::Bool ? Sort::Int : s;
    hints[name] = logical;
    hints["old_" + name] = logical;
  }
  if (fn.ret) hints["result"] = *fn.ret == Sort::Bool ? Sort::Int : *fn.ret;
  return hints;
}

}  // namespace

std::vector<uint8_t> encode_module(const BytecodeModule& m) {
  Writer w;
  w.u64(kModuleMagic);
  w.u64(m.functions.size());
  for (const auto& fn : m.functions) {
    w.str(fn.name);
    w.u64((uint64_t)fn.param_count);
    w.u64((uint64_t)fn.local_count);
    w.u8(fn.ret ? (uint8_t)(1 + sort_tag(*fn.ret)) : 0);
    w.u64(fn.code.size());
    for (const auto& ins : fn.code) {
      w.u8((uint8_t)ins.op);
      switch (ins.op) {
        case Opcode::PUSH:
        case Opcode::LOAD:
        case Opcode::STORE: w.i64(ins.imm); break;
        case Opcode::JMP:
        case Opcode::JZ: w.i64(ins.target); break;
        case Opcode::CALL: w.str(ins.symbol); break;
        default: break;
      }
    }
    w.u64(fn.table.varmap.size());
    for (const auto& [slot, name] : fn.table.varmap) {
      w.i64(slot);
      w.str(name);
      w.u8(sort_tag(fn.table.sortmap.count(slot) ? fn.table.sortmap.at(slot) : Sort::Int));
    }
    w.formula(fn.table.requires_f);
    w.formula(fn.table.ensures_f);
    w.u64(fn.table.invariants.size());
    for (const auto& [pc, f] : fn.table.invariants) {
      w.i64(pc);
      w.formula(f);
    }
    w.u64(fn.table.asserts.size());
    for (const auto& [pc, f] : fn.table.asserts) {
      w.i64(pc);
      w.formula(f);
    }
  }
  return w.out;
}

BytecodeModule decode_module(const std::vector<uint8_t>& bytes) {
  ReaderBin r{bytes, 0};
  if (r.u64() != kModuleMagic) r.fail("bad module magic");
  BytecodeModule m;
  uint64_t nfn = r.u64();
  if (nfn == 0 || nfn > 10'000) r.fail("unreasonable function count");
  for (uint64_t k = 0; k < nfn; ++k) {
    BytecodeFunction fn;
    fn.name = r.str();
    uint64_t params = r.u64(), locals = r.u64();
    if (params > 1'000'000 || locals > 1'000'000) r.fail("unreasonable slot counts");
    fn.param_count = (int)params;
    fn.local_count = (int)locals;
    uint8_t ret = r.u8();
    if (ret > 4) r.fail("bad return sort");
    if (ret) {
      switch (ret - 1) {
        case 0: fn.ret = Sort::Int; break;
        case 1: fn.ret = Sort::Bool; break;
        case 2: fn.ret = Sort::Set; break;
        case 3: fn.ret = Sort::Vec; break;
      }
    }
    uint64_t ninstr = r.u64();
    if (ninstr > 10'000'000) r.fail("unreasonable instruction count");
    for (uint64_t i = 0; i < ninstr; ++i) {
      uint8_t op = r.u8();
      if (op > (uint8_t)Opcode::HALT) r.fail("bad opcode");
      Instruction ins;
      ins.op = (Opcode)op;
      switch (ins.op) {
        case Opcode::PUSH:
        case Opcode::LOAD:
        case Opcode::STORE: ins.imm = r.i64(); break;
        case Opcode::JMP:
        case Opcode::JZ: {
          long long t = r.i64();
          if (t < 0 || (uint64_t)t >= ninstr) r.fail("jump target out of range");
          ins.target = (int)t;
          break;
        }
        case Opcode::CALL: ins.symbol = r.str(); break;
        default: break;
      }
      fn.code.push_back(std::move(ins));
    }
    uint64_t nvar = r.u64();
    if (nvar > 1'000'000) r.fail("unreasonable varmap size");
    for (uint64_t i = 0; i < nvar; ++i) {
      long long slot = r.i64();
      std::string name = r.str();
      Sort s = r.sort();
      if (slot < 0 || slot >= fn.slot_count()) r.fail("varmap slot out of range");
      fn.table.varmap[(int)slot] = name;
      fn.table.sortmap[(int)slot] = s;
    }
    auto hints = table_hints(fn);
    fn.table.requires_f = r.formula(hints);
    fn.table.ensures_f = r.formula(hints);
    uint64_t ninv = r.u64();
    if (ninv > 1'000'000) r.fail("unreasonable invariant count");
    for (uint64_t i = 0; i < ninv; ++i) {
      long long pc = r.i64();
      if (pc < 0 || (uint64_t)pc >= ninstr) r.fail("invariant pc out of range");
      fn.table.invariants[(int)pc] = r.formula(hints);
    }
    uint64_t nass = r.u64();
    if (nass > 1'000'000) r.fail("unreasonable assert count");
    for (uint64_t i = 0; i < nass; ++i) {
      long long pc = r.i64();
      if (pc < 0 || (uint64_t)pc >= ninstr) r.fail("assert pc out of range");
      fn.table.asserts[(int)pc] = r.formula(hints);
    }
    m.functions.push_back(std::move(fn));
  }
  if (r.p != bytes.size()) r.fail("trailing bytes after module");
  return m;
}

}  // namespace liss::vm
