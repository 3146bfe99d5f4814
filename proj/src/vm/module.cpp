// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0

#include "liss/vm.hpp"

namespace liss::vm {

const char* opcode_name(Opcode op) {
  switch (op) {
    case Opcode::PUSH: return "PUSH";
    case Opcode::LOAD: return "LOAD";
    case Opcode::STORE: return "STORE";
    case Opcode::ADD: return "ADD";
    case Opcode::SUB: return "SUB";
    case Opcode::MUL: return "MUL";
    case Opcode::DIV: return "DIV";
    case Opcode::MOD: return "MOD";
    case Opcode::EQ: return "EQ";
    case Opcode::LT: return "LT";
    case Opcode::LE: return "LE";
    case Opcode::NOT: return "NOT";
    case Opcode::AND: return "AND";
    case Opcode::OR: return "OR";
    case Opcode::JMP: return "JMP";
    case Opcode::JZ: return "JZ";
    case Opcode::NEWVEC: return "NEWVEC";
    case Opcode::GETIDX: return "GETIDX";
    case Opcode::SETIDX: return "SETIDX";
    case Opcode::VLEN: return "VLEN";
    case Opcode::NEWSET: return "NEWSET";
    case Opcode::SINS: return "SINS";
    case Opcode::SUNION: return "SUNION";
    case Opcode::SINTER: return "SINTER";
    case Opcode::SDIFF: return "SDIFF";
    case Opcode::SMEM: return "SMEM";
    case Opcode::SCARD: return "SCARD";
    case Opcode::CALL: return "CALL";
    case Opcode::RET: return "RET";
    case Opcode::READ: return "READ";
    case Opcode::PRINT: return "PRINT";
    case Opcode::HALT: return "HALT";
  }
  return "?";
}

const char* trap_name(TrapKind k) {
  switch (k) {
    case TrapKind::DivByZero: return "DivByZero";
    case TrapKind::OutOfBounds: return "OutOfBounds";
    case TrapKind::InputExhausted: return "InputExhausted";
  }
  return "?";
}

const BytecodeFunction* BytecodeModule::find(const std::string& name) const {
  for (const auto& f : functions)
    if (f.name == name) return &f;
  return nullptr;
}

BytecodeModule load_module_text(const std::string& text) {
  BytecodeModule m = parse_assembly(text);
  verify_module(m);
  return m;
}

BytecodeModule load_module_binary(const std::vector<uint8_t>& bytes) {
  BytecodeModule m = decode_module(bytes);
  verify_module(m);
  return m;
}

}  // namespace liss::vm
