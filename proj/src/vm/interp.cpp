// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0

#include "liss/vm.hpp"

#include <algorithm>
#include <cassert>

namespace liss::vm {

using namespace liss::logic;

namespace {

long long wrap_add(long long a, long long b) {
  return (long long)((unsigned long long)a + (unsigned long long)b);
}
long long wrap_sub(long long a, long long b) {
  return (long long)((unsigned long long)a - (unsigned long long)b);
}
long long wrap_mul(long long a, long long b) {
  return (long long)((unsigned long long)a * (unsigned long long)b);
}

Value zero_of(Sort s) {
  switch (s) {
    case Sort::Int: return Value::of_int(0);
    case Sort::Bool: return Value::of_bool(false);
    case Sort::Set: return Value::of_set({});
    case Sort::Vec: return Value::of_vec({});
  }
  return Value::of_int(0);
}

struct Frame {
  const BytecodeFunction* fn;
  size_t pc = 0;
  std::vector<Value> stack;
  std::vector<Value> locals;
};

struct Trap {
  TrapKind kind;
};

class Machine {
 public:
  Machine(const BytecodeModule& m, const std::vector<long long>& inputs)
      : module_(m), inputs_(inputs) {}

  RunResult exec(const BytecodeFunction& entry, long long fuel) {
    RunResult out;
    frames_.push_back(make_frame(entry, {}));
    try {
      while (true) {
        if (fuel-- <= 0) {
          out.status = RunResult::Status::OutOfFuel;
          return out;
        }
        Frame& fr = frames_.back();
        assert(fr.pc < fr.fn->code.size());
        const Instruction& ins = fr.fn->code[fr.pc];
        if (!step(fr, ins, out)) break;
      }
      out.status = RunResult::Status::Ok;
      out.outputs = outputs_;
      return out;
    } catch (const Trap& t) {
      out.status = RunResult::Status::Trap;
      out.trap = t.kind;
      out.trap_function = frames_.back().fn->name;
      out.trap_pc = (int)frames_.back().pc;
      out.outputs = outputs_;
      return out;
    }
  }

 private:
  const BytecodeModule& module_;
  const std::vector<long long>& inputs_;
  size_t input_pos_ = 0;
  std::vector<Frame> frames_;
  std::vector<long long> outputs_;

  Frame make_frame(const BytecodeFunction& fn, std::vector<Value> args) {
    Frame fr;
    fr.fn = &fn;
    fr.locals.resize((size_t)fn.slot_count());
    for (int k = 0; k < fn.slot_count(); ++k) {
      auto it = fn.table.sortmap.find(k);
      fr.locals[(size_t)k] = zero_of(it == fn.table.sortmap.end() ? Sort::Int : it->second);
    }
    for (size_t k = 0; k < args.size(); ++k) fr.locals[k] = std::move(args[k]);
    return fr;
  }

  Value pop(Frame& fr) {
    Value v = std::move(fr.stack.back());
    fr.stack.pop_back();
    return v;
  }

  // returns false when execution finished (HALT or top-level RET)
  bool step(Frame& fr, const Instruction& ins, RunResult& out) {
    switch (ins.op) {
      case Opcode::PUSH: fr.stack.push_back(Value::of_int(ins.imm)); break;
      case Opcode::LOAD: fr.stack.push_back(fr.locals[(size_t)ins.imm]); break;
      case Opcode::STORE: fr.locals[(size_t)ins.imm] = pop(fr); break;
      case Opcode::ADD: case Opcode::SUB: case Opcode::MUL: {
        Value b = pop(fr), a = pop(fr);
        long long r = ins.op == Opcode::ADD   ? wrap_add(a.i, b.i)
                      : ins.op == Opcode::SUB ? wrap_sub(a.i, b.i)
                                              : wrap_mul(a.i, b.i);
        fr.stack.push_back(Value::of_int(r));
        break;
      }
      case Opcode::DIV: case Opcode::MOD: {
        Value b = pop(fr), a = pop(fr);
        if (b.i == 0) throw Trap{TrapKind::DivByZero};
        fr.stack.push_back(Value::of_int(ins.op == Opcode::DIV ? euclid_div(a.i, b.i)
                                                               : euclid_mod(a.i, b.i)));
        break;
      }
      case Opcode::EQ: {
        Value b = pop(fr), a = pop(fr);
        fr.stack.push_back(Value::of_bool(a == b));
        break;
      }
      case Opcode::LT: case Opcode::LE: {
        Value b = pop(fr), a = pop(fr);
        fr.stack.push_back(Value::of_bool(ins.op == Opcode::LT ? a.i < b.i : a.i <= b.i));
        break;
      }
      case Opcode::NOT: {
        Value a = pop(fr);
        fr.stack.push_back(Value::of_bool(!a.as_bool()));
        break;
      }
      case Opcode::AND: case Opcode::OR: {
        Value b = pop(fr), a = pop(fr);
        bool r = ins.op == Opcode::AND ? (a.as_bool() && b.as_bool())
                                       : (a.as_bool() || b.as_bool());
        fr.stack.push_back(Value::of_bool(r));
        break;
      }
      case Opcode::JMP:
        fr.pc = (size_t)ins.target;
        return true;
      case Opcode::JZ: {
        Value c = pop(fr);
        fr.pc = c.as_bool() ? fr.pc + 1 : (size_t)ins.target;
        return true;
      }
      case Opcode::NEWVEC: {
        Value n = pop(fr);
        if (n.i < 0 || n.i > 1'000'000) throw Trap{TrapKind::OutOfBounds};
        fr.stack.push_back(Value::of_vec(std::vector<long long>((size_t)n.i, 0)));
        break;
      }
      case Opcode::GETIDX: {
        Value i = pop(fr), v = pop(fr);
        if (i.i < 0 || (size_t)i.i >= v.elems.size()) throw Trap{TrapKind::OutOfBounds};
        fr.stack.push_back(Value::of_int(v.elems[(size_t)i.i]));
        break;
      }
      case Opcode::SETIDX: {
        Value e = pop(fr), i = pop(fr), v = pop(fr);
        if (i.i < 0 || (size_t)i.i >= v.elems.size()) throw Trap{TrapKind::OutOfBounds};
        v.elems[(size_t)i.i] = e.i;
        fr.stack.push_back(std::move(v));
        break;
      }
      case Opcode::VLEN: {
        Value v = pop(fr);
        fr.stack.push_back(Value::of_int((long long)v.elems.size()));
        break;
      }
      case Opcode::NEWSET: fr.stack.push_back(Value::of_set({})); break;
      case Opcode::SINS: {
        Value e = pop(fr), s = pop(fr);
        auto elems = s.elems;
        elems.push_back(e.i);
        fr.stack.push_back(Value::of_set(std::move(elems)));
        break;
      }
      case Opcode::SUNION: case Opcode::SINTER: case Opcode::SDIFF: {
        Value b = pop(fr), a = pop(fr);
        std::vector<long long> r;
        if (ins.op == Opcode::SUNION) {
          r = a.elems;
          r.insert(r.end(), b.elems.begin(), b.elems.end());
        } else if (ins.op == Opcode::SINTER) {
          std::set_intersection(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
                                std::back_inserter(r));
        } else {
          std::set_difference(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
                              std::back_inserter(r));
        }
        fr.stack.push_back(Value::of_set(std::move(r)));
        break;
      }
      case Opcode::SMEM: {
        Value s = pop(fr), x = pop(fr);
        fr.stack.push_back(
            Value::of_bool(std::binary_search(s.elems.begin(), s.elems.end(), x.i)));
        break;
      }
      case Opcode::SCARD: {
        Value s = pop(fr);
        fr.stack.push_back(Value::of_int((long long)s.elems.size()));
        break;
      }
      case Opcode::CALL: {
        const BytecodeFunction* callee = module_.find(ins.symbol);
        assert(callee);  // loader resolved it
        if (frames_.size() > 10'000) throw Trap{TrapKind::OutOfBounds};  // runaway recursion
        std::vector<Value> args((size_t)callee->param_count);
        for (int k = callee->param_count - 1; k >= 0; --k) args[(size_t)k] = pop(fr);
        fr.pc += 1;  // resume after the call
        frames_.push_back(make_frame(*callee, std::move(args)));
        return true;
      }
      case Opcode::RET: {
        std::optional<Value> ret;
        if (fr.fn->ret) ret = pop(fr);
        if (frames_.size() == 1) {
          out.final_locals = fr.locals;
          out.returned = ret;
          return false;
        }
        frames_.pop_back();
        if (ret) frames_.back().stack.push_back(std::move(*ret));
        return true;
      }
      case Opcode::READ: {
        if (input_pos_ >= inputs_.size()) throw Trap{TrapKind::InputExhausted};
        fr.stack.push_back(Value::of_int(inputs_[input_pos_++]));
        break;
      }
      case Opcode::PRINT: {
        Value v = pop(fr);
        outputs_.push_back(v.i);
        break;
      }
      case Opcode::HALT: {
        out.final_locals = frames_.front().locals;
        return false;
      }
    }
    fr.pc += 1;
    return true;
  }
};

}  // namespace

RunResult run(const BytecodeModule& m, const std::string& entry,
              const std::vector<long long>& inputs, long long fuel) {
  const BytecodeFunction* fn = m.find(entry);
  if (!fn) throw MalformedModule("entry function not found: " + entry);
  if (fn->param_count != 0) throw MalformedModule("entry function must be parameterless", entry);
  Machine machine(m, inputs);
  return machine.exec(*fn, fuel);
}

}  // namespace liss::vm
