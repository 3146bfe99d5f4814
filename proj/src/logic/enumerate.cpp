// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0

#include "liss/logic.hpp"

#include <algorithm>

namespace liss::logic {

namespace {

// Bounded evaluation: like eval_ground but instantiates quantifiers over
// [-bound, bound]. Only the oracle uses this; the checker's Eval rule stays
// on the ground fragment.
bool eval_bounded(const FormulaPtr& f, GroundState& s, long long bound) {
  switch (f->kind) {
    case FormulaKind::True: return true;
    case FormulaKind::False: return false;
    case FormulaKind::Atom: return eval_ground(f, s);
    case FormulaKind::Not: return !eval_bounded(f->a, s, bound);
    case FormulaKind::And: return eval_bounded(f->a, s, bound) && eval_bounded(f->b, s, bound);
    case FormulaKind::Or: return eval_bounded(f->a, s, bound) || eval_bounded(f->b, s, bound);
    case FormulaKind::Imp: return !eval_bounded(f->a, s, bound) || eval_bounded(f->b, s, bound);
    case FormulaKind::Forall: {
      auto saved = s.env.find(f->binder) != s.env.end()
                       ? std::optional<Value>(s.env[f->binder])
                       : std::nullopt;
      bool ok = true;
      for (long long v = -bound; v <= bound && ok; ++v) {
        s.env[f->binder] = Value::of_int(v);
        ok = eval_bounded(f->a, s, bound);
      }
      if (saved)
        s.env[f->binder] = *saved;
      else
        s.env.erase(f->binder);
      return ok;
    }
  }
  return false;
}

std::vector<Value> domain_for(Sort sort, const EnumLimits& lim) {
  std::vector<Value> out;
  long long b = lim.bound;
  switch (sort) {
    case Sort::Int:
      for (long long v = -b; v <= b; ++v) out.push_back(Value::of_int(v));
      break;
    case Sort::Bool:
      out.push_back(Value::of_bool(false));
      out.push_back(Value::of_bool(true));
      break;
    case Sort::Set: {
      std::vector<long long> universe;
      for (long long v = -b; v <= b; ++v) universe.push_back(v);
      int cap = std::min<int>(lim.set_cap, (int)universe.size());
      // by size, then lexicographic over the ascending universe
      for (int size = 0; size <= cap; ++size) {
        std::vector<int> pick(size);
        for (int k = 0; k < size; ++k) pick[k] = k;
        while (true) {
          std::vector<long long> elems;
          for (int k : pick) elems.push_back(universe[(size_t)k]);
          out.push_back(Value::of_set(std::move(elems)));
          if (size == 0) break;
          int j = size - 1;
          while (j >= 0 && pick[j] == (int)universe.size() - size + j) --j;
          if (j < 0) break;
          ++pick[j];
          for (int k = j + 1; k < size; ++k) pick[k] = pick[k - 1] + 1;
        }
      }
      break;
    }
    case Sort::Vec: {
      long long width = 2 * b + 1;
      for (int len = 0; len <= lim.vec_cap; ++len) {
        std::vector<long long> digits(len, 0);  // digit k in [0, width)
        while (true) {
          std::vector<long long> elems(len);
          for (int k = 0; k < len; ++k) elems[(size_t)k] = digits[(size_t)k] - b;
          out.push_back(Value::of_vec(std::move(elems)));
          if (len == 0) break;
          int j = len - 1;  // last element cycles fastest
          while (j >= 0 && digits[(size_t)j] == width - 1) { digits[(size_t)j] = 0; --j; }
          if (j < 0) break;
          ++digits[(size_t)j];
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace

EnumResult enumerate_validity(const FormulaPtr& f, const EnumLimits& lim) {
  std::map<std::string, Sort> fv = free_vars(f);
  std::vector<std::string> names;
  std::vector<std::vector<Value>> domains;
  unsigned long long total = 1;
  for (const auto& [name, sort] : fv) {
    names.push_back(name);
    domains.push_back(domain_for(sort, lim));
    total *= (unsigned long long)domains.back().size();
    if (total > lim.state_ceiling) return {EnumStatus::TooLarge, {}};
  }

  std::vector<size_t> odo(names.size(), 0);
  while (true) {
    GroundState s;
    for (size_t k = 0; k < names.size(); ++k) s.env[names[k]] = domains[k][odo[k]];
    bool holds;
    try {
      GroundState scratch = s;
      holds = eval_bounded(f, scratch, lim.bound);
    } catch (const EvalError&) {
      holds = false;  // an unguarded partial term falsifies the state
    }
    if (!holds) return {EnumStatus::CounterModel, std::move(s)};
    // advance odometer: last variable fastest
    size_t j = names.size();
    while (j > 0) {
      --j;
      if (++odo[j] < domains[j].size()) break;
      odo[j] = 0;
      if (j == 0) return {EnumStatus::Valid, {}};
    }
    if (names.empty()) return {EnumStatus::Valid, {}};
  }
}

EnumResult enumerate_validity(const FormulaPtr& f, long long bound, int set_cap, int vec_cap) {
  EnumLimits lim;
  lim.bound = bound;
  lim.set_cap = set_cap;
  lim.vec_cap = vec_cap;
  return enumerate_validity(f, lim);
}

}  // namespace liss::logic
