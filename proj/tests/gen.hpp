#pragma once

#include <random>
#include <string>
#include <vector>

#include "concat/logic.hpp"

namespace gen {

using concat::BitString;
using concat::Formula;
using concat::Term;

class Rng {
 public:
  explicit Rng(unsigned seed) : eng_(seed) {}
  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(eng_); }
  bool coin(int percent = 50) { return below(100) < percent; }
  BitString bits(int max_len) {
    int len = below(max_len + 1);
    std::string s;
    for (int i = 0; i < len; ++i) s += coin() ? '1' : '0';
    return BitString(s);
  }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[below(static_cast<int>(v.size()))]; }

 private:
  std::mt19937 eng_;
};

/// Term over `vars` (may be empty) with biterals of length <= max_bits.
inline Term term(Rng& r, const std::vector<std::string>& vars, int depth, int max_bits = 3) {
  int choice = r.below(depth > 0 ? 6 : 5);
  switch (choice) {
    case 0: return Term::empty();
    case 1: return Term::zero();
    case 2: return Term::one();
    case 3:
      if (!vars.empty()) return Term::var(r.pick(vars));
      return concat::biteral(r.bits(max_bits));
    case 4: return concat::biteral(r.bits(max_bits));
    default: return Term::concat(term(r, vars, depth - 1, max_bits), term(r, vars, depth - 1, max_bits));
  }
}

/// Arbitrary formula of the full language, for syntax round trips.
inline Formula any_formula(Rng& r, std::vector<std::string> vars, int depth) {
  if (depth == 0 || r.coin(25)) {
    Term a = term(r, vars, 2), b = term(r, vars, 2);
    return r.coin() ? Formula::eq(a, b) : Formula::rel(a, b);
  }
  switch (r.below(9)) {
    case 0: return Formula::negation(any_formula(r, vars, depth - 1));
    case 1: return Formula::conj(any_formula(r, vars, depth - 1), any_formula(r, vars, depth - 1));
    case 2: return Formula::disj(any_formula(r, vars, depth - 1), any_formula(r, vars, depth - 1));
    case 3: return Formula::implies(any_formula(r, vars, depth - 1), any_formula(r, vars, depth - 1));
    case 4: return Formula::iff(any_formula(r, vars, depth - 1), any_formula(r, vars, depth - 1));
    default: {
      std::string x = "x" + std::to_string(vars.size());
      auto outer = vars;
      vars.push_back(x);
      Formula body = any_formula(r, vars, depth - 1);
      switch (r.below(4)) {
        case 0: return Formula::exists(x, body);
        case 1: return Formula::forall(x, body);
        case 2: return Formula::bounded_exists(x, term(r, outer, 1), body);
        default: return Formula::bounded_forall(x, term(r, outer, 1), body);
      }
    }
  }
}

/// Options for Σ-sentence generation.
struct SigmaShape {
  int depth = 3;
  int max_bits = 3;
  bool unbounded_exists = true;
  bool bounded_exists = true;
  bool bounded_forall = true;
  bool negated_atoms = true;
};

inline Formula sigma_rec(Rng& r, std::vector<std::string>& vars, int depth, const SigmaShape& s, int& counter) {
  if (depth == 0 || r.coin(20)) {
    Term a = term(r, vars, 2, s.max_bits), b = term(r, vars, 2, s.max_bits);
    Formula atom = r.coin() ? Formula::eq(a, b) : Formula::rel(a, b);
    if (s.negated_atoms && r.coin(30)) return Formula::negation(atom);
    return atom;
  }
  std::vector<int> options = {0, 1};
  if (s.unbounded_exists) options.push_back(2);
  if (s.bounded_exists) options.push_back(3);
  if (s.bounded_forall) options.push_back(4);
  int choice = r.pick(options);
  if (choice == 0 || choice == 1) {
    Formula a = sigma_rec(r, vars, depth - 1, s, counter);
    Formula b = sigma_rec(r, vars, depth - 1, s, counter);
    return choice == 0 ? Formula::conj(a, b) : Formula::disj(a, b);
  }
  std::string x = "x" + std::to_string(++counter);
  Term bound = term(r, vars, 1, s.max_bits);
  vars.push_back(x);
  Formula body = sigma_rec(r, vars, depth - 1, s, counter);
  vars.pop_back();
  if (choice == 2) return Formula::exists(x, body);
  if (choice == 3) return Formula::bounded_exists(x, bound, body);
  return Formula::bounded_forall(x, bound, body);
}

/// Random Σ-sentence.
inline Formula sigma_sentence(Rng& r, const SigmaShape& s) {
  std::vector<std::string> vars;
  int counter = 0;
  return sigma_rec(r, vars, s.depth, s, counter);
}

}  // namespace gen
