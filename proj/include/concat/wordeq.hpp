#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "concat/logic.hpp"

namespace concat {

/// A constant bit or a variable occurrence.
struct Symbol {
  bool is_var = false;
  char bit = '0';
  std::string name;

  static Symbol constant(char b) { return {false, b, {}}; }
  static Symbol variable(std::string n) { return {true, 0, std::move(n)}; }
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Flattened equation: no nesting, no e, biterals spelled out bit by bit.
struct WordEquation {
  std::vector<Symbol> lhs, rhs;

  std::set<std::string> vars() const;
  friend bool operator==(const WordEquation&, const WordEquation&) = default;
};

std::vector<Symbol> flatten(const Term& t);
/// Throws std::invalid_argument unless `eq` is an Eq atom.
WordEquation flatten(const Formula& eq);

/// "x 0 = 1 0"; an empty side prints as "e".
std::string to_string(const WordEquation& e);

/// Value of a side under `a`; variables missing from `a` read as ε.
BitString value(const std::vector<Symbol>& side, const Assignment& a);
bool satisfies(const WordEquation& e, const Assignment& a);

struct EqVerdict {
  enum class Kind { Sat, Unsat, UnsatWithinBound };
  Kind kind = Kind::UnsatWithinBound;
  Assignment solution;  ///< every variable of the equation, when Sat
  std::size_t bound = 0;
  std::size_t states = 0;  ///< distinct states visited

  std::string to_string() const;
};

struct SolveLimits {
  std::size_t max_total_len = 8;  ///< number of letter-introducing steps along one branch
  std::size_t max_state_len = 64;  ///< symbols per state (both sides together)
  std::size_t max_states = 200000;
};

/// Breadth-first Nielsen search. Unsat is reported only when the reachable state graph was
/// explored completely without hitting any limit.
EqVerdict solve(const WordEquation& e, const SolveLimits& limits);
EqVerdict solve(const WordEquation& e, std::size_t max_total_len);

}  // namespace concat
