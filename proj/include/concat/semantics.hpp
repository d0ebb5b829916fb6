#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "concat/logic.hpp"

namespace concat {

/// 𝔅 reads ⊑ as substring, 𝔇 as prefix.
enum class Structure { B, D };

std::string to_string(Structure s);
/// "B" or "D"; throws std::invalid_argument otherwise.
Structure parse_structure(const std::string& text);

bool holds(Structure s, const BitString& u, const BitString& v);
/// substrings(v) for B, prefixes(v) for D.
std::vector<BitString> below(Structure s, const BitString& v);

class UnboundVariable : public std::runtime_error {
 public:
  explicit UnboundVariable(std::string name)
      : std::runtime_error("unbound variable '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// Strong Kleene truth value; Unknown carries the budget it was computed under.
struct Verdict {
  enum class Value { False, True, Unknown };
  Value value = Value::Unknown;
  std::size_t budget = 0;

  static Verdict of(bool b) { return {b ? Value::True : Value::False, 0}; }
  static Verdict unknown(std::size_t budget) { return {Value::Unknown, budget}; }
  bool is_true() const { return value == Value::True; }
  bool is_false() const { return value == Value::False; }
  bool is_unknown() const { return value == Value::Unknown; }
  /// "true", "false" or "unknown(budget=L)".
  std::string to_string() const;

  friend bool operator==(const Verdict& a, const Verdict& b) {
    return a.value == b.value && (a.value != Value::Unknown || a.budget == b.budget);
  }
};

BitString eval_term(const Term& t, const Assignment& a);

struct EvalOptions {
  std::size_t budget = 8;     ///< max bit-length of values tried for unbounded quantifiers
  std::size_t max_steps = 0;  ///< work limit; 0 means none. Exceeding it yields Unknown.
  /// Decide an unbounded quantifier exactly when every value it was tried on came from a complete
  /// candidate list (e.g. x y = "01" pins x to a prefix of 01) and none was cut by the budget.
  bool complete_domains = false;
};

struct EvalResult {
  Verdict verdict;
  /// Values of the leading existential block when the verdict is True.
  Assignment witness;
  bool step_limit_hit = false;
};

/// Three-valued evaluation. An unbounded ∃x (resp. ∀x) whose body has a top-level conjunct
/// x ⊑ t (resp. antecedent x ⊑ t) with t free of x ranges over the values below t exactly, as
/// its bounded counterpart would; any other unbounded quantifier ranges over strings of length
/// <= budget and can only come out True (∃) / False (∀) or Unknown.
EvalResult evaluate(const Formula& f, Structure s, const Assignment& a, const EvalOptions& opts);
Verdict eval(const Formula& f, Structure s, const Assignment& a, std::size_t budget);

/// Exact truth of a Σ(0,m,k) sentence. Throws std::invalid_argument for other input.
bool decide_sigma_0mk(const Formula& f, Structure s);

/// A Σ-formula equivalent to ¬f, pushing the negation through (∧, ∨, bounded quantifiers) and
/// cancelling it on negated atoms. Throws std::invalid_argument if f has an unbounded ∃.
Formula negate_sigma(const Formula& f);

}  // namespace concat
