#pragma once

#include <string>

#include "concat/logic.hpp"
#include "concat/semantics.hpp"
#include "concat/wordeq.hpp"

namespace concat {

/// Truth in 𝔇 of a Σ(n,m,0) sentence via word equations. Bounded ∃ are read as unbounded ∃
/// plus a prefix equation; the matrix is split into cases whose literals are all equations, each
/// case is merged into one equation and solved with max_total_len = budget · #variables.
/// Any Sat case gives True, all Unsat gives False, anything else Unknown(budget).
/// Throws std::invalid_argument for non-sentences and for k > 0.
Verdict decide_D_nm0(const Formula& f, std::size_t budget);

struct Decision {
  Verdict verdict;
  /// "sigma-0mk" (exact finite evaluation), "word-equations" or "budgeted-eval".
  std::string route;
  std::string justification;
};

/// Picks the decision route by fragment: Σ(0,m,k) in either structure is decided exactly,
/// Σ(n,m,0) in 𝔇 goes through word equations, anything else is evaluated under the budget.
Decision decide(const Formula& f, Structure s, std::size_t budget);

}  // namespace concat
