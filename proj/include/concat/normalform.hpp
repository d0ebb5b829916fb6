#pragma once

#include <optional>
#include <string>
#include <vector>

#include "concat/logic.hpp"
#include "concat/semantics.hpp"

namespace concat {

struct PrefixEntry {
  enum class Kind { Exists, BoundedExists, BoundedForall };
  Kind kind;
  std::string var;
  std::optional<Term> bound;

  friend bool operator==(const PrefixEntry&, const PrefixEntry&) = default;
};

/// Quantifier prefix over a single equation. Bounded entries are read with the structure's ⊑.
struct PrenexNormalForm {
  std::vector<PrefixEntry> prefix;
  Term lhs = Term::empty();
  Term rhs = Term::empty();

  Formula to_formula() const;
  /// Σ(n,m,k) counts of the prefix.
  SigmaClass shape() const;
  /// Matrix size in symbols.
  std::size_t size() const;
};

/// Building blocks. Fresh variables are drawn from `names`, which must already hold
/// every variable of the input terms.
Formula merge_conj(const Formula& e1, const Formula& e2);
/// Balanced pairwise merge of a nonempty list of equations.
Formula merge_conj_all(const std::vector<Formula>& eqs);

/// ∃x1..x6 y1..y4 [one equation] equivalent in 𝔇 to s1 ⪯ t1 ∨ s2 ⪯ t2.
PrenexNormalForm or_prefix_to_eq(const Term& s1, const Term& t1, const Term& s2, const Term& t2, FreshNames& names);
/// Equation-only construction for s1 = t1 ∨ s2 = t2; valid in both structures.
PrenexNormalForm or_eq_to_eq(const Formula& e1, const Formula& e2, FreshNames& names);
/// ∃-prefixed equation equivalent to s ≠ t in both structures.
PrenexNormalForm neq_to_eq(const Formula& e, FreshNames& names);
/// ∃v [s v = t].
PrenexNormalForm prefix_to_eq(const Term& s, const Term& t, FreshNames& names);
/// ∃-prefixed equation equivalent in 𝔇 to s ⋠ t.
PrenexNormalForm nonprefix_to_eq(const Term& s, const Term& t, FreshNames& names);
/// ∃v1 ∃v2 [t = v1 s v2].
PrenexNormalForm substr_to_eq(const Term& s, const Term& t, FreshNames& names);
/// (∀v ⊑ t)(∃ ...)[s' = t'] equivalent in 𝔅 to s ⋢ t.
PrenexNormalForm nonsubstr_to_formula(const Term& s, const Term& t, FreshNames& names);

/// Convenience overloads allocating names that avoid the inputs.
PrenexNormalForm or_prefix_to_eq(const Term& s1, const Term& t1, const Term& s2, const Term& t2);
PrenexNormalForm or_eq_to_eq(const Formula& e1, const Formula& e2);
PrenexNormalForm neq_to_eq(const Formula& e);
PrenexNormalForm prefix_to_eq(const Term& s, const Term& t);
PrenexNormalForm nonprefix_to_eq(const Term& s, const Term& t);
PrenexNormalForm substr_to_eq(const Term& s, const Term& t);
PrenexNormalForm nonsubstr_to_formula(const Term& s, const Term& t);

/// The ψ(u,w) gadget: ∃y1 y2 y3 y4 [y1y2 = 0 ∧ y3y4 = 1 ∧ u y1 w y2 = w y2 u y1 ∧ u y3 w y4 = w y4 u y3].
Formula zero_gadget(const Term& u, const Term& w, FreshNames& names);

/// Quantifier commutations valid in 𝔅. Each throws std::invalid_argument on the wrong shape.
/// (∀x⊑t)(∃y)α  ⇒  (∃z)(∀x⊑t)(∃y⊑z)α
Formula commute_forall_exists(const Formula& f, FreshNames& names);
/// (∃x⊑t)(∃y)α  ⇒  (∃y)(∃x⊑t)α
Formula commute_bounded_exists(const Formula& f);
/// (∃x)(∃y)α  ⇒  (∃z)(∃x⊑z)(∃y⊑z)α
Formula merge_exists(const Formula& f, FreshNames& names);

/// Prenex form with a single-equation matrix, equivalent in 𝔇. Bounded existentials become
/// unbounded ones plus a prefix equation, so without bounded universals the prefix is all ∃.
/// Throws std::invalid_argument for non-Σ input.
PrenexNormalForm normalize_D(const Formula& f);
/// Equivalent in 𝔅; at most one unbounded ∃, and only in front.
PrenexNormalForm normalize_B(const Formula& f);
PrenexNormalForm normalize(const Formula& f, Structure s);

}  // namespace concat
