#pragma once

// Helpers shared by the proof tests and the acceptance report.

#include <vector>

#include "concat/axiomatics.hpp"
#include "gen.hpp"

namespace proofs {

using namespace concat;

inline Term flip_leaf(const Term& t, int& k) {
  switch (t.kind()) {
    case Term::Kind::Zero:
      return k-- == 0 ? Term::one() : t;
    case Term::Kind::One:
      return k-- == 0 ? Term::zero() : t;
    case Term::Kind::Concat: {
      Term l = flip_leaf(t.left(), k);
      return Term::concat(l, flip_leaf(t.right(), k));
    }
    default:
      return t;
  }
}

/// Swaps the k-th bit constant (in left-to-right order); leaves f unchanged if there are fewer.
inline Formula flip_leaf(const Formula& f, int& k) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Eq:
    case K::Rel: {
      Term l = flip_leaf(f.lhs(), k);
      Term r = flip_leaf(f.rhs(), k);
      return f.is(K::Eq) ? Formula::eq(l, r) : Formula::rel(l, r);
    }
    case K::Not:
      return Formula::negation(flip_leaf(f.body(), k));
    case K::And:
    case K::Or:
    case K::Implies:
    case K::Iff: {
      Formula l = flip_leaf(f.left(), k);
      Formula r = flip_leaf(f.right(), k);
      if (f.is(K::And)) return Formula::conj(l, r);
      if (f.is(K::Or)) return Formula::disj(l, r);
      if (f.is(K::Implies)) return Formula::implies(l, r);
      return Formula::iff(l, r);
    }
    case K::Exists:
      return Formula::exists(f.var(), flip_leaf(f.body(), k));
    case K::Forall:
      return Formula::forall(f.var(), flip_leaf(f.body(), k));
    case K::BoundedExists: {
      Term b = flip_leaf(f.bound(), k);
      return Formula::bounded_exists(f.var(), b, flip_leaf(f.body(), k));
    }
    case K::BoundedForall: {
      Term b = flip_leaf(f.bound(), k);
      return Formula::bounded_forall(f.var(), b, flip_leaf(f.body(), k));
    }
  }
  return f;
}

inline int count_leaves(const Formula& f) {
  int k = 1 << 30;
  flip_leaf(f, k);
  return (1 << 30) - k;
}

/// A single-step change of an accepted proof: either one bit of one conclusion is flipped, or
/// one premise is redirected to an earlier step proving a different formula.
inline Proof mutate(const Proof& p, gen::Rng& r) {
  for (;;) {
    Proof q = p;
    auto& s = q.steps[r.below(q.steps.size())];
    if (r.coin(50)) {
      int n = count_leaves(s.formula);
      if (n == 0) continue;
      int k = static_cast<int>(r.below(n));
      s.formula = flip_leaf(s.formula, k);
      return q;
    }
    if (s.premises.empty() || s.id < 2) continue;
    std::size_t i = r.below(s.premises.size());
    int other = 1 + static_cast<int>(r.below(s.id - 1));
    if (p.steps[other - 1].formula == p.steps[s.premises[i] - 1].formula) continue;
    s.premises[i] = other;
    return q;
  }
}

/// Every step conclusion is true in the standard structure.
inline bool sound(const Proof& p, std::size_t budget = 8) {
  for (const auto& s : p.steps)
    if (!eval(s.formula, p.theory, {}, budget).is_true()) return false;
  return true;
}

}  // namespace proofs
