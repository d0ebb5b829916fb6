#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "concat/strings.hpp"

namespace concat {

/// Values of variables.
using Assignment = std::map<std::string, BitString>;

/// Term of the language {e, 0, 1, ∘}. Immutable; copies share structure.
class Term {
 public:
  enum class Kind { Empty, Zero, One, Var, Concat };

  static Term empty();
  static Term zero();
  static Term one();
  static Term var(std::string name);
  static Term concat(Term left, Term right);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  /// Variable name; only valid for Kind::Var.
  const std::string& name() const { return node_->name; }
  const Term& left() const { return *node_->left; }
  const Term& right() const { return *node_->right; }

  bool is_closed() const { return node_->closed; }
  /// Number of 0, 1 and variable leaves, saturating at SIZE_MAX. Shared subterms count once per
  /// occurrence, so this is the length of the flattened word.
  std::size_t symbols() const { return node_->symbols; }
  bool contains_var(const std::string& name) const;
  void collect_vars(std::set<std::string>& out) const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const Term> left, right;
    bool closed = true;
    std::size_t hash = 0;
    std::size_t symbols = 0;
    std::shared_ptr<const std::vector<std::string>> vars;  // sorted; null when closed
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  friend class Formula;
  std::shared_ptr<const Node> node_;
};

/// Left fold with ∘; empty input yields e.
Term concat_all(const std::vector<Term>& parts);

/// The canonical left-associated term denoting b: biteral(ε)=e, biteral(bc)=biteral(b)∘c.
Term biteral(const BitString& b);
/// The value denoted if `t` is a biteral, otherwise nullopt.
std::optional<BitString> as_biteral(const Term& t);

class Formula {
 public:
  enum class Kind {
    Eq,
    Rel,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Exists,
    Forall,
    BoundedExists,
    BoundedForall
  };

  static Formula eq(Term lhs, Term rhs);
  static Formula rel(Term lhs, Term rhs);
  static Formula negation(Formula body);
  static Formula conj(Formula left, Formula right);
  static Formula disj(Formula left, Formula right);
  static Formula implies(Formula left, Formula right);
  static Formula iff(Formula left, Formula right);
  static Formula exists(std::string var, Formula body);
  static Formula forall(std::string var, Formula body);
  /// Throws std::invalid_argument if `var` occurs in `bound`.
  static Formula bounded_exists(std::string var, Term bound, Formula body);
  static Formula bounded_forall(std::string var, Term bound, Formula body);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  bool is_atom() const { return is(Kind::Eq) || is(Kind::Rel); }
  bool is_literal() const { return is_atom() || (is(Kind::Not) && body().is_atom()); }
  bool is_quantifier() const;
  bool is_bounded() const { return is(Kind::BoundedExists) || is(Kind::BoundedForall); }

  /// Atom sides.
  const Term& lhs() const { return *node_->lhs; }
  const Term& rhs() const { return *node_->rhs; }
  /// Binary connective operands.
  const Formula& left() const { return *node_->left; }
  const Formula& right() const { return *node_->right; }
  /// Body of Not and of every quantifier.
  const Formula& body() const { return *node_->left; }
  const std::string& var() const { return node_->var; }
  /// Bound term of a bounded quantifier.
  const Term& bound() const { return *node_->lhs; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    std::string var;
    std::shared_ptr<const Term> lhs, rhs;
    std::shared_ptr<const Formula> left, right;
    std::size_t hash = 0;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Node n);
  std::shared_ptr<const Node> node_;
};

/// Convenience: left-nested conjunction / disjunction of a nonempty list.
Formula conj_all(const std::vector<Formula>& parts);
Formula disj_all(const std::vector<Formula>& parts);

std::set<std::string> free_vars(const Formula& f);
/// Every variable name occurring anywhere, bound or free.
std::set<std::string> all_vars(const Formula& f);
bool is_sentence(const Formula& f);

/// Σ(n,m,k) classification; `sigma == false` means NotSigma.
struct SigmaClass {
  bool sigma = false;
  int n = 0;  ///< unbounded ∃
  int m = 0;  ///< bounded ∃
  int k = 0;  ///< bounded ∀

  static SigmaClass not_sigma() { return {}; }
  friend bool operator==(const SigmaClass&, const SigmaClass&) = default;
  std::string to_string() const;
};

SigmaClass classify(const Formula& f);

/// Rewrites bounded quantifiers into ∃x[x⊑t ∧ α] / ∀x[x⊑t → α].
Formula expand_bounded(const Formula& f);

/// First name v1, v2, ... not in `avoid`.
std::string fresh_var(const std::set<std::string>& avoid);

/// Deterministic allocator handing out v1, v2, ... while skipping reserved names.
class FreshNames {
 public:
  explicit FreshNames(std::set<std::string> reserved = {}) : reserved_(std::move(reserved)) {}
  std::string next();
  void reserve(const std::set<std::string>& names) { reserved_.insert(names.begin(), names.end()); }
  const std::set<std::string>& used() const { return reserved_; }

 private:
  std::set<std::string> reserved_;
  std::size_t counter_ = 0;
};

Term substitute(const Term& t, const std::string& x, const Term& s);
/// Capture-avoiding substitution of s for the free occurrences of x.
Formula substitute(const Formula& f, const std::string& x, const Term& s);

/// Renames binders so that every binder name is distinct from every other binder and from
/// every free variable. Names that are already unique are kept.
Formula rename_apart(const Formula& f, FreshNames& names);

}  // namespace concat
